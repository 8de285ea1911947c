#include "gbv/wick.hpp"

#include "gbv/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace gbv::wick {

AlphaSeries& operator+=(AlphaSeries& a, const AlphaSeries& b) {
  for (const auto& [k, c] : b) {
    auto& slot = a[k];
    slot += c;
    if (slot == 0) a.erase(k);
  }
  return a;
}

bool is_zero(const AlphaSeries& a) {
  return std::all_of(a.begin(), a.end(), [](const auto& kv) { return kv.second == 0; });
}

std::string to_text(const AlphaSeries& a) {
  if (is_zero(a)) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : a) {
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << gbv::to_string(c);
    if (k != 0) os << "*alpha^" << -k;
  }
  return os.str();
}

QuadraticKernel QuadraticKernel::from_quadratic_form(const Matrix& q) {
  if (!is_symmetric(q)) throw ValidationError("quadratic form must be symmetric");
  return QuadraticKernel{inverse(q)};
}

namespace {

void check_legs(int legs, int cap) {
  if (legs > cap)
    throw CapExceeded(std::to_string(legs) + " legs exceed the leg cap " + std::to_string(cap));
}

// Monomial of a vertex as a list of coordinate indices (with repetition).
std::vector<int> legs_of(const Monomial& m, const std::vector<Generator>& coords) {
  std::vector<int> out;
  for (const auto& [g, e] : m.factors()) {
    auto it = std::find(coords.begin(), coords.end(), g);
    if (it == coords.end()) throw ValidationError("vertex uses '" + g.name() + "', which is not a coordinate");
    for (unsigned k = 0; k < e; ++k) out.push_back(static_cast<int>(it - coords.begin()));
  }
  return out;
}

// Visits every choice of one monomial per vertex with the product coefficient.
void for_each_monomial_choice(const std::vector<GradedPoly>& vertices,
                              const std::function<void(const std::vector<const Monomial*>&, const Rational&)>& fn) {
  std::vector<const Monomial*> pick(vertices.size());
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t v, const Rational& c) {
    if (v == vertices.size()) {
      fn(pick, c);
      return;
    }
    for (const auto& [m, coeff] : vertices[v].terms()) {
      pick[v] = &m;
      rec(v + 1, c * coeff);
    }
  };
  rec(0, Rational(1));
}

Rational group_factor(const std::vector<std::vector<int>>& groups, std::size_t n) {
  Rational f = 1;
  std::set<int> seen;
  for (const auto& g : groups) {
    for (int v : g) {
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw ValidationError("identical group names vertex " + std::to_string(v) + " out of range");
      if (!seen.insert(v).second) throw ValidationError("vertex " + std::to_string(v) + " is in two groups");
    }
    f /= Rational(factorial(static_cast<unsigned>(g.size())));
  }
  return f;
}

}  // namespace

Integer matching_count(int legs) {
  if (legs % 2) return 0;
  Integer r = 1;
  for (int k = legs - 1; k > 1; k -= 2) r *= k;
  return r;
}

AlphaSeries gaussian_moment(const std::vector<int>& indices, const QuadraticKernel& k, int leg_cap) {
  const auto d = static_cast<int>(k.dim());
  for (int i : indices)
    if (i < 0 || i >= d)
      throw ValidationError("index " + std::to_string(i) + " out of range 0.." + std::to_string(d - 1));
  if (indices.size() % 2) return {};
  check_legs(static_cast<int>(indices.size()), leg_cap);
  std::vector<int> counts(static_cast<std::size_t>(d), 0);
  for (int i : indices) ++counts[static_cast<std::size_t>(i)];
  std::map<std::vector<int>, Rational> memo;
  std::function<Rational(std::vector<int>&)> rec = [&](std::vector<int>& c) -> Rational {
    auto first = std::find_if(c.begin(), c.end(), [](int v) { return v > 0; });
    if (first == c.end()) return 1;
    if (auto it = memo.find(c); it != memo.end()) return it->second;
    std::vector<int> key = c;
    auto a = static_cast<std::size_t>(first - c.begin());
    --c[a];
    Rational sum = 0;
    for (std::size_t b = 0; b < c.size(); ++b) {
      if (c[b] == 0 || k.inverse_pairing[a][b] == 0) continue;
      Rational mult = c[b];
      --c[b];
      sum += mult * k.inverse_pairing[a][b] * rec(c);
      ++c[b];
    }
    ++c[a];
    memo.emplace(std::move(key), sum);
    return sum;
  };
  Rational v = rec(counts);
  if (v == 0) return {};
  return {{static_cast<int>(indices.size() / 2), v}};
}

AlphaSeries correlator(const std::vector<GradedPoly>& vertices, const std::vector<Generator>& coords,
                       const QuadraticKernel& k, const std::vector<std::vector<int>>& identical_groups,
                       int leg_cap) {
  if (coords.size() != k.dim()) throw ValidationError("coordinate count does not match the kernel");
  Rational gf = group_factor(identical_groups, vertices.size());
  AlphaSeries out;
  for_each_monomial_choice(vertices, [&](const std::vector<const Monomial*>& pick, const Rational& c) {
    std::vector<int> legs;
    for (const Monomial* m : pick) {
      auto l = legs_of(*m, coords);
      legs.insert(legs.end(), l.begin(), l.end());
    }
    AlphaSeries part = gaussian_moment(legs, k, leg_cap);
    for (auto& [p, v] : part) v *= c * gf;
    out += part;
  });
  return out;
}

SymmetryFactor symmetry_factor(const graph::LabelledGraph& g, const std::vector<int>& colors) {
  std::vector<int> col = colors.empty() ? std::vector<int>(static_cast<std::size_t>(g.n), 0) : colors;
  SymmetryFactor s;
  std::map<std::pair<int, int>, unsigned> mult;
  for (const auto& [a, b] : g.edges) {
    ++mult[{std::min(a, b), std::max(a, b)}];
    if (a == b) s.L *= 2;
  }
  for (const auto& [e, m] : mult) s.P *= factorial(m).get_si();
  s.V = graph::canonical_shape(g, col).automorphisms;
  return s;
}

std::vector<DiagramClass> diagram_expansion(const std::vector<GradedPoly>& vertices,
                                            const std::vector<Generator>& coords, const QuadraticKernel& k,
                                            const std::vector<std::vector<int>>& identical_groups,
                                            int leg_cap) {
  if (vertices.empty()) throw ValidationError("diagram expansion needs at least one vertex");
  if (coords.size() != k.dim()) throw ValidationError("coordinate count does not match the kernel");
  group_factor(identical_groups, vertices.size());
  const int nv = static_cast<int>(vertices.size());
  std::vector<int> colors(vertices.size());
  for (int v = 0; v < nv; ++v) colors[static_cast<std::size_t>(v)] = nv + v;
  for (std::size_t gi = 0; gi < identical_groups.size(); ++gi)
    for (int v : identical_groups[gi]) colors[static_cast<std::size_t>(v)] = static_cast<int>(gi);

  std::map<std::pair<std::vector<std::pair<int, int>>, std::vector<int>>, DiagramClass> classes;
  std::map<std::vector<std::pair<int, int>>, std::pair<graph::LabelledGraph, std::vector<int>>> shape_memo;

  for_each_monomial_choice(vertices, [&](const std::vector<const Monomial*>& pick, const Rational& c) {
    std::vector<std::pair<int, int>> legs;  // (vertex, coordinate)
    for (int v = 0; v < nv; ++v)
      for (int idx : legs_of(*pick[static_cast<std::size_t>(v)], coords)) legs.emplace_back(v, idx);
    if (legs.size() % 2) return;
    check_legs(static_cast<int>(legs.size()), leg_cap);
    const int pairs = static_cast<int>(legs.size() / 2);
    std::vector<bool> used(legs.size(), false);
    std::vector<std::pair<int, int>> edges;
    std::function<void(const Rational&)> rec = [&](const Rational& w) {
      auto first = std::find(used.begin(), used.end(), false);
      if (first == used.end()) {
        std::vector<std::pair<int, int>> key = edges;
        std::sort(key.begin(), key.end());
        auto it = shape_memo.find(key);
        if (it == shape_memo.end()) {
          auto sr = graph::canonical_shape(graph::LabelledGraph(nv, key), colors);
          it = shape_memo.emplace(key, std::make_pair(sr.canonical, sr.colors)).first;
        }
        auto& cls = classes[{it->second.first.edges, it->second.second}];
        if (cls.count == 0) {
          cls.shape = it->second.first;
          cls.colors = it->second.second;
          cls.symmetry = symmetry_factor(cls.shape, cls.colors);
        }
        ++cls.count;
        cls.weight += AlphaSeries{{pairs, w * c}};
        return;
      }
      auto a = static_cast<std::size_t>(first - used.begin());
      used[a] = true;
      for (std::size_t b = a + 1; b < legs.size(); ++b) {
        if (used[b]) continue;
        const Rational& kv = k.inverse_pairing[static_cast<std::size_t>(legs[a].second)]
                                              [static_cast<std::size_t>(legs[b].second)];
        used[b] = true;
        edges.emplace_back(legs[a].first + 1, legs[b].first + 1);
        if (kv != 0) rec(w * kv);
        else rec(Rational(0));
        edges.pop_back();
        used[b] = false;
      }
      used[a] = false;
    };
    rec(Rational(1));
  });
  std::vector<DiagramClass> out;
  for (auto& [key, cls] : classes) out.push_back(std::move(cls));
  return out;
}

AlphaSeries resum(const std::vector<DiagramClass>& classes, const std::vector<std::vector<int>>& identical_groups) {
  Rational gf = 1;
  for (const auto& g : identical_groups) gf /= Rational(factorial(static_cast<unsigned>(g.size())));
  AlphaSeries out;
  for (const auto& cls : classes) {
    AlphaSeries w = cls.weight;
    for (auto& [p, v] : w) v *= gf;
    out += w;
  }
  return out;
}

LatticeKernel lattice_kernel(const std::vector<Generator>& x, const Matrix& omega, const std::vector<Generator>& psi,
                             const Matrix& eta) {
  LatticeKernel k;
  if (omega.size() != x.size()) throw ValidationError("Omega size does not match the even coordinates");
  if (eta.size() != psi.size()) throw ValidationError("eta size does not match the odd coordinates");
  for (Generator g : x)
    if (g.odd()) throw ValidationError("'" + g.name() + "' must be even");
  for (Generator g : psi)
    if (!g.odd()) throw ValidationError("'" + g.name() + "' must be odd");
  if (!omega.empty()) {
    if (!is_antisymmetric(omega)) throw ValidationError("Omega must be antisymmetric");
    k.even_inverse = inverse(omega);
  }
  if (!eta.empty()) {
    if (!is_symmetric(eta)) throw ValidationError("eta must be symmetric");
    k.odd_inverse = inverse(eta);
  }
  k.even = x;
  k.odd = psi;
  return k;
}

namespace {

struct Component {
  GradedPoly poly;
  int even_legs = 0;
  int odd_legs = 0;
};

// Splits f by (even leg count, odd leg count).
std::vector<Component> split_components(const GradedPoly& f, const LatticeKernel& k) {
  std::map<std::pair<int, int>, GradedPoly> parts;
  for (const auto& [m, c] : f.terms()) {
    int ev = 0, od = 0;
    for (const auto& [g, e] : m.factors()) {
      if (std::find(k.even.begin(), k.even.end(), g) != k.even.end()) ev += static_cast<int>(e);
      else if (std::find(k.odd.begin(), k.odd.end(), g) != k.odd.end()) od += static_cast<int>(e);
      else throw ValidationError("'" + g.name() + "' is not a coordinate of the lattice kernel");
    }
    parts[{ev, od}].add_term(c, m);
  }
  std::vector<Component> out;
  for (auto& [key, p] : parts) out.push_back({std::move(p), key.first, key.second});
  return out;
}

// All symmetric zero-diagonal multiplicity assignments on pairs i<j with
// prescribed row sums.
void enumerate_patterns(const std::vector<int>& degrees,
                        const std::function<void(const std::map<std::pair<int, int>, int>&)>& fn) {
  const int n = static_cast<int>(degrees.size());
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<int> rem = degrees;
  std::map<std::pair<int, int>, int> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t p) {
    if (p == pairs.size()) {
      if (std::all_of(rem.begin(), rem.end(), [](int r) { return r == 0; })) fn(cur);
      return;
    }
    auto [i, j] = pairs[p];
    // Vertex i has no later pair once j is its last partner.
    bool last_for_i = (j == n - 1);
    int hi = std::min(rem[static_cast<std::size_t>(i)], rem[static_cast<std::size_t>(j)]);
    int lo = last_for_i ? rem[static_cast<std::size_t>(i)] : 0;
    for (int m = lo; m <= hi; ++m) {
      rem[static_cast<std::size_t>(i)] -= m;
      rem[static_cast<std::size_t>(j)] -= m;
      if (m) cur[{i, j}] = m;
      rec(p + 1);
      cur.erase({i, j});
      rem[static_cast<std::size_t>(i)] += m;
      rem[static_cast<std::size_t>(j)] += m;
    }
  };
  if (n == 0) return;
  rec(0);
}

struct EdgeOp {
  int i, j;
  bool odd;
};

}  // namespace

GradedPoly lattice_correlator(const std::vector<GradedPoly>& fs, const LatticeKernel& k, int leg_cap) {
  const std::size_t n = fs.size();
  std::vector<std::vector<Component>> comps;
  int max_legs = 0;
  for (const auto& f : fs) {
    comps.push_back(split_components(f, k));
    int m = 0;
    for (const auto& c : comps.back()) m = std::max(m, c.even_legs + c.odd_legs);
    max_legs += m;
  }
  check_legs(max_legs, leg_cap);

  GradedPoly out;
  std::vector<const Component*> pick(n);

  auto evaluate = [&]() {
    std::vector<int> ev(n), od(n);
    int total_even = 0, total_odd = 0;
    for (std::size_t v = 0; v < n; ++v) {
      ev[v] = pick[v]->even_legs;
      od[v] = pick[v]->odd_legs;
      total_even += ev[v];
      total_odd += od[v];
    }
    if (total_even % 2 || total_odd % 2) return;
    enumerate_patterns(ev, [&](const std::map<std::pair<int, int>, int>& me) {
      enumerate_patterns(od, [&](const std::map<std::pair<int, int>, int>& mo) {
        std::vector<EdgeOp> ops;
        Rational denom = 1;
        std::map<std::pair<int, int>, unsigned> tpow;
        for (const auto& [e, m] : me) {
          for (int r = 0; r < m; ++r) ops.push_back({e.first, e.second, false});
          denom *= Rational(factorial(static_cast<unsigned>(m)));
          tpow[e] += static_cast<unsigned>(m);
        }
        for (const auto& [e, m] : mo) {
          for (int r = 0; r < m; ++r) ops.push_back({e.first, e.second, true});
          denom *= Rational(factorial(static_cast<unsigned>(m)));
          tpow[e] += static_cast<unsigned>(m);
        }
        std::vector<GradedPoly> state(n);
        std::vector<int> parity(n);
        for (std::size_t v = 0; v < n; ++v) {
          state[v] = pick[v]->poly;
          parity[v] = pick[v]->odd_legs % 2;
        }
        Rational acc = 0;
        auto sign_before = [&](int idx) {
          int s = 0;
          for (int v = 0; v < idx; ++v) s += parity[static_cast<std::size_t>(v)];
          return (s % 2) ? -1 : 1;
        };
        std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t p, const Rational& w) {
          if (p == ops.size()) {
            Rational prod = w;
            for (const auto& s : state) prod *= s.constant_term();
            acc += prod;
            return;
          }
          const EdgeOp& op = ops[p];
          auto si = static_cast<std::size_t>(op.i), sj = static_cast<std::size_t>(op.j);
          const auto& gens = op.odd ? k.odd : k.even;
          const Matrix& kin = op.odd ? k.odd_inverse : k.even_inverse;
          GradedPoly keep_i = state[si], keep_j = state[sj];
          for (std::size_t mu = 0; mu < gens.size(); ++mu) {
            GradedPoly di = keep_i.derive(gens[mu]);
            if (di.is_zero()) continue;
            int s1 = op.odd ? sign_before(op.i) : 1;
            state[si] = di;
            if (op.odd) parity[si] ^= 1;
            int s2 = op.odd ? sign_before(op.j) : 1;
            for (std::size_t nu = 0; nu < gens.size(); ++nu) {
              if (kin[mu][nu] == 0) continue;
              GradedPoly dj = keep_j.derive(gens[nu]);
              if (dj.is_zero()) continue;
              state[sj] = dj;
              if (op.odd) parity[sj] ^= 1;
              rec(p + 1, w * kin[mu][nu] * (s1 * s2));
              if (op.odd) parity[sj] ^= 1;
              state[sj] = keep_j;
            }
            if (op.odd) parity[si] ^= 1;
            state[si] = keep_i;
          }
        };
        rec(0, Rational(1));
        if (acc == 0) return;
        GradedPoly term = GradedPoly(acc / denom);
        for (const auto& [e, pw] : tpow)
          term = term * GradedPoly::term(1, Monomial::of(graph::edge_var(e.first + 1, e.second + 1), pw));
        out += term;
      });
    });
  };

  std::function<void(std::size_t)> choose = [&](std::size_t v) {
    if (v == n) {
      evaluate();
      return;
    }
    for (const auto& c : comps[v]) {
      pick[v] = &c;
      choose(v + 1);
    }
  };
  choose(0);
  return out;
}

}  // namespace gbv::wick
