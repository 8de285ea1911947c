#include "gbv/graph_complex.hpp"

#include "gbv/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace gbv::graph {

namespace {

int permutation_sign(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

void check_cap(int n, int cap) {
  if (n > cap)
    throw CapExceeded("graph with " + std::to_string(n) + " vertices exceeds the vertex cap " +
                      std::to_string(cap));
}

}  // namespace

LabelledGraph::LabelledGraph(int n_vertices, std::vector<std::pair<int, int>> e)
    : n(n_vertices), edges(std::move(e)) {
  if (n < 1) throw ValidationError("graph needs at least one vertex");
  for (const auto& [a, b] : edges)
    if (a < 1 || a > n || b < 1 || b > n)
      throw ValidationError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                            ") has a label outside 1.." + std::to_string(n));
  std::sort(edges.begin(), edges.end());
}

bool LabelledGraph::has_loop() const {
  return std::any_of(edges.begin(), edges.end(), [](const auto& e) { return e.first == e.second; });
}

std::vector<int> LabelledGraph::valences() const {
  std::vector<int> v(static_cast<std::size_t>(n), 0);
  for (const auto& [a, b] : edges) {
    ++v[static_cast<std::size_t>(a - 1)];
    ++v[static_cast<std::size_t>(b - 1)];
  }
  return v;
}

CanonicalResult canonical_form(const LabelledGraph& g, int cap) {
  check_cap(g.n, cap);
  CanonicalResult out;
  if (g.has_loop()) {
    // Flipping a loop is an orientation-reversing symmetry.
    out.cls.canonical = g;
    out.cls.is_zero = true;
    out.sign = 0;
    return out;
  }
  std::vector<int> p(static_cast<std::size_t>(g.n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::pair<int, int>> best, cur(g.edges.size());
  int best_sign = 0;
  bool zero = false;
  bool have = false;
  do {
    int flips = 0;
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
      int a = p[static_cast<std::size_t>(g.edges[k].first - 1)] + 1;
      int b = p[static_cast<std::size_t>(g.edges[k].second - 1)] + 1;
      if (a > b) {
        std::swap(a, b);
        ++flips;
      }
      cur[k] = {a, b};
    }
    std::sort(cur.begin(), cur.end());
    int s = permutation_sign(p) * ((flips % 2) ? -1 : 1);
    if (!have || cur < best) {
      best = cur;
      best_sign = s;
      zero = false;
      have = true;
    } else if (cur == best && s != best_sign) {
      zero = true;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  out.cls.canonical.n = g.n;
  out.cls.canonical.edges = best;
  out.cls.is_zero = zero;
  // g maps to canonical with sign best_sign, so g = best_sign * canonical.
  out.sign = zero ? 0 : best_sign;
  return out;
}

void GraphChain::add(const LabelledGraph& g, const Rational& c) {
  if (c == 0) return;
  auto r = canonical_form(g);
  if (r.cls.is_zero) return;
  auto [it, inserted] = terms_.emplace(r.cls.canonical, c * r.sign);
  if (!inserted) {
    it->second += c * r.sign;
    if (it->second == 0) terms_.erase(it);
  }
}

void GraphChain::add(const GraphChain& other, const Rational& scale) {
  if (scale == 0) return;
  for (const auto& [g, c] : other.terms_) {
    auto [it, inserted] = terms_.emplace(g, c * scale);
    if (!inserted) {
      it->second += c * scale;
      if (it->second == 0) terms_.erase(it);
    }
  }
}

Rational GraphChain::coefficient(const LabelledGraph& g) const {
  auto r = canonical_form(g);
  if (r.cls.is_zero) return 0;
  auto it = terms_.find(r.cls.canonical);
  return it == terms_.end() ? Rational(0) : it->second * r.sign;
}

GraphChain boundary(const LabelledGraph& g) {
  GraphChain out;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [a, b] = g.edges[e];
    if (a == b) continue;
    int i = std::min(a, b), j = std::max(a, b);
    auto merge = [&](int v) { return v == j ? i : (v > j ? v - 1 : v); };
    std::vector<std::pair<int, int>> rest;
    for (std::size_t f = 0; f < g.edges.size(); ++f)
      if (f != e) rest.emplace_back(merge(g.edges[f].first), merge(g.edges[f].second));
    int sign = (j % 2) ? 1 : -1;
    if (a > b) sign = -sign;
    out.add(LabelledGraph(g.n - 1, std::move(rest)), sign);
  }
  return out;
}

GraphChain boundary(const GraphChain& c) {
  GraphChain out;
  for (const auto& [g, coeff] : c.terms()) out.add(boundary(g), coeff);
  return out;
}

Rational pair(const GraphCochain& cochain, const GraphChain& chain, bool strict) {
  Rational total = 0;
  for (const auto& [g, c] : chain.terms()) {
    auto it = cochain.find(g);
    if (it != cochain.end()) total += it->second * c;
  }
  if (strict) {
    std::set<int> a, b;
    for (const auto& [g, c] : cochain) a.insert(g.n);
    for (const auto& [g, c] : chain.terms()) b.insert(g.n);
    if (!a.empty() && !b.empty() && a != b)
      throw ValidationError("cochain and chain have different vertex degrees");
  }
  return total;
}

Generator vertex_var(int i) { return Generator::make("t" + std::to_string(i), -1); }

Generator edge_var(int i, int j) {
  if (!(i < j)) throw InvariantViolation("edge variable requires i < j");
  return Generator::make("t" + std::to_string(i) + "_" + std::to_string(j), 0);
}

std::optional<std::pair<int, int>> parse_graph_var(Generator g) {
  const std::string& s = g.name();
  if (s.size() < 2 || s[0] != 't') return std::nullopt;
  auto digits = [](const std::string& t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
  };
  auto us = s.find('_');
  if (us == std::string::npos) {
    std::string a = s.substr(1);
    if (!digits(a) || g.degree() != -1) return std::nullopt;
    return std::make_pair(std::stoi(a), 0);
  }
  std::string a = s.substr(1, us - 1), b = s.substr(us + 1);
  if (!digits(a) || !digits(b) || g.degree() != 0) return std::nullopt;
  return std::make_pair(std::stoi(a), std::stoi(b));
}

GradedPoly to_polynomial(const LabelledGraph& g, int N) {
  if (N == 0) N = g.n;
  if (N < g.n) throw ValidationError("label range smaller than the vertex count");
  GradedPoly out;
  if (g.has_loop()) return out;
  // Injective label maps: choose an ordered n-subset of 1..N.
  std::vector<int> labels(static_cast<std::size_t>(N));
  std::iota(labels.begin(), labels.end(), 1);
  std::vector<bool> pick(static_cast<std::size_t>(N), false);
  std::fill(pick.begin(), pick.begin() + g.n, true);
  do {
    std::vector<int> subset;
    for (int k = 0; k < N; ++k)
      if (pick[static_cast<std::size_t>(k)]) subset.push_back(k + 1);
    std::vector<int> l = subset;
    do {
      std::vector<Generator> seq;
      int sign = 1;
      for (int v = 0; v < g.n; ++v) seq.push_back(vertex_var(l[static_cast<std::size_t>(v)]));
      for (const auto& [a, b] : g.edges) {
        int la = l[static_cast<std::size_t>(a - 1)], lb = l[static_cast<std::size_t>(b - 1)];
        if (la > lb) {
          std::swap(la, lb);
          sign = -sign;
        }
        seq.push_back(edge_var(la, lb));
      }
      auto [s, m] = sort_factors(seq);
      if (s != 0) out.add_term(s * sign, m);
    } while (std::next_permutation(l.begin(), l.end()));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

GradedPoly to_polynomial(const GraphChain& c, int N) {
  GradedPoly out;
  for (const auto& [g, coeff] : c.terms()) out += coeff * to_polynomial(g, N == 0 ? g.n : N);
  return out;
}

Rational extract_coefficient(const LabelledGraph& g, const GradedPoly& p) {
  auto cls = canonical_form(g);
  if (cls.cls.is_zero) return 0;
  // Only t_1...t_n prod t_ij^{m_ij} survives the derivatives at t = 0. The
  // t-derivatives give +1 on t_1...t_n; edge derivatives give prod m_ij!
  // (= #P) times the reversal sign.
  std::vector<Generator> seq;
  int sign = 1;
  for (int v = 1; v <= g.n; ++v) seq.push_back(vertex_var(v));
  for (const auto& [a, b] : g.edges) {
    seq.push_back(edge_var(std::min(a, b), std::max(a, b)));
    if (a > b) sign = -sign;
  }
  auto [s, m] = sort_factors(seq);
  Rational c = p.coefficient(m) * s * sign;
  long aut = canonical_shape(g, std::vector<int>(static_cast<std::size_t>(g.n), 0)).automorphisms;
  return c / aut;
}

GraphChain from_polynomial(const GradedPoly& p) {
  std::set<LabelledGraph> classes;
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> verts;
    std::vector<std::pair<int, int>> edges;
    for (const auto& [gen, e] : m.factors()) {
      auto v = parse_graph_var(gen);
      if (!v) throw ValidationError("'" + gen.name() + "' is not a graph variable");
      if (v->second == 0) {
        verts.push_back(v->first);
      } else {
        for (unsigned k = 0; k < e; ++k) edges.push_back(*v);
      }
    }
    std::map<int, int> pos;
    for (std::size_t k = 0; k < verts.size(); ++k) pos[verts[k]] = static_cast<int>(k) + 1;
    std::vector<std::pair<int, int>> relabelled;
    for (const auto& [a, b] : edges) {
      if (!pos.count(a) || !pos.count(b))
        throw ValidationError("monomial " + to_text(m) + " has an edge without its vertex variables");
      relabelled.emplace_back(pos[a], pos[b]);
    }
    if (verts.empty()) throw ValidationError("monomial without vertex variables");
    auto r = canonical_form(LabelledGraph(static_cast<int>(verts.size()), relabelled));
    if (!r.cls.is_zero) classes.insert(r.cls.canonical);
  }
  GraphChain out;
  for (const auto& g : classes) out.add(g, extract_coefficient(g, p));
  return out;
}

GradedPoly relabel(const GradedPoly& p, const std::map<int, int>& labels) {
  auto map_label = [&](int v) {
    auto it = labels.find(v);
    return it == labels.end() ? v : it->second;
  };
  GradedPoly out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Generator> seq;
    int sign = 1;
    bool dead = false;
    for (const auto& [gen, e] : m.factors()) {
      auto v = parse_graph_var(gen);
      if (!v) {
        for (unsigned k = 0; k < e; ++k) seq.push_back(gen);
        continue;
      }
      if (v->second == 0) {
        seq.push_back(vertex_var(map_label(v->first)));
        continue;
      }
      int a = map_label(v->first), b = map_label(v->second);
      if (a == b) {
        dead = true;
        break;
      }
      if (a > b) {
        std::swap(a, b);
        if (e % 2) sign = -sign;
      }
      for (unsigned k = 0; k < e; ++k) seq.push_back(edge_var(a, b));
    }
    if (dead) continue;
    auto [s, r] = sort_factors(seq);
    if (s != 0) out.add_term(c * s * sign, r);
  }
  return out;
}

GradedPoly boundary_operator_poly(const GradedPoly& p, int N, int l) {
  if (N < l) throw ValidationError("label range N must be at least the vertex count l");
  GradedPoly out;
  for (int q = 1; q <= N; ++q) {
    GradedPoly dq = p.derive(vertex_var(q));
    if (dq.is_zero()) continue;
    for (int k = 1; k <= N; ++k) {
      if (k == q) continue;
      GradedPoly r = k < q ? dq.derive(edge_var(k, q)) : -dq.derive(edge_var(q, k));
      if (r.is_zero()) continue;
      out += relabel(r, {{q, k}});
    }
  }
  return out * Rational(1, 2 * (N - l + 1));
}

std::vector<LabelledGraph> enumerate_classes(int max_vertices, int max_edges) {
  std::set<LabelledGraph> found;
  for (int n = 1; n <= max_vertices; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
    std::vector<std::pair<int, int>> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
      auto r = canonical_form(LabelledGraph(n, cur));
      if (!r.cls.is_zero) found.insert(r.cls.canonical);
      if (static_cast<int>(cur.size()) == max_edges) return;
      for (std::size_t k = start; k < pairs.size(); ++k) {
        cur.push_back(pairs[k]);
        self(self, k);
        cur.pop_back();
      }
    };
    rec(rec, 0);
  }
  return {found.begin(), found.end()};
}

ShapeResult canonical_shape(const LabelledGraph& g, const std::vector<int>& colors, int cap) {
  check_cap(g.n, cap);
  if (static_cast<int>(colors.size()) != g.n) throw InvariantViolation("color vector size mismatch");
  std::vector<int> p(static_cast<std::size_t>(g.n));
  std::iota(p.begin(), p.end(), 0);
  ShapeResult out;
  std::vector<int> col(colors.size());
  std::vector<std::pair<int, int>> cur(g.edges.size());
  bool have = false;
  do {
    for (std::size_t v = 0; v < colors.size(); ++v) col[static_cast<std::size_t>(p[v])] = colors[v];
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
      int a = p[static_cast<std::size_t>(g.edges[k].first - 1)] + 1;
      int b = p[static_cast<std::size_t>(g.edges[k].second - 1)] + 1;
      cur[k] = {std::min(a, b), std::max(a, b)};
    }
    std::sort(cur.begin(), cur.end());
    bool better = !have || col < out.colors || (col == out.colors && cur < out.canonical.edges);
    if (better) {
      out.colors = col;
      out.canonical.n = g.n;
      out.canonical.edges = cur;
      out.automorphisms = 1;
      have = true;
    } else if (col == out.colors && cur == out.canonical.edges) {
      ++out.automorphisms;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

LabelledGraph tetrahedron() { return LabelledGraph(4, {{1, 4}, {1, 3}, {1, 2}, {2, 4}, {2, 3}, {4, 3}}); }
LabelledGraph double_square() { return LabelledGraph(4, {{1, 2}, {1, 2}, {4, 3}, {4, 3}, {1, 4}, {2, 3}}); }
LabelledGraph three_vertex_221() { return LabelledGraph(3, {{1, 2}, {1, 2}, {1, 3}, {1, 3}, {2, 3}}); }
LabelledGraph theta() { return LabelledGraph(2, {{1, 2}, {1, 2}, {1, 2}}); }

Json graph_to_json(const LabelledGraph& g) {
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges) edges.push_back(Json::array({a, b}));
  Json out;
  out["n"] = g.n;
  out["edges"] = std::move(edges);
  return out;
}

LabelledGraph graph_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw ValidationError("graph must be an object with integer 'n'");
  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw ValidationError("graph 'edges' must be an array");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw ValidationError("edge must be [i, j]");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  }
  return LabelledGraph(j["n"].get<int>(), std::move(edges));
}

Json chain_to_json(const GraphChain& c) {
  Json out = Json::array();
  for (const auto& [g, coeff] : c.terms()) {
    Json t;
    t["coeff"] = rational_to_json(coeff);
    t["graph"] = graph_to_json(g);
    out.push_back(std::move(t));
  }
  return out;
}

GraphChain chain_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("chain must be an array of {coeff, graph}");
  GraphChain out;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("coeff") || !t.contains("graph"))
      throw ValidationError("chain term must have 'coeff' and 'graph'");
    out.add(graph_from_json(t["graph"]), rational_from_json(t["coeff"]));
  }
  return out;
}

}  // namespace gbv::graph
