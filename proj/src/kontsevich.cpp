#include "gbv/kontsevich.hpp"

#include "gbv/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace gbv::kontsevich {

namespace {

// Right derivative by an odd generator: sign (-1)^{|term|+1} per term.
GradedPoly right_derive(const GradedPoly& p, Generator g) {
  GradedPoly out;
  for (const auto& [m, c] : p.terms()) {
    GradedPoly d = GradedPoly::term(c, m).derive(g);
    if (g.odd() && !m.odd()) d = -d;
    out += d;
  }
  return out;
}

int parity_of(const GradedPoly& p) {
  auto par = p.homogeneous_parity();
  if (!par) throw ValidationError("chain entry " + to_text(p) + " is not of homogeneous parity");
  return *par ? 1 : 0;
}

std::vector<int> parities(const std::vector<GradedPoly>& chain) {
  std::vector<int> out;
  for (const auto& f : chain) out.push_back(f.is_zero() ? 0 : parity_of(f));
  return out;
}

}  // namespace

SymplecticData::SymplecticData(std::vector<Generator> x_gens, Matrix omega_, std::vector<Generator> odd_gens,
                               Matrix eta_)
    : x(std::move(x_gens)), omega(std::move(omega_)), odd(std::move(odd_gens)), eta(std::move(eta_)) {
  if (x.size() % 2) throw ValidationError("even dimension must be 2n");
  if (omega.size() != x.size()) throw ValidationError("Omega size does not match the even coordinates");
  for (const auto& row : omega)
    if (row.size() != omega.size()) throw ValidationError("Omega must be square");
  if (eta.size() != odd.size()) throw ValidationError("eta size does not match the odd coordinates");
  for (const auto& row : eta)
    if (row.size() != eta.size()) throw ValidationError("eta must be square");
  for (Generator g : x)
    if (g.degree() != 0) throw ValidationError("'" + g.name() + "' must have degree 0");
  for (Generator g : odd)
    if (g.degree() != 1) throw ValidationError("'" + g.name() + "' must have degree 1");
  if (!omega.empty()) {
    if (!is_antisymmetric(omega)) throw ValidationError("Omega must be antisymmetric");
    omega_inv = inverse(omega);
  }
  if (!eta.empty()) {
    if (!is_symmetric(eta)) throw ValidationError("eta must be symmetric");
    eta_inv = inverse(eta);
  }
}

std::vector<Generator> SymplecticData::alphabet() const {
  std::vector<Generator> out = x;
  out.insert(out.end(), odd.begin(), odd.end());
  return out;
}

wick::LatticeKernel SymplecticData::kernel() const { return wick::LatticeKernel{x, omega_inv, odd, eta_inv}; }

SymplecticData standard_data(int n, int m, Matrix eta) {
  if (n < 0 || m < 0) throw ValidationError("dimensions must be non-negative");
  std::vector<Generator> x, chi;
  for (int i = 1; i <= 2 * n; ++i) x.push_back(Generator::make("x" + std::to_string(i), 0));
  for (int a = 1; a <= m; ++a) chi.push_back(Generator::make("chi" + std::to_string(a), 1));
  Matrix omega = zero_matrix(static_cast<std::size_t>(2 * n), static_cast<std::size_t>(2 * n));
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
    omega[2 * i][2 * i + 1] = 1;
    omega[2 * i + 1][2 * i] = -1;
  }
  if (eta.empty()) eta = identity_matrix(static_cast<std::size_t>(m));
  return SymplecticData(std::move(x), std::move(omega), std::move(chi), std::move(eta));
}

GradedPoly poisson(const GradedPoly& f, const GradedPoly& g, const SymplecticData& d) {
  GradedPoly out;
  for (std::size_t mu = 0; mu < d.x.size(); ++mu) {
    GradedPoly df = f.derive(d.x[mu]);
    if (df.is_zero()) continue;
    for (std::size_t nu = 0; nu < d.x.size(); ++nu) {
      if (d.omega_inv[mu][nu] == 0) continue;
      out -= df * g.derive(d.x[nu]) * d.omega_inv[mu][nu];
    }
  }
  for (std::size_t a = 0; a < d.odd.size(); ++a) {
    GradedPoly df = right_derive(f, d.odd[a]);
    if (df.is_zero()) continue;
    for (std::size_t b = 0; b < d.odd.size(); ++b) {
      if (d.eta_inv[a][b] == 0) continue;
      out -= df * g.derive(d.odd[b]) * d.eta_inv[a][b];
    }
  }
  return out;
}

void validate_chain(const std::vector<GradedPoly>& chain, const SymplecticData& d) {
  auto alpha = d.alphabet();
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const auto& f = chain[k];
    if (f.is_zero()) throw ValidationError("chain entry " + std::to_string(k + 1) + " is zero");
    parity_of(f);
    for (const auto& [m, c] : f.terms()) {
      if (m.total_exponent() < 2)
        throw ValidationError("chain entry " + std::to_string(k + 1) + " has a term of order below 2: " +
                              to_text(m));
      for (const auto& [g, e] : m.factors())
        if (std::find(alpha.begin(), alpha.end(), g) == alpha.end())
          throw ValidationError("chain entry " + std::to_string(k + 1) + " uses unknown coordinate '" + g.name() +
                                "'");
    }
  }
}

CEBoundary ce_boundary(const std::vector<GradedPoly>& chain, const SymplecticData& d) {
  auto par = parities(chain);
  const std::size_t k = chain.size();
  // Shifted degrees |f| + 1 and their prefix sums.
  std::vector<int> w(k), prefix(k + 1, 0);
  for (std::size_t i = 0; i < k; ++i) {
    w[i] = par[i] + 1;
    prefix[i + 1] = prefix[i] + w[i];
  }
  CEBoundary out;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      GradedPoly b = poisson(chain[i], chain[j], d);
      if (b.is_zero()) continue;
      // Constant parts act trivially.
      GradedPoly nonconst = b - GradedPoly(b.constant_term());
      if (b.constant_term() != 0) ++out.dropped_constants;
      if (nonconst.is_zero()) continue;
      int s = w[i] * prefix[i] + w[j] * prefix[j] + w[i] * w[j] + par[i];
      std::vector<GradedPoly> entry{nonconst};
      for (std::size_t m = 0; m < k; ++m)
        if (m != i && m != j) entry.push_back(chain[m]);
      out.terms.push_back({Rational((s % 2) ? -1 : 1), std::move(entry)});
    }
  return out;
}

CENormalForm normal_form(const std::vector<CETerm>& terms) {
  CENormalForm out;
  for (const auto& t : terms) {
    std::vector<std::pair<Monomial, Rational>> pick(t.chain.size());
    std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t v, const Rational& c) {
      if (v == t.chain.size()) {
        std::vector<Monomial> seq;
        for (const auto& p : pick) seq.push_back(p.first);
        // Bubble sort with the shifted-parity sign.
        int sign = 1;
        for (std::size_t a = 0; a < seq.size(); ++a)
          for (std::size_t b = 0; b + 1 < seq.size() - a; ++b) {
            if (seq[b + 1] < seq[b]) {
              int wa = seq[b].odd() ? 0 : 1, wb = seq[b + 1].odd() ? 0 : 1;
              if (wa * wb) sign = -sign;
              std::swap(seq[b], seq[b + 1]);
            }
          }
        for (std::size_t a = 0; a + 1 < seq.size(); ++a)
          if (seq[a] == seq[a + 1] && !seq[a].odd()) return;
        auto& slot = out[seq];
        slot += c * sign;
        if (slot == 0) out.erase(seq);
        return;
      }
      for (const auto& [m, coeff] : t.chain[v].terms()) {
        pick[v] = {m, coeff};
        rec(v + 1, c * coeff);
      }
    };
    rec(0, t.coeff);
  }
  return out;
}

GradedPoly evaluate_chain(const std::vector<GradedPoly>& chain, const SymplecticData& d, int N) {
  const int l = static_cast<int>(chain.size());
  if (N == 0) N = l;
  if (N < l) throw ValidationError("label range N must be at least the chain length");
  if (l == 0) return GradedPoly(1);
  auto par = parities(chain);
  GradedPoly w = wick::lattice_correlator(chain, d.kernel());
  if (w.is_zero()) return {};
  // (t_1 f_1)...(t_l f_l) = sign * t_1...t_l f_1...f_l
  int moves = 0, seen = 0;
  for (int k = 0; k < l; ++k) {
    moves += seen;
    seen += par[static_cast<std::size_t>(k)];
  }
  GradedPoly ts(1);
  for (int k = 1; k <= l; ++k) ts = ts * GradedPoly::gen(graph::vertex_var(k));
  GradedPoly base = ts * w * ((moves % 2) ? -1 : 1);

  GradedPoly out;
  std::vector<int> target(static_cast<std::size_t>(l));
  std::vector<bool> used(static_cast<std::size_t>(N) + 1, false);
  std::function<void(int)> rec = [&](int k) {
    if (k == l) {
      std::map<int, int> labels;
      for (int v = 0; v < l; ++v) labels[v + 1] = target[static_cast<std::size_t>(v)];
      out += graph::relabel(base, labels);
      return;
    }
    for (int t = 1; t <= N; ++t) {
      if (used[static_cast<std::size_t>(t)]) continue;
      used[static_cast<std::size_t>(t)] = true;
      target[static_cast<std::size_t>(k)] = t;
      rec(k + 1);
      used[static_cast<std::size_t>(t)] = false;
    }
  };
  rec(0);
  return out;
}

HomomorphismResult homomorphism_check(const std::vector<GradedPoly>& chain, const SymplecticData& d) {
  validate_chain(chain, d);
  const int l = static_cast<int>(chain.size());
  HomomorphismResult r;
  for (const auto& t : ce_boundary(chain, d).terms) r.lhs += evaluate_chain(t.chain, d, l) * t.coeff;
  r.rhs = graph::boundary_operator_poly(evaluate_chain(chain, d, l), l, l);
  r.equal = (r.lhs == r.rhs);
  return r;
}

LieAlgebra su2() {
  LieAlgebra g;
  g.dim = 3;
  g.f.assign(27, Rational(0));
  auto set = [&](int a, int b, int c, int v) { g.f[static_cast<std::size_t>((a * 3 + b) * 3 + c)] = v; };
  set(0, 1, 2, 1);
  set(1, 2, 0, 1);
  set(2, 0, 1, 1);
  set(1, 0, 2, -1);
  set(0, 2, 1, -1);
  set(2, 1, 0, -1);
  g.eta = identity_matrix(3);
  return g;
}

void validate_lie_algebra(const LieAlgebra& g) {
  const int n = g.dim;
  if (static_cast<int>(g.f.size()) != n * n * n) throw ValidationError("structure constants need dim^3 entries");
  if (static_cast<int>(g.eta.size()) != n) throw ValidationError("metric size does not match the dimension");
  auto triple = [](int a, int b, int c) {
    return "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "," + std::to_string(c + 1) + ")";
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.at(a, b, c) != -g.at(b, a, c) || g.at(a, b, c) != -g.at(a, c, b))
          throw ValidationError("structure constants are not totally antisymmetric at " + triple(a, b, c));
  Matrix inv = inverse(g.eta);
  // f_ab^c
  auto up = [&](int a, int b, int c) {
    Rational s = 0;
    for (int e = 0; e < n; ++e) s += g.at(a, b, e) * inv[static_cast<std::size_t>(e)][static_cast<std::size_t>(c)];
    return s;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          Rational s = 0;
          for (int e = 0; e < n; ++e)
            s += up(a, b, e) * up(e, c, d) + up(b, c, e) * up(e, a, d) + up(c, a, e) * up(e, b, d);
          if (s != 0) throw ValidationError("Jacobi identity fails for the triple " + triple(a, b, c));
        }
}

GradedPoly cubic_element(const LieAlgebra& g, const SymplecticData& d) {
  if (static_cast<int>(d.odd.size()) != g.dim) throw ValidationError("odd dimension does not match the algebra");
  std::vector<std::pair<Rational, std::vector<Generator>>> raw;
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b)
      for (int c = 0; c < g.dim; ++c)
        if (g.at(a, b, c) != 0)
          raw.push_back({g.at(a, b, c) / 6, {d.odd[static_cast<std::size_t>(a)], d.odd[static_cast<std::size_t>(b)],
                                             d.odd[static_cast<std::size_t>(c)]}});
  return GradedPoly::normalize(raw);
}

graph::GraphChain lie_algebra_cycle(const LieAlgebra& g, int k) {
  validate_lie_algebra(g);
  if (k < 1) throw ValidationError("vertex count must be positive");
  if ((3 * k) % 2) throw ValidationError("trivalent graphs need an even vertex count");
  SymplecticData d = standard_data(0, g.dim, g.eta);
  GradedPoly f = cubic_element(g, d);
  if (f.is_zero()) return {};
  std::vector<GradedPoly> chain(static_cast<std::size_t>(k), f);
  return graph::from_polynomial(evaluate_chain(chain, d));
}

Json data_to_json(const SymplecticData& d) {
  Json j;
  Json xs = Json::array(), os = Json::array();
  for (Generator g : d.x) xs.push_back(g.name());
  for (Generator g : d.odd) os.push_back(g.name());
  j["x"] = xs;
  j["omega"] = matrix_to_json(d.omega);
  j["odd"] = os;
  j["eta"] = matrix_to_json(d.eta);
  return j;
}

SymplecticData data_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("symplectic data must be an object");
  if (j.contains("n") && !j.contains("omega")) {
    int n = j.at("n").get<int>();
    int m = j.value("m", 0);
    Matrix eta = j.contains("eta") ? matrix_from_json(j.at("eta")) : Matrix{};
    return standard_data(n, m, eta);
  }
  std::vector<Generator> x, odd;
  for (const auto& s : j.at("x")) x.push_back(Generator::make(s.get<std::string>(), 0));
  if (j.contains("odd"))
    for (const auto& s : j.at("odd")) odd.push_back(Generator::make(s.get<std::string>(), 1));
  Matrix eta = j.contains("eta") ? matrix_from_json(j.at("eta")) : Matrix{};
  return SymplecticData(std::move(x), matrix_from_json(j.at("omega")), std::move(odd), std::move(eta));
}

}  // namespace gbv::kontsevich
