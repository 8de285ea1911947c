#include <doctest.h>

#include "gbv/errors.hpp"
#include "gbv/kontsevich.hpp"
#include "gbv/random_inputs.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

using namespace gbv;
using namespace gbv::kontsevich;
using graph::LabelledGraph;

namespace {

GradedPoly homogeneous_of_degree(Rng& rng, const std::vector<Generator>& alphabet, unsigned deg, unsigned terms) {
  GradedPoly f;
  while (f.is_zero()) f = random_poly(rng, alphabet, terms, deg, deg);
  return f;
}

// Parity-homogeneous random element with monomials of order min_order..max_order.
GradedPoly random_entry(Rng& rng, const std::vector<Generator>& alphabet, unsigned max_order, unsigned terms,
                        unsigned min_order = 2) {
  while (true) {
    GradedPoly f = random_poly(rng, alphabet, terms, min_order, max_order);
    bool odd = rng() % 2;
    GradedPoly g;
    for (const auto& [m, c] : f.terms())
      if (m.odd() == odd) g.add_term(c, m);
    if (!g.is_zero()) return g;
  }
}

int perm_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      if (p[a] > p[b]) ++inv;
  return inv % 2 ? -1 : 1;
}

// Value of the partial derivative along `idx` at the origin.
Rational taylor(const GradedPoly& f, const std::vector<Generator>& x, const std::vector<std::size_t>& idx) {
  GradedPoly r = f;
  for (std::size_t i : idx) r = r.derive(x[i]);
  return r.constant_term();
}

// Index contraction of Taylor tensors along the directed edges of g: an edge
// a->b contributes Omega^{-1}[rho][mu] with rho at a and mu at b.
Rational contract(const LabelledGraph& g, const std::vector<GradedPoly>& tensors, const SymplecticData& d) {
  std::vector<std::vector<std::size_t>> slots(static_cast<std::size_t>(g.n));
  Rational total = 0;
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t e, const Rational& w) {
    if (e == g.edges.size()) {
      Rational prod = w;
      for (int v = 0; v < g.n && prod != 0; ++v)
        prod *= taylor(tensors[static_cast<std::size_t>(v)], d.x, slots[static_cast<std::size_t>(v)]);
      total += prod;
      return;
    }
    auto a = static_cast<std::size_t>(g.edges[e].first - 1), b = static_cast<std::size_t>(g.edges[e].second - 1);
    for (std::size_t rho = 0; rho < d.x.size(); ++rho)
      for (std::size_t mu = 0; mu < d.x.size(); ++mu) {
        if (d.omega_inv[rho][mu] == 0) continue;
        slots[a].push_back(rho);
        slots[b].push_back(mu);
        rec(e + 1, w * d.omega_inv[rho][mu]);
        slots[b].pop_back();
        slots[a].pop_back();
      }
  };
  rec(0, Rational(1));
  return total;
}

// sum over permutations s of sgn(s) * fn(f_{s(1)}, ..., f_{s(k)})
Rational antisymmetrize(const std::vector<GradedPoly>& fs,
                        const std::function<Rational(const std::vector<GradedPoly>&)>& fn) {
  std::vector<int> p(fs.size());
  std::iota(p.begin(), p.end(), 0);
  Rational s = 0;
  do {
    std::vector<GradedPoly> q;
    for (int i : p) q.push_back(fs[static_cast<std::size_t>(i)]);
    s += fn(q) * perm_sign(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return s;
}

GradedPoly sum_lhs(const std::vector<CETerm>& terms, const SymplecticData& d, int N) {
  GradedPoly out;
  for (const auto& t : terms) out += evaluate_chain(t.chain, d, N) * t.coeff;
  return out;
}

}  // namespace

TEST_CASE("Poisson bracket basics") {
  auto d = standard_data(1);
  GradedPoly x1 = GradedPoly::gen(d.x[0]), x2 = GradedPoly::gen(d.x[1]);
  CHECK(poisson(x1, x2, d) == GradedPoly(1));
  CHECK(poisson(x2, x1, d) == GradedPoly(-1));
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    GradedPoly f = random_poly(rng, d.x, 3, 1, 4);
    CHECK(poisson(f, f, d).is_zero());
  }
}

TEST_CASE("graded Jacobi for the super bracket") {
  auto d = standard_data(1, 2, {{1, 1}, {1, 2}});
  Rng rng(2);
  for (int t = 0; t < 60; ++t) {
    GradedPoly f = random_entry(rng, d.alphabet(), 3, 3);
    GradedPoly g = random_entry(rng, d.alphabet(), 3, 3);
    GradedPoly h = random_entry(rng, d.alphabet(), 3, 3);
    int pf = *f.homogeneous_parity(), pg = *g.homogeneous_parity(), ph = *h.homogeneous_parity();
    // Even bracket: {f,g} = -(-1)^{|f||g|} {g,f}
    CHECK(poisson(f, g, d) == poisson(g, f, d) * ((pf * pg) % 2 ? 1 : -1));
    GradedPoly j = poisson(f, poisson(g, h, d), d) * ((pf * ph) % 2 ? -1 : 1) +
                   poisson(g, poisson(h, f, d), d) * ((pg * pf) % 2 ? -1 : 1) +
                   poisson(h, poisson(f, g, d), d) * ((ph * pg) % 2 ? -1 : 1);
    CHECK(j.is_zero());
  }
}

TEST_CASE("su(2) cubic element Poisson-commutes with itself") {
  auto d = standard_data(0, 3);
  GradedPoly f = cubic_element(su2(), d);
  CHECK(to_text(f) == "chi1*chi2*chi3");
  CHECK(poisson(f, f, d).is_zero());
}

TEST_CASE("CE boundary of a pair") {
  auto d = standard_data(1);
  Rng rng(3);
  GradedPoly f = homogeneous_of_degree(rng, d.x, 3, 3), g = homogeneous_of_degree(rng, d.x, 3, 3);
  auto b = ce_boundary({f, g}, d);
  REQUIRE(b.terms.size() == 1);
  CHECK(b.terms[0].coeff == 1);
  CHECK(b.terms[0].chain == std::vector<GradedPoly>{poisson(f, g, d)});
}

TEST_CASE("CE boundary squares to zero") {
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    int n = 1 + static_cast<int>(rng() % 3);
    bool super = t % 3 == 0;
    auto d = super ? standard_data(1, 2) : standard_data(n);
    int len = 2 + static_cast<int>(rng() % 4);
    std::vector<GradedPoly> chain;
    for (int k = 0; k < len; ++k)
      chain.push_back(super ? random_entry(rng, d.alphabet(), 3, 2) : random_poly(rng, d.x, 2, 2, 4));
    std::vector<CETerm> twice;
    for (const auto& t1 : ce_boundary(chain, d).terms)
      for (const auto& t2 : ce_boundary(t1.chain, d).terms) twice.push_back({t1.coeff * t2.coeff, t2.chain});
    CHECK(normal_form(twice).empty());
  }
}

TEST_CASE("CE boundary of four entries in antisymmetrized form") {
  auto d = standard_data(2);
  Rng rng(5);
  std::vector<GradedPoly> e;
  for (int k = 0; k < 4; ++k) e.push_back(homogeneous_of_degree(rng, d.x, 3, 4));
  std::vector<CETerm> expect;
  std::vector<int> p{0, 1, 2, 3};
  do {
    auto q = [&](int i) { return e[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])]; };
    expect.push_back({Rational(perm_sign(p), 4), {poisson(q(0), q(1), d), q(2), q(3)}});
  } while (std::next_permutation(p.begin(), p.end()));
  CHECK(normal_form(ce_boundary(e, d).terms) == normal_form(expect));
}

TEST_CASE("four cubics: coefficient patterns") {
  auto d = standard_data(2);
  Rng rng(6);
  std::vector<GradedPoly> e;
  for (int k = 0; k < 4; ++k) e.push_back(homogeneous_of_degree(rng, d.x, 3, 5));
  auto chain = graph::from_polynomial(evaluate_chain(e, d));
  Rational x_sum = antisymmetrize(e, [&](const auto& q) { return contract(graph::tetrahedron(), q, d); });
  Rational y_sum = antisymmetrize(e, [&](const auto& q) { return contract(graph::double_square(), q, d); });
  CHECK(x_sum != 0);
  CHECK(y_sum != 0);
  CHECK(chain.coefficient(graph::tetrahedron()) == x_sum / 24);
  CHECK(chain.coefficient(graph::double_square()) == y_sum / 16);

  // CE side: ({e,f},g,h) patterns on the 3-vertex class.
  auto lhs = graph::from_polynomial(sum_lhs(ce_boundary(e, d).terms, d, 4));
  Rational z_sum = antisymmetrize(e, [&](const auto& q) {
    return contract(graph::three_vertex_221(), {poisson(q[0], q[1], d), q[2], q[3]}, d);
  });
  CHECK(lhs.coefficient(graph::three_vertex_221()) == z_sum / 16);

  auto r = homomorphism_check(e, d);
  CHECK(r.equal);
  CHECK_FALSE(r.lhs.is_zero());
}

TEST_CASE("graph differential of the four-cubic chain") {
  auto d = standard_data(2);
  Rng rng(7);
  std::vector<GradedPoly> e;
  for (int k = 0; k < 4; ++k) e.push_back(homogeneous_of_degree(rng, d.x, 3, 5));
  auto chain = graph::from_polynomial(evaluate_chain(e, d));
  auto lhs = graph::from_polynomial(sum_lhs(ce_boundary(e, d).terms, d, 4));
  CHECK(graph::boundary(chain) == lhs);
}

TEST_CASE("homomorphism on random chains") {
  Rng rng(8);
  int nonzero = 0;
  for (int t = 0; t < 24; ++t) {
    int n = 1 + t % 3;
    auto d = standard_data(n);
    int l = 2 + static_cast<int>(rng() % 3);
    std::vector<GradedPoly> chain;
    for (int k = 0; k < l; ++k) chain.push_back(random_poly(rng, d.x, 3, 2, n == 3 ? 3 : 4));
    auto r = homomorphism_check(chain, d);
    CHECK(r.equal);
    if (!r.lhs.is_zero()) ++nonzero;
  }
  CHECK(nonzero > 0);
}

TEST_CASE("homomorphism on super chains") {
  auto d = standard_data(1, 2, {{1, 0}, {0, 1}});
  Rng rng(9);
  int nonzero = 0, mixed = 0;
  for (int t = 0; t < 40; ++t) {
    std::vector<GradedPoly> chain;
    bool has_odd = false;
    for (int k = 0; k < 4; ++k) {
      GradedPoly f = random_entry(rng, d.alphabet(), 3, 8, 3);
      has_odd = has_odd || *f.homogeneous_parity();
      chain.push_back(f);
    }
    auto r = homomorphism_check(chain, d);
    CHECK(r.equal);
    if (!r.lhs.is_zero()) {
      ++nonzero;
      if (has_odd) ++mixed;
    }
  }
  CHECK(nonzero >= 5);
  CHECK(mixed >= 1);
}

TEST_CASE("Poisson-commuting chains map to zero on both sides") {
  auto d = standard_data(2);
  GradedPoly x1 = GradedPoly::gen(d.x[0]), x3 = GradedPoly::gen(d.x[2]);
  std::vector<GradedPoly> chain{x1 * x1 * x3, x1 * x3 * x3 * 2, x1 * x1 * x1, x3 * x3};
  auto r = homomorphism_check(chain, d);
  CHECK(r.lhs.is_zero());
  CHECK(r.rhs.is_zero());
}

TEST_CASE("evaluation: single quadratic gives zero, graded symmetry, extraction round trip") {
  auto d = standard_data(1, 2);
  GradedPoly x1 = GradedPoly::gen(d.x[0]);
  CHECK(evaluate_chain({x1 * x1}, d).is_zero());
  Rng rng(10);
  for (int t = 0; t < 20; ++t) {
    std::vector<GradedPoly> chain;
    for (int k = 0; k < 3; ++k) chain.push_back(random_entry(rng, d.alphabet(), 3, 6));
    GradedPoly e = evaluate_chain(chain, d);
    CHECK(graph::to_polynomial(graph::from_polynomial(e), 3) == e);
    int p0 = *chain[0].homogeneous_parity() ? 1 : 0, p1 = *chain[1].homogeneous_parity() ? 1 : 0;
    std::swap(chain[0], chain[1]);
    int s = ((p0 + 1) * (p1 + 1)) % 2 ? -1 : 1;
    CHECK(evaluate_chain(chain, d) == e * s);
  }
}

TEST_CASE("chain validation") {
  auto d = standard_data(1);
  GradedPoly x1 = GradedPoly::gen(d.x[0]);
  CHECK_THROWS_AS(validate_chain({x1}, d), ValidationError);
  CHECK_THROWS_AS(validate_chain({x1 * x1 + 1}, d), ValidationError);
  auto ds = standard_data(1, 1);
  GradedPoly mixed = x1 * x1 + x1 * x1 * GradedPoly::gen(ds.odd[0]);
  CHECK_THROWS_AS(validate_chain({mixed}, ds), ValidationError);
  CHECK_THROWS_AS(SymplecticData({d.x[0], d.x[1]}, {{0, 1}, {1, 0}}), ValidationError);
}

TEST_CASE("su(2) theta cycle") {
  auto c = lie_algebra_cycle(su2(), 2);
  // (f,f) with f = chi1 chi2 chi3: one matching with sign -1 times the
  // vertex-ordering sign -1, on both label orders: 2 t1 t2 t12^3, which is the
  // polynomial of the theta graph; f_abc f^abc / 3! = 1.
  GradedPoly expect = GradedPoly::gen(graph::vertex_var(1)) * GradedPoly::gen(graph::vertex_var(2)) *
                      GradedPoly::term(2, Monomial::of(graph::edge_var(1, 2), 3));
  CHECK(expect == graph::to_polynomial(graph::theta()));
  CHECK(c.coefficient(graph::theta()) == 1);
  CHECK(c.terms().size() == 1);
  CHECK(graph::boundary(c).is_zero());
}

TEST_CASE("su(2) four-vertex cycle is closed") {
  auto c = lie_algebra_cycle(su2(), 4);
  CHECK(c.coefficient(graph::tetrahedron()) != 0);
  CHECK(c.coefficient(graph::double_square()) != 0);
  CHECK(graph::boundary(c).is_zero());
}

TEST_CASE("Lie algebra input validation") {
  LieAlgebra ab;
  ab.dim = 2;
  ab.f.assign(8, Rational(0));
  ab.eta = identity_matrix(2);
  CHECK(lie_algebra_cycle(ab, 2).is_zero());

  // Two so(3)-like triples sharing one direction break Jacobi.
  LieAlgebra bad;
  bad.dim = 5;
  bad.f.assign(125, Rational(0));
  bad.eta = identity_matrix(5);
  auto set = [&](int a, int b, int c, int v) {
    int idx[3] = {a, b, c};
    std::vector<int> p{0, 1, 2};
    do {
      bad.f[static_cast<std::size_t>((idx[p[0]] * 5 + idx[p[1]]) * 5 + idx[p[2]])] = v * perm_sign(p);
    } while (std::next_permutation(p.begin(), p.end()));
  };
  set(0, 1, 2, 1);
  set(0, 3, 4, 1);
  bool threw = false;
  try {
    validate_lie_algebra(bad);
  } catch (const ValidationError& e) {
    threw = true;
    CHECK(std::string(e.what()).find("Jacobi") != std::string::npos);
    CHECK(std::string(e.what()).find("(") != std::string::npos);
  }
  CHECK(threw);
  CHECK_THROWS_AS(lie_algebra_cycle(bad, 2), ValidationError);
  CHECK_THROWS_AS(lie_algebra_cycle(su2(), 3), ValidationError);
}

TEST_CASE("symplectic data JSON round trip") {
  auto d = standard_data(1, 2, {{1, 0}, {0, 2}});
  auto back = data_from_json(data_to_json(d));
  CHECK(back.omega == d.omega);
  CHECK(back.eta == d.eta);
  CHECK(back.x == d.x);
  CHECK(back.odd == d.odd);
  auto std2 = data_from_json(Json::parse(R"({"n": 2})"));
  CHECK(std2.x.size() == 4);
}
