#include <doctest.h>

#include "gbv/errors.hpp"
#include "gbv/graph_complex.hpp"
#include "gbv/random_inputs.hpp"

#include <algorithm>
#include <numeric>

using namespace gbv;
using namespace gbv::graph;

namespace {

// Sum over all (not only injective) label assignments, built with generic
// polynomial multiplication; reversed edges pick up t_ji = -t_ij.
GradedPoly polynomial_oracle(const LabelledGraph& g, int N) {
  GradedPoly out;
  std::vector<int> l(static_cast<std::size_t>(g.n), 1);
  while (true) {
    GradedPoly term(1);
    for (int v = 0; v < g.n; ++v) term = term * GradedPoly::gen(vertex_var(l[static_cast<std::size_t>(v)]));
    for (const auto& [a, b] : g.edges) {
      int la = l[static_cast<std::size_t>(a - 1)], lb = l[static_cast<std::size_t>(b - 1)];
      if (la == lb) {
        term = GradedPoly();
        break;
      }
      term = term * (la < lb ? GradedPoly::gen(edge_var(la, lb)) : -GradedPoly::gen(edge_var(lb, la)));
    }
    out += term;
    int k = 0;
    while (k < g.n && ++l[static_cast<std::size_t>(k)] > N) l[static_cast<std::size_t>(k++)] = 1;
    if (k == g.n) break;
  }
  return out;
}

// Derivative recipe applied literally: edge derivatives first, then d/dt_1,
// then d/dt_2, ..., evaluate at zero, divide by #V #P.
Rational extraction_oracle(const LabelledGraph& g, const GradedPoly& p) {
  GradedPoly r = p;
  for (const auto& [a, b] : g.edges)
    r = a < b ? r.derive(edge_var(a, b)) : -r.derive(edge_var(b, a));
  for (int v = 1; v <= g.n; ++v) r = r.derive(vertex_var(v));
  long V = canonical_shape(g, std::vector<int>(static_cast<std::size_t>(g.n), 0)).automorphisms;
  std::map<std::pair<int, int>, int> mult;
  for (auto [a, b] : g.edges) ++mult[{std::min(a, b), std::max(a, b)}];
  Integer P = 1;
  for (const auto& [e, m] : mult) P *= factorial(static_cast<unsigned>(m));
  return r.constant_term() / (Rational(P) * V);
}

LabelledGraph permuted(const LabelledGraph& g, const std::vector<int>& p) {
  std::vector<std::pair<int, int>> e;
  for (auto [a, b] : g.edges) e.emplace_back(p[static_cast<std::size_t>(a - 1)], p[static_cast<std::size_t>(b - 1)]);
  return LabelledGraph(g.n, e);
}

const std::vector<LabelledGraph>& all_classes() {
  static const auto classes = enumerate_classes(5, 8);
  return classes;
}

}  // namespace

TEST_CASE("canonical form: edge flip") {
  auto a = canonical_form(LabelledGraph(2, {{1, 2}}));
  auto b = canonical_form(LabelledGraph(2, {{2, 1}}));
  CHECK(a.cls.canonical == b.cls.canonical);
  CHECK(a.sign == -b.sign);
  CHECK_FALSE(a.cls.is_zero);
}

TEST_CASE("canonical form: triangle relabelled by a transposition with one flip") {
  LabelledGraph tri(3, {{1, 2}, {2, 3}, {1, 3}});
  // Swap 1 and 2: edges 2->1, 1->3, 2->3; flip 2->1 back to 1->2.
  LabelledGraph other(3, {{1, 2}, {1, 3}, {2, 3}});
  auto a = canonical_form(tri);
  auto b = canonical_form(other);
  CHECK(a.cls.canonical == b.cls.canonical);
  CHECK(a.sign == b.sign);
}

TEST_CASE("canonical form: parallel-edge classes") {
  CHECK_FALSE(canonical_form(LabelledGraph(2, {{1, 2}})).cls.is_zero);
  CHECK_FALSE(canonical_form(theta()).cls.is_zero);
  CHECK(canonical_form(LabelledGraph(2, {{1, 2}, {1, 2}})).cls.is_zero);
  CHECK(canonical_form(LabelledGraph(1, {{1, 1}})).cls.is_zero);
}

TEST_CASE("canonical form: cap") {
  CHECK_THROWS_AS(canonical_form(LabelledGraph(9, {}), 8), CapExceeded);
}

TEST_CASE("canonical form is idempotent and relabelling invariant") {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> nv(2, 6), ne(0, 8);
    int n = nv(rng);
    std::uniform_int_distribution<int> lab(1, n);
    std::vector<std::pair<int, int>> e;
    int m = ne(rng);
    while (static_cast<int>(e.size()) < m) {
      int a = lab(rng), b = lab(rng);
      if (a != b) e.emplace_back(a, b);
    }
    LabelledGraph g(n, e);
    auto c = canonical_form(g);
    auto again = canonical_form(c.cls.canonical);
    CHECK(again.cls.canonical == c.cls.canonical);
    if (!c.cls.is_zero) CHECK(again.sign == 1);
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    std::shuffle(p.begin(), p.end(), rng);
    auto h = canonical_form(permuted(g, p));
    CHECK(h.cls.canonical == c.cls.canonical);
    CHECK(h.cls.is_zero == c.cls.is_zero);
  }
}

TEST_CASE("boundary of a single edge") {
  GraphChain c;
  c.add(LabelledGraph(2, {{1, 2}}), 1);
  GraphChain expect;
  expect.add(LabelledGraph(1, {}), -1);
  CHECK(boundary(c) == expect);
  GraphChain rev;
  rev.add(LabelledGraph(2, {{2, 1}}), 1);
  GraphChain flipped;
  flipped.add(LabelledGraph(1, {}), 1);
  CHECK(boundary(rev) == flipped);
}

TEST_CASE("boundary golden values") {
  auto three = three_vertex_221();
  auto d1 = boundary(tetrahedron());
  auto d2 = boundary(double_square());
  CHECK(d1.terms().size() == 1);
  CHECK(d2.terms().size() == 1);
  CHECK(d1.coefficient(three) == 6);
  CHECK(d2.coefficient(three) == -2);

  GraphCochain three_dual{{canonical_form(three).cls.canonical, canonical_form(three).sign}};
  CHECK(pair(three_dual, d1) == 6);
  CHECK(pair(three_dual, d2) == -2);
}

TEST_CASE("pairing with own dual") {
  for (const auto& g : {tetrahedron(), double_square(), theta()}) {
    GraphChain c;
    c.add(g, 1);
    auto r = canonical_form(g);
    GraphCochain dual{{r.cls.canonical, r.sign}};
    CHECK(pair(dual, c) == 1);
  }
  GraphChain c;
  c.add(theta(), 1);
  GraphCochain three{{canonical_form(three_vertex_221()).cls.canonical, 1}};
  CHECK(pair(three, c) == 0);
  CHECK_THROWS_AS(pair(three, c, true), ValidationError);
}

TEST_CASE("to_polynomial examples") {
  auto p = to_polynomial(LabelledGraph(2, {{1, 2}}));
  CHECK(p == 2 * (GradedPoly::gen(vertex_var(1)) * GradedPoly::gen(vertex_var(2)) * GradedPoly::gen(edge_var(1, 2))));
  CHECK(to_polynomial(LabelledGraph(2, {{1, 2}, {1, 2}})).is_zero());
  CHECK(to_polynomial(tetrahedron()) == polynomial_oracle(tetrahedron(), 4));
}

TEST_CASE("to_polynomial agrees with the all-assignments oracle") {
  for (const auto& g : {tetrahedron(), double_square(), three_vertex_221(), theta(),
                        LabelledGraph(3, {{2, 1}, {3, 1}}), LabelledGraph(3, {{1, 2}, {1, 2}, {2, 3}})}) {
    CHECK(to_polynomial(g) == polynomial_oracle(g, g.n));
    CHECK(to_polynomial(g, g.n + 1) == polynomial_oracle(g, g.n + 1));
  }
}

TEST_CASE("extraction of the named graphs") {
  CHECK(extract_coefficient(tetrahedron(), to_polynomial(tetrahedron())) == 1);
  CHECK(extract_coefficient(double_square(), to_polynomial(double_square())) == 1);
  CHECK(canonical_shape(tetrahedron(), {0, 0, 0, 0}).automorphisms == 24);
  CHECK(canonical_shape(double_square(), {0, 0, 0, 0}).automorphisms == 4);
  CHECK(extraction_oracle(tetrahedron(), to_polynomial(tetrahedron())) == 1);
}

TEST_CASE("operator-form differential golden polynomials") {
  auto three_poly = to_polynomial(three_vertex_221(), 4);
  auto d1 = boundary_operator_poly(to_polynomial(tetrahedron()), 4, 4);
  auto d2 = boundary_operator_poly(to_polynomial(double_square()), 4, 4);
  CHECK(-2 * d1 == -12 * three_poly);
  CHECK(-2 * d2 == 4 * three_poly);
  CHECK(extract_coefficient(three_vertex_221(), d1) == 6);
  CHECK(extract_coefficient(three_vertex_221(), d2) == -2);
}

TEST_CASE("exhaustive: boundary squares to zero") {
  const auto& classes = all_classes();
  CHECK(classes.size() > 100);
  for (const auto& g : classes) {
    auto d = boundary(g);
    CHECK(boundary(d).is_zero());
  }
}

TEST_CASE("exhaustive: combinatorial and operator-form boundaries agree") {
  for (const auto& g : all_classes()) {
    if (g.n < 2) continue;
    auto lhs = boundary_operator_poly(to_polynomial(g), g.n, g.n);
    auto rhs = to_polynomial(boundary(g), g.n);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("exhaustive: extraction is dual to encoding") {
  const auto& classes = all_classes();
  std::map<std::pair<int, std::size_t>, std::vector<LabelledGraph>> groups;
  for (const auto& g : classes) groups[{g.n, g.edges.size()}].push_back(g);
  for (const auto& [key, gs] : groups)
    for (const auto& h : gs) {
      auto p = to_polynomial(h);
      for (const auto& g : gs) CHECK(extract_coefficient(g, p) == (g == h ? 1 : 0));
    }
}

TEST_CASE("extraction matches the derivative recipe") {
  const auto& classes = all_classes();
  for (std::size_t k = 0; k < classes.size(); k += 7) {
    const auto& g = classes[k];
    auto p = to_polynomial(g) + 3 * to_polynomial(g, g.n + 1);
    CHECK(extract_coefficient(g, p) == extraction_oracle(g, p));
  }
}

TEST_CASE("from_polynomial round trip") {
  GraphChain c;
  c.add(tetrahedron(), Rational(1, 3));
  c.add(double_square(), -2);
  auto p = to_polynomial(c);
  CHECK(from_polynomial(p) == c);
}

TEST_CASE("relabel") {
  auto p = GradedPoly::gen(vertex_var(2)) * GradedPoly::gen(edge_var(1, 2));
  auto q = relabel(p, {{2, 3}, {1, 4}});
  CHECK(q == -(GradedPoly::gen(vertex_var(3)) * GradedPoly::gen(edge_var(3, 4))));
  CHECK(relabel(p, {{2, 1}}).is_zero());
}

TEST_CASE("graph JSON round trip and validation") {
  GraphChain c;
  c.add(tetrahedron(), Rational(1, 3));
  auto j = chain_to_json(c);
  CHECK(chain_from_json(j) == c);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"n":2,"edges":[[1,3]]})")), ValidationError);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"edges":[]})")), ValidationError);
}
