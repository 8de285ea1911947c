#include <doctest.h>

#include "gbv/errors.hpp"
#include "gbv/random_inputs.hpp"
#include "gbv/wick.hpp"

#include <functional>

using namespace gbv;
using namespace gbv::wick;
using graph::LabelledGraph;

namespace {

Generator X(int i) { return Generator::make("x" + std::to_string(i), 0); }

std::vector<Generator> coords(int d) {
  std::vector<Generator> out;
  for (int i = 1; i <= d; ++i) out.push_back(X(i));
  return out;
}

GradedPoly xpow(int i, unsigned e, const Rational& c = 1) { return GradedPoly::term(c, Monomial::of(X(i), e)); }

QuadraticKernel unit_1d() { return QuadraticKernel{{{Rational(1)}}}; }

// Moment via the generating function: derivatives of exp(J K J / 2) at 0,
// using source generators J_a.
Rational generating_function_oracle(const std::vector<int>& idx, const Matrix& k) {
  std::vector<Generator> J;
  for (std::size_t a = 0; a < k.size(); ++a) J.push_back(Generator::make("J" + std::to_string(a + 1), 0));
  GradedPoly quad;
  for (std::size_t a = 0; a < k.size(); ++a)
    for (std::size_t b = 0; b < k.size(); ++b)
      quad += GradedPoly::gen(J[a]) * GradedPoly::gen(J[b]) * (k[a][b] / 2);
  GradedPoly e = 1, power = 1;
  for (std::size_t m = 1; m <= idx.size() / 2; ++m) {
    power = power * quad;
    e += power * (Rational(1) / Rational(factorial(static_cast<unsigned>(m))));
  }
  for (int i : idx) e = e.derive(J[static_cast<std::size_t>(i)]);
  return e.constant_term();
}

Matrix random_symmetric(Rng& rng, std::size_t d) {
  Matrix m = zero_matrix(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a; b < d; ++b) m[a][b] = m[b][a] = (rng() % 3 == 0) ? Rational(0) : random_rational(rng);
  return m;
}

// Leg-level Wick sum with explicit odd-leg permutation signs.
GradedPoly brute_lattice(const std::vector<GradedPoly>& fs, const LatticeKernel& k) {
  struct Leg {
    int copy;
    bool odd;
    std::size_t idx;
  };
  GradedPoly out;
  std::vector<const Monomial*> pick(fs.size());
  std::vector<Rational> coeff(fs.size());
  std::function<void(std::size_t)> choose = [&](std::size_t v) {
    if (v < fs.size()) {
      for (const auto& [m, c] : fs[v].terms()) {
        pick[v] = &m;
        coeff[v] = c;
        choose(v + 1);
      }
      return;
    }
    std::vector<Leg> legs;
    Rational c = 1;
    for (std::size_t f = 0; f < fs.size(); ++f) {
      c *= coeff[f];
      for (const auto& [g, e] : pick[f]->factors()) {
        bool odd = g.odd();
        const auto& list = odd ? k.odd : k.even;
        std::size_t idx = static_cast<std::size_t>(std::find(list.begin(), list.end(), g) - list.begin());
        for (unsigned r = 0; r < e; ++r) legs.push_back({static_cast<int>(f) + 1, odd, idx});
      }
    }
    if (legs.size() % 2) return;
    std::vector<bool> used(legs.size(), false);
    std::vector<std::size_t> order;
    std::function<void(GradedPoly)> rec = [&](GradedPoly w) {
      auto first = std::find(used.begin(), used.end(), false);
      if (first == used.end()) {
        std::vector<Generator> seq;
        std::vector<std::size_t> odd_positions;
        for (std::size_t p : order)
          if (legs[p].odd) odd_positions.push_back(p);
        int inv = 0;
        for (std::size_t a = 0; a < odd_positions.size(); ++a)
          for (std::size_t b = a + 1; b < odd_positions.size(); ++b)
            if (odd_positions[a] > odd_positions[b]) ++inv;
        out += w * ((inv % 2) ? Rational(-c) : c);
        return;
      }
      auto a = static_cast<std::size_t>(first - used.begin());
      used[a] = true;
      for (std::size_t b = a + 1; b < legs.size(); ++b) {
        if (used[b] || legs[a].odd != legs[b].odd || legs[a].copy == legs[b].copy) continue;
        const Matrix& kin = legs[a].odd ? k.odd_inverse : k.even_inverse;
        Rational val = kin[legs[a].idx][legs[b].idx];
        if (val == 0) continue;
        int i = legs[a].copy, j = legs[b].copy;
        GradedPoly t = i < j ? GradedPoly::gen(graph::edge_var(i, j)) : -GradedPoly::gen(graph::edge_var(j, i));
        used[b] = true;
        order.push_back(a);
        order.push_back(b);
        rec(w * t * val);
        order.pop_back();
        order.pop_back();
        used[b] = false;
      }
      used[a] = false;
    };
    rec(GradedPoly(1));
  };
  choose(0);
  return out;
}

Matrix standard_omega(std::size_t n) {
  Matrix o = zero_matrix(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    o[2 * i][2 * i + 1] = 1;
    o[2 * i + 1][2 * i] = -1;
  }
  return o;
}

}  // namespace

TEST_CASE("one-dimensional moments are double factorials") {
  Integer df = 1;
  for (int p = 1; p <= 6; ++p) {
    df *= 2 * p - 1;
    auto m = gaussian_moment(std::vector<int>(static_cast<std::size_t>(2 * p), 0), unit_1d());
    REQUIRE(m.size() == 1);
    CHECK(m.begin()->first == p);
    CHECK(m.begin()->second == Rational(df));
  }
  CHECK(to_text(gaussian_moment({0, 0, 0, 0, 0, 0}, unit_1d())) == "15*alpha^-3");
}

TEST_CASE("odd leg count gives zero") {
  CHECK(is_zero(gaussian_moment({0, 0, 0}, unit_1d())));
  CHECK(is_zero(correlator({xpow(1, 3)}, coords(1), unit_1d())));
}

TEST_CASE("four-point moment is the three-pairing sum") {
  Rng rng(11);
  Matrix k = random_symmetric(rng, 3);
  QuadraticKernel qk{k};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          auto A = static_cast<std::size_t>(a), B = static_cast<std::size_t>(b);
          auto C = static_cast<std::size_t>(c), D = static_cast<std::size_t>(d);
          Rational expect = k[A][B] * k[C][D] + k[A][C] * k[B][D] + k[A][D] * k[B][C];
          auto m = gaussian_moment({a, b, c, d}, qk);
          CHECK((m.empty() ? Rational(0) : m.at(2)) == expect);
        }
}

TEST_CASE("moments agree with the generating-function oracle") {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t d = 1 + rng() % 3;
    Matrix k = random_symmetric(rng, d);
    std::vector<int> idx;
    std::size_t legs = 2 * (1 + rng() % 3);
    for (std::size_t i = 0; i < legs; ++i) idx.push_back(static_cast<int>(rng() % d));
    auto m = gaussian_moment(idx, QuadraticKernel{k});
    CHECK((m.empty() ? Rational(0) : m.at(static_cast<int>(legs / 2))) == generating_function_oracle(idx, k));
  }
}

TEST_CASE("moments are invariant under index permutation") {
  Rng rng(8);
  QuadraticKernel k{random_symmetric(rng, 3)};
  std::vector<int> idx{0, 1, 1, 2, 2, 0};
  auto ref = gaussian_moment(idx, k);
  for (int t = 0; t < 20; ++t) {
    std::shuffle(idx.begin(), idx.end(), rng);
    CHECK(gaussian_moment(idx, k) == ref);
  }
}

TEST_CASE("kernel from a quadratic form and index validation") {
  auto k = QuadraticKernel::from_quadratic_form({{2, 1}, {1, 2}});
  CHECK(k.inverse_pairing[0][0] == Rational(2, 3));
  CHECK(k.inverse_pairing[0][1] == Rational(-1, 3));
  CHECK_THROWS_AS(gaussian_moment({0, 2}, k), ValidationError);
  CHECK_THROWS_AS(QuadraticKernel::from_quadratic_form({{1, 1}, {1, 1}}), ValidationError);
  CHECK_THROWS_AS(gaussian_moment(std::vector<int>(18, 0), unit_1d()), CapExceeded);
}

TEST_CASE("cubic pair and cubic-quintic correlators") {
  auto c1 = coords(1);
  GradedPoly v3 = xpow(1, 3, Rational(1, 6));
  GradedPoly v5 = xpow(1, 5, Rational(1, 120));
  auto a = correlator({v3, v3}, c1, unit_1d(), {{0, 1}});
  CHECK(a == AlphaSeries{{3, Rational(5, 24)}});
  auto b = correlator({v3, v5}, c1, unit_1d());
  CHECK(b == AlphaSeries{{4, Rational(7, 48)}});
  CHECK(matching_count(6) == 15);
  CHECK(matching_count(8) == 105);
  CHECK(matching_count(7) == 0);
}

TEST_CASE("diagram classes of the cubic pair") {
  auto d = diagram_expansion({xpow(1, 3), xpow(1, 3)}, coords(1), unit_1d(), {{0, 1}});
  REQUIRE(d.size() == 2);
  std::map<long, long> count_to_aut;
  for (const auto& c : d) count_to_aut[c.count] = c.symmetry.aut();
  CHECK(count_to_aut == std::map<long, long>{{6, 12}, {9, 8}});
  for (const auto& c : d) CHECK(c.count * c.symmetry.aut() == 72);
}

TEST_CASE("diagram classes of the cubic-quintic pair") {
  auto d = diagram_expansion({xpow(1, 3), xpow(1, 5)}, coords(1), unit_1d());
  REQUIRE(d.size() == 2);
  std::map<long, long> count_to_aut;
  for (const auto& c : d) count_to_aut[c.count] = c.symmetry.aut();
  CHECK(count_to_aut == std::map<long, long>{{60, 12}, {45, 16}});
}

TEST_CASE("single quadratic vertex is one loop") {
  auto d = diagram_expansion({xpow(1, 2)}, coords(1), unit_1d());
  REQUIRE(d.size() == 1);
  CHECK(d[0].count == 1);
  CHECK(d[0].symmetry.aut() == 2);
  CHECK(d[0].symmetry.L == 2);
}

TEST_CASE("symmetry factors of the named graphs") {
  auto t = symmetry_factor(graph::tetrahedron());
  CHECK(t.V == 24);
  CHECK(t.P == 1);
  auto s = symmetry_factor(graph::double_square());
  CHECK(s.V == 4);
  CHECK(s.P == 4);
  auto th = symmetry_factor(graph::theta());
  CHECK(th.aut() == 12);
}

TEST_CASE("diagram expansion resums to the correlator") {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    int d = 1 + static_cast<int>(rng() % 2);
    auto c = coords(d);
    QuadraticKernel k{random_symmetric(rng, static_cast<std::size_t>(d))};
    std::vector<GradedPoly> verts;
    int nv = 1 + static_cast<int>(rng() % 3);
    for (int v = 0; v < nv; ++v) verts.push_back(random_poly(rng, c, 2, 1, 3));
    std::vector<std::vector<int>> groups;
    if (nv >= 2 && rng() % 2) {
      verts[1] = verts[0];
      groups.push_back({0, 1});
    }
    auto classes = diagram_expansion(verts, c, k, groups);
    CHECK(resum(classes, groups) == correlator(verts, c, k, groups));
  }
}

TEST_CASE("valence-one vertices reduce to pair products") {
  Rng rng(4);
  auto c = coords(3);
  QuadraticKernel k{random_symmetric(rng, 3)};
  std::vector<std::vector<Rational>> a(4, std::vector<Rational>(3));
  std::vector<GradedPoly> verts;
  for (auto& row : a) {
    GradedPoly v;
    for (std::size_t mu = 0; mu < 3; ++mu) {
      row[mu] = random_rational(rng);
      v += GradedPoly::gen(c[mu]) * row[mu];
    }
    verts.push_back(v);
  }
  auto pairf = [&](std::size_t i, std::size_t j) {
    Rational s = 0;
    for (std::size_t mu = 0; mu < 3; ++mu)
      for (std::size_t nu = 0; nu < 3; ++nu) s += a[i][mu] * k.inverse_pairing[mu][nu] * a[j][nu];
    return s;
  };
  Rational expect = pairf(0, 1) * pairf(2, 3) + pairf(0, 2) * pairf(1, 3) + pairf(0, 3) * pairf(1, 2);
  CHECK(correlator(verts, c, k) == AlphaSeries{{2, expect}});
}

TEST_CASE("lattice correlator of two linear functions") {
  auto c = coords(2);
  auto k = lattice_kernel(c, standard_omega(1));
  GradedPoly f1 = GradedPoly::gen(c[0]) * 2 + GradedPoly::gen(c[1]) * 3;
  GradedPoly f2 = GradedPoly::gen(c[0]) * 5 - GradedPoly::gen(c[1]);
  // a Omega^{-1} b with Omega^{-1} = [[0,-1],[1,0]]: -2*(-1) + 3*5 = 17
  auto w = lattice_correlator({f1, f2}, k);
  CHECK(w == GradedPoly::gen(graph::edge_var(1, 2)) * 17);
  CHECK(lattice_correlator({f1, f2 * GradedPoly::gen(c[0])}, k).is_zero());
}

TEST_CASE("lattice correlator rejects bad kernels") {
  auto c = coords(2);
  CHECK_THROWS_AS(lattice_kernel(c, {{0, 1}, {1, 0}}), ValidationError);
  CHECK_THROWS_AS(lattice_kernel(c, {{0, 0}, {0, 0}}), ValidationError);
}

TEST_CASE("lattice correlator agrees with leg-level matching") {
  Rng rng(99);
  auto x = coords(4);
  std::vector<Generator> psi{Generator::make("psi1", 1), Generator::make("psi2", 1)};
  for (int trial = 0; trial < 25; ++trial) {
    bool super = trial % 2;
    Matrix omega = standard_omega(super ? 1 : 2);
    std::vector<Generator> xs(x.begin(), x.begin() + static_cast<long>(omega.size()));
    LatticeKernel k = super ? lattice_kernel(xs, omega, psi, {{1, 1}, {1, 2}}) : lattice_kernel(xs, omega);
    std::vector<Generator> alphabet = xs;
    if (super) alphabet.insert(alphabet.end(), psi.begin(), psi.end());
    int l = 2 + static_cast<int>(rng() % 2);
    std::vector<GradedPoly> fs;
    for (int v = 0; v < l; ++v) fs.push_back(random_poly(rng, alphabet, 3, 1, 3));
    CHECK(lattice_correlator(fs, k) == brute_lattice(fs, k));
  }
}

TEST_CASE("lattice correlator output has no same-copy edges") {
  Rng rng(3);
  auto x = coords(2);
  auto k = lattice_kernel(x, standard_omega(1));
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<GradedPoly> fs;
    for (int v = 0; v < 3; ++v) fs.push_back(random_poly(rng, x, 3, 2, 3));
    auto w = lattice_correlator(fs, k);
    for (const auto& [m, c] : w.terms())
      for (const auto& [g, e] : m.factors()) {
        auto lbl = graph::parse_graph_var(g);
        REQUIRE(lbl);
        CHECK(lbl->first != lbl->second);
      }
  }
}
