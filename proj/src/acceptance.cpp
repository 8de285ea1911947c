#include "gbv/acceptance.hpp"

#include "gbv/bv_calculus.hpp"
#include "gbv/errors.hpp"
#include "gbv/frobenius.hpp"
#include "gbv/graph_complex.hpp"
#include "gbv/kontsevich.hpp"
#include "gbv/random_inputs.hpp"
#include "gbv/wick.hpp"

#include <functional>
#include <numeric>
#include <sstream>

namespace gbv::acceptance {

namespace {

using graph::LabelledGraph;

class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++total_;
    if (!ok && first_failure_.empty()) first_failure_ = what;
    if (!ok) ++failed_;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : ", ") + s; }

  CriterionResult result(int id, std::string title) const {
    CriterionResult r;
    r.id = id;
    r.title = std::move(title);
    r.passed = failed_ == 0 && total_ > 0;
    r.checks = total_;
    if (failed_ > 0)
      r.detail = std::to_string(failed_) + " of " + std::to_string(total_) + " checks failed, first: " + first_failure_;
    else
      r.detail = std::to_string(total_) + " exact checks" + (notes_.empty() ? "" : "; " + notes_);
    return r;
  }

 private:
  long total_ = 0;
  long failed_ = 0;
  std::string first_failure_;
  std::string notes_;
};

int sgn(long e) { return ((e % 2) + 2) % 2 ? -1 : 1; }

Generator coord(int i) { return Generator::make("x" + std::to_string(i), 0); }

GradedPoly xpow(unsigned e, const Rational& c = 1) { return GradedPoly::term(c, Monomial::of(coord(1), e)); }

wick::QuadraticKernel unit_kernel() { return wick::QuadraticKernel{{{Rational(1)}}}; }

Matrix random_symmetric(Rng& rng, std::size_t d) {
  Matrix m = zero_matrix(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a; b < d; ++b) m[a][b] = m[b][a] = (rng() % 3 == 0) ? Rational(0) : random_rational(rng);
  return m;
}

Matrix random_positive(Rng& rng, int n) {
  auto N = static_cast<std::size_t>(n);
  Matrix a(N, std::vector<Rational>(N));
  for (auto& row : a)
    for (auto& v : row) v = random_rational(rng);
  return matadd(matmul(transpose(a), a), identity_matrix(N));
}

GradedPoly random_hom(Rng& rng, const std::vector<Generator>& alphabet, unsigned max_factors) {
  GradedPoly p;
  while (p.is_zero()) p = random_homogeneous(rng, alphabet, 3, max_factors);
  return p;
}

// ---- 1 ------------------------------------------------------------------

CriterionResult gaussian_values() {
  Tally t;
  Integer df = 1;
  for (int p = 1; p <= 6; ++p) {
    df *= 2 * p - 1;
    auto m = wick::gaussian_moment(std::vector<int>(static_cast<std::size_t>(2 * p), 0), unit_kernel());
    t.check(m == wick::AlphaSeries{{p, Rational(df)}}, "<x^" + std::to_string(2 * p) + ">");
  }
  std::vector<Generator> c{coord(1)};
  auto v3 = xpow(3, Rational(1, 6)), v5 = xpow(5, Rational(1, 120));
  auto a = wick::correlator({v3, v3}, c, unit_kernel(), {{0, 1}});
  t.check(a == wick::AlphaSeries{{3, Rational(5, 24)}}, "<x^3 x^3>/(2 (3!)^2) = 5/24 alpha^-3");
  auto b = wick::correlator({v3, v5}, c, unit_kernel());
  t.check(b == wick::AlphaSeries{{4, Rational(7, 48)}}, "<x^3 x^5>/(3! 5!) = 7/48 alpha^-4");
  t.check(wick::matching_count(6) == 15, "15 matchings of 6 legs");
  t.check(wick::matching_count(8) == 105, "105 matchings of 8 legs");
  return t.result(1, "Gaussian golden values");
}

// ---- 2 ------------------------------------------------------------------

CriterionResult symmetry_factors() {
  Tally t;
  std::vector<Generator> c{coord(1)};
  auto pattern = [&](const std::vector<wick::DiagramClass>& d) {
    std::map<long, long> out;
    for (const auto& k : d) out[k.count] = k.symmetry.aut();
    return out;
  };
  auto cubic = wick::diagram_expansion({xpow(3), xpow(3)}, c, unit_kernel(), {{0, 1}});
  t.check(pattern(cubic) == std::map<long, long>{{6, 12}, {9, 8}}, "cubic pair classes |Aut| 12, 8");
  auto mixed = wick::diagram_expansion({xpow(3), xpow(5)}, c, unit_kernel());
  t.check(pattern(mixed) == std::map<long, long>{{60, 12}, {45, 16}}, "cubic-quintic classes |Aut| 12, 16");
  auto tet = wick::symmetry_factor(graph::tetrahedron());
  t.check(tet.V == 24 && tet.P == 1, "tetrahedron #V = 24, #P = 1");
  auto sq = wick::symmetry_factor(graph::double_square());
  t.check(sq.V == 4 && sq.P == 4, "double square #V = 4, #P = 4");
  return t.result(2, "symmetry factors");
}

// ---- 3 ------------------------------------------------------------------

CriterionResult graph_complex() {
  Tally t;
  auto classes = graph::enumerate_classes(5, 8);
  for (const auto& g : classes) {
    auto d = graph::boundary(g);
    t.check(graph::boundary(d).is_zero(), "boundary squared on a class");
    if (g.n >= 2)
      t.check(graph::boundary_operator_poly(graph::to_polynomial(g), g.n, g.n) == graph::to_polynomial(d, g.n),
              "operator form against combinatorial boundary");
  }
  auto three = graph::three_vertex_221();
  t.check(graph::boundary(graph::tetrahedron()).coefficient(three) == 6, "three-vertex class in the tetrahedron boundary: 6");
  t.check(graph::boundary(graph::double_square()).coefficient(three) == -2, "three-vertex class in the double-square boundary: -2");
  auto three_poly = graph::to_polynomial(three, 4);
  auto d1 = graph::boundary_operator_poly(graph::to_polynomial(graph::tetrahedron()), 4, 4);
  auto d2 = graph::boundary_operator_poly(graph::to_polynomial(graph::double_square()), 4, 4);
  t.check(-2 * d1 == -12 * three_poly, "operator form on the tetrahedron polynomial");
  t.check(-2 * d2 == 4 * three_poly, "operator form on the double-square polynomial");
  t.note(std::to_string(classes.size()) + " classes");
  return t.result(3, "graph complex");
}

// ---- 4 ------------------------------------------------------------------

CriterionResult bv_identities(std::uint64_t seed) {
  using namespace bv;
  Tally t;
  Rng rng(seed * 1000 + 4);
  int with_density = 0;
  for (int i = 0; i < 200; ++i) {
    int n = 1 + i % 3;
    GradedPoly sigma = i % 2 ? random_poly(rng, BVSpace::make(n).x, 2, 1, 3) : GradedPoly();
    if (!sigma.is_zero()) ++with_density;
    BVSpace s = BVSpace::make(n, sigma);
    auto mv = [](GradedPoly p) { return MultivectorFunction{std::move(p), 0}; };
    auto br = [&](const GradedPoly& a, const GradedPoly& b) { return schouten(s, mv(a), mv(b)).poly; };
    auto lap = [&](const GradedPoly& a) { return odd_laplacian(s, mv(a)).poly; };

    GradedPoly h = random_poly(rng, s.multivector_alphabet(), 4, 0, 4);
    t.check(lap(lap(h)).is_zero(), "Delta squared");

    GradedPoly f = random_poly(rng, s.multivector_alphabet(), 3, 1, 4);
    GradedPoly g = random_poly(rng, s.multivector_alphabet(), 3, 1, 4);
    t.check(schouten(s, mv(f), mv(g)) == bracket_from_delta(s, mv(f), mv(g)), "Schouten against Delta bracket");

    GradedPoly v = random_hom(rng, s.multivector_alphabet(), 3);
    GradedPoly w = random_hom(rng, s.multivector_alphabet(), 3);
    GradedPoly z = random_hom(rng, s.multivector_alphabet(), 3);
    long dv = *v.homogeneous_degree(), dw = *w.homogeneous_degree();
    t.check(br(v, w) == -sgn((dv + 1) * (dw + 1)) * br(w, v), "bracket symmetry");
    t.check(br(v, br(w, z)) == br(br(v, w), z) + sgn((dv + 1) * (dw + 1)) * br(w, br(v, z)), "Jacobi identity");
    t.check(br(v, w * z) == br(v, w) * z + sgn((dv + 1) * dw) * (w * br(v, z)), "Poisson rule");
    GradedPoly seven = lap(v * w) * z + sgn(dv) * (v * lap(w * z)) + sgn((dv - 1) * dw) * (w * lap(v * z)) -
                       lap(v) * w * z - sgn(dv) * (v * lap(w) * z) - sgn(dv + dw) * (v * w * lap(z));
    t.check(lap(v * w * z) == seven, "seven-term identity");

    FormFunction form{random_poly(rng, s.form_alphabet(), 4, 0, 4), 0};
    t.check(odd_fourier_inverse(s, odd_fourier(s, form)) == form, "inverse Fourier after Fourier");
    t.check(d_delta_intertwine_check(s, form), "F[Df] = (-1)^n Delta F[f]");
  }
  t.note("200 instances per identity, " + std::to_string(with_density) + " with a density");
  return t.result(4, "BV identities");
}

// ---- 5 ------------------------------------------------------------------

CriterionResult cocycle_algebra(std::uint64_t seed) {
  using namespace bv;
  Tally t;
  Rng rng(seed * 1000 + 5);
  int nonzero = 0, instances = 0;
  for (int k = 2; k <= 5; ++k)
    for (int i = 0; i < 25; ++i) {
      BVSpace s = BVSpace::make(3, i % 2 ? random_poly(rng, BVSpace::make(3).x, 2, 1, 3) : GradedPoly());
      std::vector<MultivectorFunction> fs;
      while (fs.size() < static_cast<std::size_t>(k)) {
        auto c = odd_laplacian(s, {random_hom(rng, s.multivector_alphabet(), 4), 0});
        if (!c.poly.is_zero()) fs.push_back(c);
      }
      auto r = delta_product_expansion(s, fs);
      t.check(r.equal, "Delta of a product of " + std::to_string(k) + " closed entries");
      ++instances;
      if (!r.delta.poly.is_zero()) ++nonzero;
    }
  t.check(nonzero > 10, "nontrivial Delta-to-sum instances");

  int ward_nontrivial = 0;
  for (int i = 0; i < 60; ++i) {
    int n = 1 + i % 3;
    BVSpace s = BVSpace::make(n);
    std::vector<int> along;
    for (int mu = 0; mu < n; ++mu)
      if (rng() % 2) along.push_back(mu);
    Matrix q = random_positive(rng, n);
    MultivectorFunction h{random_poly(rng, s.multivector_alphabet(), 4, 0, 5), 0};
    t.check(gaussian_ward_check(s, along, h, q) == 0, "Gaussian Ward check");
    if (conormal_integral(s, along, h, q) != 0) ++ward_nontrivial;
  }
  t.check(ward_nontrivial > 5, "nontrivial conormal integrals");
  t.note(std::to_string(instances) + " expansions (" + std::to_string(nonzero) + " nonzero), 60 Ward instances");
  return t.result(5, "cocycle algebra");
}

// ---- 6 ------------------------------------------------------------------

Rational taylor(const GradedPoly& f, const std::vector<Generator>& x, const std::vector<std::size_t>& idx) {
  GradedPoly r = f;
  for (std::size_t i : idx) r = r.derive(x[i]);
  return r.constant_term();
}

// Index contraction of Taylor tensors along the edges of g; an edge a->b
// carries Omega^{-1}[rho][mu] with rho at a and mu at b.
Rational contract(const LabelledGraph& g, const std::vector<GradedPoly>& tensors, const kontsevich::SymplecticData& d) {
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

Rational antisymmetrize(const std::vector<GradedPoly>& fs,
                        const std::function<Rational(const std::vector<GradedPoly>&)>& fn) {
  std::vector<int> p(fs.size());
  std::iota(p.begin(), p.end(), 0);
  Rational s = 0;
  do {
    std::vector<GradedPoly> q;
    int inv = 0;
    for (std::size_t a = 0; a < p.size(); ++a) {
      q.push_back(fs[static_cast<std::size_t>(p[a])]);
      for (std::size_t b = a + 1; b < p.size(); ++b)
        if (p[a] > p[b]) ++inv;
    }
    s += fn(q) * sgn(inv);
  } while (std::next_permutation(p.begin(), p.end()));
  return s;
}

GradedPoly parity_entry(Rng& rng, const std::vector<Generator>& alphabet) {
  while (true) {
    GradedPoly f = random_poly(rng, alphabet, 8, 3, 3);
    bool odd = rng() % 2;
    GradedPoly g;
    for (const auto& [m, c] : f.terms())
      if (m.odd() == odd) g.add_term(c, m);
    if (!g.is_zero()) return g;
  }
}

CriterionResult kontsevich_theorem(std::uint64_t seed) {
  using namespace kontsevich;
  Tally t;
  Rng rng(seed * 1000 + 6);

  auto d2 = standard_data(2);
  std::vector<GradedPoly> cubics;
  for (int k = 0; k < 4; ++k) {
    GradedPoly f;
    while (f.is_zero()) f = random_poly(rng, d2.x, 5, 3, 3);
    cubics.push_back(f);
  }
  auto chain = graph::from_polynomial(evaluate_chain(cubics, d2));
  Rational xs = antisymmetrize(cubics, [&](const auto& q) { return contract(graph::tetrahedron(), q, d2); });
  Rational ys = antisymmetrize(cubics, [&](const auto& q) { return contract(graph::double_square(), q, d2); });
  t.check(xs != 0 && ys != 0, "four cubics give nonzero contractions");
  t.check(chain.coefficient(graph::tetrahedron()) == xs / 24, "1/24 pattern on the tetrahedron");
  t.check(chain.coefficient(graph::double_square()) == ys / 16, "1/16 pattern on the double square");
  GradedPoly ce_side;
  for (const auto& term : ce_boundary(cubics, d2).terms) ce_side += evaluate_chain(term.chain, d2, 4) * term.coeff;
  Rational zs = antisymmetrize(cubics, [&](const auto& q) {
    return contract(graph::three_vertex_221(), {poisson(q[0], q[1], d2), q[2], q[3]}, d2);
  });
  t.check(graph::from_polynomial(ce_side).coefficient(graph::three_vertex_221()) == zs / 16,
          "1/4 * 1/4 pattern on the CE side");
  auto four = homomorphism_check(cubics, d2);
  t.check(four.equal && !four.lhs.is_zero(), "homomorphism on the four cubics");

  int random_nonzero = 0;
  for (int i = 0; i < 40; ++i) {
    int n = 1 + i % 3;
    auto d = standard_data(n);
    // Homogeneous entries of even total degree, so that graphs can close up.
    int l = 2 + static_cast<int>(rng() % 3);
    unsigned top = n == 3 ? 3 : 4;
    std::vector<unsigned> degs;
    unsigned total = 0;
    for (int k = 0; k < l; ++k) {
      degs.push_back(2 + static_cast<unsigned>(rng() % (top - 1)));
      total += degs.back();
    }
    if (total % 2) degs.back() = degs.back() == top ? top - 1 : degs.back() + 1;
    std::vector<GradedPoly> c;
    for (unsigned dg : degs) {
      GradedPoly f;
      while (f.is_zero()) f = random_poly(rng, d.x, 3, dg, dg);
      c.push_back(f);
    }
    auto r = homomorphism_check(c, d);
    t.check(r.equal, "homomorphism on a random chain");
    if (!r.lhs.is_zero()) ++random_nonzero;
  }

  auto ds = standard_data(1, 2, identity_matrix(2));
  int super_nonzero = 0;
  for (int i = 0; i < 40; ++i) {
    std::vector<GradedPoly> c;
    for (int k = 0; k < 4; ++k) c.push_back(parity_entry(rng, ds.alphabet()));
    auto r = homomorphism_check(c, ds);
    t.check(r.equal, "homomorphism on a super chain");
    if (!r.lhs.is_zero()) ++super_nonzero;
  }
  t.check(random_nonzero >= 3, "at least three nonzero random chains");
  t.check(super_nonzero >= 5, "at least five nonzero super chains");
  t.note("40 random chains (" + std::to_string(random_nonzero) + " nonzero), 40 super chains (" +
         std::to_string(super_nonzero) + " nonzero)");
  return t.result(6, "Kontsevich homomorphism");
}

// ---- 7 ------------------------------------------------------------------

CriterionResult frobenius_cochains(std::uint64_t seed) {
  using namespace frobenius;
  Tally t;
  auto a = build_su2();
  auto report = validate(a);
  for (const auto& c : report.checks) t.check(c.passed, "su(2) axiom: " + c.name);

  auto prop = hodge_propagator(a);
  t.check(propagator_symmetric(a, prop.K), "propagator symmetry");
  auto cocycle = cocycle_check(prop.K, a, 4);
  t.check(cocycle.closed(), "cocycle check up to 4 vertices");

  graph::GraphChain theta;
  theta.add(graph::theta(), 1);
  auto c2 = kontsevich::lie_algebra_cycle(kontsevich::su2(), 2);
  auto c4 = kontsevich::lie_algebra_cycle(kontsevich::su2(), 4);
  Rng rng(seed * 1000 + 7);
  for (int i = 0; i < 10; ++i) {
    Matrix j = zero_matrix(a.dim(), a.dim());
    for (std::size_t b = 1; b <= 3; ++b) j[0][b] = j[b][0] = random_rational(rng);
    validate_variation(a, j);
    t.check(propagator_variation_check(a, prop.K, j, theta) == 0, "variation on theta");
    t.check(propagator_variation_check(a, prop.K, j, c4) == 0, "variation on the four-vertex cycle");
  }

  Rational z2 = partition_function(a, prop.K, c2), z4 = partition_function(a, prop.K, c4);
  t.check(evaluate_cochain(prop.K, a, graph::theta()) == 6, "golden theta value 6");
  t.check(z2 == 6, "golden Z on the two-vertex cycle 6");
  t.check(z4 == 360, "golden Z on the four-vertex cycle 360");
  auto doubled = hodge_propagator(a, matscale(identity_matrix(a.dim()), 2));
  t.check(partition_function(a, doubled.K, c2) == z2 && partition_function(a, doubled.K, c4) == z4,
          "Z under metric rescale");
  t.note(std::to_string(cocycle.graphs_checked) + " hairless classes, variation at first order");
  return t.result(7, "Frobenius graph cochains");
}

// ---- 8 ------------------------------------------------------------------

CriterionResult cross_module(std::uint64_t seed) {
  Tally t;
  Rng rng(seed * 1000 + 8);
  std::vector<Generator> c1{coord(1)};
  auto expect_resum = [&](const std::vector<GradedPoly>& verts, const std::vector<Generator>& c,
                          const wick::QuadraticKernel& k, const std::vector<std::vector<int>>& groups) {
    t.check(wick::resum(wick::diagram_expansion(verts, c, k, groups), groups) ==
                wick::correlator(verts, c, k, groups),
            "diagram expansion resums to the correlator");
  };
  expect_resum({xpow(3, Rational(1, 6)), xpow(3, Rational(1, 6))}, c1, unit_kernel(), {{0, 1}});
  expect_resum({xpow(3, Rational(1, 6)), xpow(5, Rational(1, 120))}, c1, unit_kernel(), {});
  for (int i = 0; i < 30; ++i) {
    int d = 1 + static_cast<int>(rng() % 2);
    std::vector<Generator> c;
    for (int mu = 1; mu <= d; ++mu) c.push_back(coord(mu));
    wick::QuadraticKernel k{random_symmetric(rng, static_cast<std::size_t>(d))};
    std::vector<GradedPoly> verts;
    int nv = 1 + static_cast<int>(rng() % 3);
    for (int v = 0; v < nv; ++v) verts.push_back(random_poly(rng, c, 2, 1, 3));
    std::vector<std::vector<int>> groups;
    if (nv >= 2 && rng() % 2) {
      verts[1] = verts[0];
      groups.push_back({0, 1});
    }
    expect_resum(verts, c, k, groups);
  }

  auto classes = graph::enumerate_classes(5, 8);
  std::map<std::pair<int, std::size_t>, std::vector<LabelledGraph>> groups;
  for (const auto& g : classes) groups[{g.n, g.edges.size()}].push_back(g);
  for (const auto& [key, gs] : groups)
    for (const auto& h : gs) {
      auto p = graph::to_polynomial(h);
      for (const auto& g : gs) t.check(graph::extract_coefficient(g, p) == (g == h ? 1 : 0), "extraction");
    }
  t.note("32 diagram expansions, " + std::to_string(classes.size()) + " classes");
  return t.result(8, "cross-module oracles");
}

template <class F>
CriterionResult guarded(int id, const std::string& title, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    CriterionResult r;
    r.id = id;
    r.title = title;
    r.detail = std::string("exception: ") + e.what();
    return r;
  }
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  return {
      guarded(1, "Gaussian golden values", gaussian_values),
      guarded(2, "symmetry factors", symmetry_factors),
      guarded(3, "graph complex", graph_complex),
      guarded(4, "BV identities", [&] { return bv_identities(seed); }),
      guarded(5, "cocycle algebra", [&] { return cocycle_algebra(seed); }),
      guarded(6, "Kontsevich homomorphism", [&] { return kontsevich_theorem(seed); }),
      guarded(7, "Frobenius graph cochains", [&] { return frobenius_cochains(seed); }),
      guarded(8, "cross-module oracles", [&] { return cross_module(seed); }),
  };
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title << ": " << r.detail;
  return os.str();
}

}  // namespace gbv::acceptance
