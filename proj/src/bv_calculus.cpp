#include "gbv/bv_calculus.hpp"

#include "gbv/errors.hpp"
#include "gbv/wick.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace gbv::bv {

namespace {

int parity(long v) { return static_cast<int>(((v % 2) + 2) % 2); }
int sign_of(long exponent) { return parity(exponent) ? -1 : 1; }

std::vector<Generator> lambda_gens(int n) {
  std::vector<Generator> out;
  for (int i = 1; i <= n; ++i) out.push_back(Generator::make("lam" + std::to_string(i), -1));
  return out;
}

// d/dx^mu of rho^k P, returned without the rho^k.
GradedPoly dx(const BVSpace& s, const GradedPoly& p, int k, int mu) {
  GradedPoly out = p.derive(s.x[static_cast<std::size_t>(mu)]);
  if (k != 0) out += s.sigma.derive(s.x[static_cast<std::size_t>(mu)]) * p * k;
  return out;
}

GradedPoly dpsi(const BVSpace& s, const GradedPoly& p, int mu) { return p.derive(s.psi[static_cast<std::size_t>(mu)]); }

void check_alphabet(const GradedPoly& p, const std::vector<Generator>& allowed, const char* what) {
  for (Generator g : p.generators())
    if (std::find(allowed.begin(), allowed.end(), g) == allowed.end())
      throw ValidationError(std::string(what) + " uses generator '" + g.name() + "' outside its alphabet");
}

MultivectorFunction schouten_homogeneous(const BVSpace& s, const MultivectorFunction& f, int fdeg,
                                         const MultivectorFunction& g) {
  GradedPoly out;
  int sg = sign_of(fdeg);
  for (int mu = 0; mu < s.n; ++mu) {
    out += dx(s, f.poly, f.rho_power, mu) * dpsi(s, g.poly, mu);
    out += (dpsi(s, f.poly, mu) * dx(s, g.poly, g.rho_power, mu)) * sg;
  }
  return {out, f.rho_power + g.rho_power};
}

MultivectorFunction sub(const MultivectorFunction& a, const MultivectorFunction& b) {
  if (a.poly.is_zero()) return {-b.poly, b.rho_power};
  if (b.poly.is_zero()) return a;
  if (a.rho_power != b.rho_power) throw ValidationError("cannot combine different density powers");
  return {a.poly - b.poly, a.rho_power};
}

MultivectorFunction add(const MultivectorFunction& a, const MultivectorFunction& b) {
  return sub(a, {-b.poly, b.rho_power});
}

MultivectorFunction scaled(const MultivectorFunction& a, int c) { return {a.poly * c, a.rho_power}; }

}  // namespace

BVSpace BVSpace::make(int n, GradedPoly sigma) {
  if (n < 1) throw ValidationError("dimension must be positive");
  BVSpace s;
  s.n = n;
  for (int i = 1; i <= n; ++i) {
    s.x.push_back(Generator::make("x" + std::to_string(i), 0));
    s.theta.push_back(Generator::make("th" + std::to_string(i), 1));
    s.psi.push_back(Generator::make("psi" + std::to_string(i), -1));
  }
  check_alphabet(sigma, s.x, "sigma");
  s.sigma = std::move(sigma);
  return s;
}

std::vector<Generator> BVSpace::form_alphabet() const {
  std::vector<Generator> out = x;
  out.insert(out.end(), theta.begin(), theta.end());
  return out;
}

std::vector<Generator> BVSpace::multivector_alphabet() const {
  std::vector<Generator> out = x;
  out.insert(out.end(), psi.begin(), psi.end());
  return out;
}

bool operator==(const FormFunction& a, const FormFunction& b) {
  if (a.poly.is_zero() || b.poly.is_zero()) return a.poly == b.poly;
  return a.rho_power == b.rho_power && a.poly == b.poly;
}

bool operator==(const MultivectorFunction& a, const MultivectorFunction& b) {
  if (a.poly.is_zero() || b.poly.is_zero()) return a.poly == b.poly;
  return a.rho_power == b.rho_power && a.poly == b.poly;
}

void validate(const BVSpace& s, const FormFunction& f) { check_alphabet(f.poly, s.form_alphabet(), "form"); }
void validate(const BVSpace& s, const MultivectorFunction& f) {
  check_alphabet(f.poly, s.multivector_alphabet(), "multivector");
}

FormFunction de_rham(const BVSpace& s, const FormFunction& f) {
  validate(s, f);
  GradedPoly out;
  for (int mu = 0; mu < s.n; ++mu)
    out += GradedPoly::gen(s.theta[static_cast<std::size_t>(mu)]) * dx(s, f.poly, f.rho_power, mu);
  return {out, f.rho_power};
}

MultivectorFunction odd_fourier(const BVSpace& s, const FormFunction& f) {
  validate(s, f);
  GradedPoly e(1);
  for (int mu = 0; mu < s.n; ++mu) {
    auto m = static_cast<std::size_t>(mu);
    e = e * (GradedPoly(1) + GradedPoly::gen(s.psi[m]) * GradedPoly::gen(s.theta[m]));
  }
  return {(e * f.poly).berezin(s.theta), f.rho_power - 1};
}

FormFunction odd_fourier_inverse(const BVSpace& s, const MultivectorFunction& g) {
  validate(s, g);
  GradedPoly e(1);
  for (int mu = 0; mu < s.n; ++mu) {
    auto m = static_cast<std::size_t>(mu);
    e = e * (GradedPoly(1) - GradedPoly::gen(s.psi[m]) * GradedPoly::gen(s.theta[m]));
  }
  long nn = static_cast<long>(s.n) * (s.n + 1) / 2;
  return {(e * g.poly).berezin(s.psi) * sign_of(nn), g.rho_power + 1};
}

MultivectorFunction odd_laplacian(const BVSpace& s, const MultivectorFunction& g) {
  validate(s, g);
  GradedPoly out;
  for (int mu = 0; mu < s.n; ++mu) {
    auto m = static_cast<std::size_t>(mu);
    GradedPoly dp = dpsi(s, g.poly, mu);
    out += dp.derive(s.x[m]);
    if (g.rho_power != -1) out += s.sigma.derive(s.x[m]) * dp * (g.rho_power + 1);
  }
  return {out, g.rho_power};
}

MultivectorFunction product(const MultivectorFunction& a, const MultivectorFunction& b) {
  return {a.poly * b.poly, a.rho_power + b.rho_power};
}

MultivectorFunction schouten(const BVSpace& s, const MultivectorFunction& f, const MultivectorFunction& g) {
  validate(s, f);
  validate(s, g);
  MultivectorFunction out;
  for (const auto& [deg, part] : f.poly.by_degree())
    out = add(out, schouten_homogeneous(s, {part, f.rho_power}, deg, g));
  return out;
}

MultivectorFunction bracket_from_delta(const BVSpace& s, const MultivectorFunction& f,
                                       const MultivectorFunction& g) {
  validate(s, f);
  validate(s, g);
  MultivectorFunction out;
  MultivectorFunction dg = odd_laplacian(s, g);
  for (const auto& [deg, part] : f.poly.by_degree()) {
    MultivectorFunction fp{part, f.rho_power};
    int sg = sign_of(deg);
    MultivectorFunction t = sub(odd_laplacian(s, product(fp, g)), product(odd_laplacian(s, fp), g));
    t = sub(t, scaled(product(fp, dg), sg));
    out = add(out, scaled(t, sg));
  }
  return out;
}

MultivectorFunction star_convolution(const BVSpace& s, const MultivectorFunction& f,
                                     const MultivectorFunction& g) {
  validate(s, f);
  validate(s, g);
  std::vector<Generator> lam = lambda_gens(s.n);
  std::map<Generator, Generator> to_lam;
  std::map<Generator, GradedPoly> shift;
  for (std::size_t m = 0; m < lam.size(); ++m) {
    to_lam.emplace(s.psi[m], lam[m]);
    shift.emplace(s.psi[m], GradedPoly::gen(s.psi[m]) - GradedPoly::gen(lam[m]));
  }
  GradedPoly gs = g.poly.substitute(shift);
  std::vector<Generator> order(lam.rbegin(), lam.rend());
  GradedPoly out;
  for (const auto& [deg, part] : f.poly.by_degree()) {
    long form_degree = s.n + deg;
    out += (part.rename(to_lam) * gs).berezin(order) * sign_of(static_cast<long>(s.n) * (s.n + form_degree));
  }
  return {out, f.rho_power + g.rho_power + 1};
}

bool d_delta_intertwine_check(const BVSpace& s, const FormFunction& f) {
  MultivectorFunction lhs = odd_fourier(s, de_rham(s, f));
  MultivectorFunction rhs = scaled(odd_laplacian(s, odd_fourier(s, f)), sign_of(s.n));
  return lhs == rhs;
}

DeltaExpansion delta_product_expansion(const BVSpace& s, const std::vector<MultivectorFunction>& fs) {
  std::vector<int> deg;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    validate(s, fs[i]);
    auto d = fs[i].poly.homogeneous_degree();
    if (!d && !fs[i].poly.is_zero())
      throw ValidationError("entry " + std::to_string(i + 1) + " is not homogeneous");
    deg.push_back(d.value_or(0));
    if (!odd_laplacian(s, fs[i]).poly.is_zero())
      throw ValidationError("entry " + std::to_string(i + 1) + " has nonzero Delta");
  }
  DeltaExpansion r;
  MultivectorFunction prod{GradedPoly(1), 0};
  for (const auto& f : fs) prod = product(prod, f);
  r.delta = odd_laplacian(s, prod);

  std::vector<long> prefix(fs.size() + 1, 0);
  for (std::size_t i = 0; i < fs.size(); ++i) prefix[i + 1] = prefix[i] + deg[i];
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      long e = prefix[i] * deg[i] + prefix[j] * deg[j] - static_cast<long>(deg[i]) * deg[j] + deg[i];
      MultivectorFunction term = schouten(s, fs[i], fs[j]);
      for (std::size_t m = 0; m < fs.size(); ++m)
        if (m != i && m != j) term = product(term, fs[m]);
      r.sum = add(r.sum, scaled(term, sign_of(e)));
    }
  r.equal = r.delta == r.sum;
  return r;
}

Rational conormal_integral(const BVSpace& s, const std::vector<int>& along, const MultivectorFunction& h,
                           const Matrix& q) {
  validate(s, h);
  if (!s.sigma.is_zero() || h.rho_power != 0)
    throw ValidationError("the conormal integral needs a flat density");
  auto n = static_cast<std::size_t>(s.n);
  if (q.size() != n || std::any_of(q.begin(), q.end(), [&](const auto& row) { return row.size() != n; }))
    throw ValidationError("Q must be " + std::to_string(n) + "x" + std::to_string(n));
  if (!is_symmetric(q) || !is_positive_definite(q)) throw ValidationError("Q is not positive definite");

  std::set<int> in(along.begin(), along.end());
  for (int i : in)
    if (i < 0 || i >= s.n) throw ValidationError("coordinate index out of range");
  std::vector<Generator> zero, odd;
  std::vector<int> idx;
  for (int mu = 0; mu < s.n; ++mu) {
    auto m = static_cast<std::size_t>(mu);
    if (in.count(mu)) {
      zero.push_back(s.psi[m]);
      idx.push_back(mu);
    } else {
      zero.push_back(s.x[m]);
      odd.push_back(s.psi[m]);
    }
  }
  GradedPoly reduced = h.poly.restrict_zero(zero).berezin(odd);
  if (idx.empty()) return reduced.constant_term();

  Matrix block(idx.size(), std::vector<Rational>(idx.size()));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b)
      block[a][b] = q[static_cast<std::size_t>(idx[a])][static_cast<std::size_t>(idx[b])];
  auto kernel = wick::QuadraticKernel::from_quadratic_form(block);

  Rational total = 0;
  for (const auto& [mono, c] : reduced.terms()) {
    std::vector<int> legs;
    for (const auto& [g, e] : mono.factors()) {
      auto it = std::find(s.x.begin(), s.x.end(), g);
      auto pos = std::find(idx.begin(), idx.end(), static_cast<int>(it - s.x.begin()));
      for (unsigned r = 0; r < e; ++r) legs.push_back(static_cast<int>(pos - idx.begin()));
    }
    for (const auto& [k, v] : wick::gaussian_moment(legs, kernel)) total += c * v;
  }
  return total;
}

Rational gaussian_ward_check(const BVSpace& s, const std::vector<int>& along, const MultivectorFunction& g,
                             const Matrix& q) {
  validate(s, g);
  if (!s.sigma.is_zero()) throw ValidationError("the Ward check needs sigma = 0");
  if (g.rho_power != 0) throw ValidationError("the Ward check needs a plain multivector");
  MultivectorFunction h = odd_laplacian(s, g);
  auto n = static_cast<std::size_t>(s.n);
  if (q.size() != n) throw ValidationError("Q must be " + std::to_string(n) + "x" + std::to_string(n));
  for (std::size_t mu = 0; mu < n; ++mu) {
    GradedPoly dq;
    for (std::size_t nu = 0; nu < n && nu < q[mu].size(); ++nu) dq += GradedPoly::gen(s.x[nu]) * q[mu][nu];
    h.poly -= dq * g.poly.derive(s.psi[mu]);
  }
  return conormal_integral(s, along, h, q);
}

}  // namespace gbv::bv
