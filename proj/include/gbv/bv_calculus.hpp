#pragma once

#include "gbv/graded_poly.hpp"

#include <optional>
#include <vector>

namespace gbv::bv {

// x1..xn (degree 0), th1..thn (degree 1), psi1..psin (degree -1) and a
// log-density sigma in the x only, rho = exp(sigma).
struct BVSpace {
  int n = 0;
  std::vector<Generator> x;
  std::vector<Generator> theta;
  std::vector<Generator> psi;
  GradedPoly sigma;

  static BVSpace make(int n, GradedPoly sigma = {});

  std::vector<Generator> form_alphabet() const;        // x, theta
  std::vector<Generator> multivector_alphabet() const;  // x, psi
};

// rho^rho_power * poly. The power is nonzero only when a density factor
// survives a Fourier transform.
struct FormFunction {
  GradedPoly poly;
  int rho_power = 0;
};

struct MultivectorFunction {
  GradedPoly poly;
  int rho_power = 0;
};

bool operator==(const FormFunction& a, const FormFunction& b);
bool operator==(const MultivectorFunction& a, const MultivectorFunction& b);

// Reject polynomials using generators outside the respective alphabet.
void validate(const BVSpace& s, const FormFunction& f);
void validate(const BVSpace& s, const MultivectorFunction& f);

// D = theta^mu d/dx^mu.
FormFunction de_rham(const BVSpace& s, const FormFunction& f);

// Integral d^n theta rho^{-1} exp(psi_mu theta^mu) f, theta^1 integrated first.
MultivectorFunction odd_fourier(const BVSpace& s, const FormFunction& f);
// (-1)^{n(n+1)/2} integral d^n psi rho exp(-psi_mu theta^mu) g, psi_1 first.
FormFunction odd_fourier_inverse(const BVSpace& s, const MultivectorFunction& g);

// rho^{-1} d^2/dx^mu dpsi_mu rho.
MultivectorFunction odd_laplacian(const BVSpace& s, const MultivectorFunction& g);

MultivectorFunction product(const MultivectorFunction& a, const MultivectorFunction& b);

// df/dx^mu dg/dpsi_mu + (-1)^{|f|} df/dpsi_mu dg/dx^mu, split by degree of f.
MultivectorFunction schouten(const BVSpace& s, const MultivectorFunction& f, const MultivectorFunction& g);
// (-1)^{|f|} (Delta(fg) - Delta(f) g - (-1)^{|f|} f Delta(g)), split by degree of f.
MultivectorFunction bracket_from_delta(const BVSpace& s, const MultivectorFunction& f,
                                       const MultivectorFunction& g);

// (-1)^{n(n+p)} integral d^n lambda rho f(lambda) g(psi - lambda), where p =
// |f| + n is the form degree of the preimage of f and lambda_n is integrated
// first.
MultivectorFunction star_convolution(const BVSpace& s, const MultivectorFunction& f,
                                     const MultivectorFunction& g);

// F[Df] == (-1)^n Delta F[f].
bool d_delta_intertwine_check(const BVSpace& s, const FormFunction& f);

struct DeltaExpansion {
  MultivectorFunction delta;  // Delta(f1 ... fk)
  MultivectorFunction sum;    // sum over pairs of signed brackets times the rest
  bool equal = false;
};

// Entries must be homogeneous with Delta f_i = 0; the failing index is reported.
DeltaExpansion delta_product_expansion(const BVSpace& s, const std::vector<MultivectorFunction>& fs);

// Integral over the conormal bundle of the coordinate subspace spanned by
// `along`: x^a = 0 and psi_i = 0 for i in along, psi_a integrated in
// increasing order, and the x^i integral taken against the normalised weight
// exp(-x Q x / 2) restricted to the along block. Q is a positive definite
// n x n matrix.
Rational conormal_integral(const BVSpace& s, const std::vector<int>& along, const MultivectorFunction& h,
                           const Matrix& q);

// Conormal integral of exp(Q/2) Delta(g exp(-Q/2)); zero for every g.
Rational gaussian_ward_check(const BVSpace& s, const std::vector<int>& along, const MultivectorFunction& g,
                             const Matrix& q);

}  // namespace gbv::bv
