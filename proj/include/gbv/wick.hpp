#pragma once

#include "gbv/graded_poly.hpp"
#include "gbv/graph_complex.hpp"

#include <map>
#include <vector>

namespace gbv::wick {

inline constexpr int kDefaultLegCap = 16;

// Coefficients of alpha^{-k}, keyed by k.
using AlphaSeries = std::map<int, Rational>;

AlphaSeries& operator+=(AlphaSeries& a, const AlphaSeries& b);
bool is_zero(const AlphaSeries& a);
std::string to_text(const AlphaSeries& a);

// Gaussian weight exp(-alpha/2 x Q x) with <x^a x^b> = inverse(Q)^{ab}/alpha.
// `inverse_pairing` holds the two-point values without the 1/alpha.
struct QuadraticKernel {
  Matrix inverse_pairing;

  static QuadraticKernel from_quadratic_form(const Matrix& q);  // rejects singular q
  std::size_t dim() const { return inverse_pairing.size(); }
};

// Sum over perfect matchings of the legs. Odd counts give 0.
AlphaSeries gaussian_moment(const std::vector<int>& indices, const QuadraticKernel& k,
                            int leg_cap = kDefaultLegCap);

// Number of perfect matchings of `legs` legs: (legs-1)!!, or 0 if odd.
Integer matching_count(int legs);

// Vertices are polynomials in `coords` (coords[mu] is x^mu). Vertices in one
// identical group contribute an extra 1/p!.
AlphaSeries correlator(const std::vector<GradedPoly>& vertices, const std::vector<Generator>& coords,
                       const QuadraticKernel& k, const std::vector<std::vector<int>>& identical_groups = {},
                       int leg_cap = kDefaultLegCap);

struct SymmetryFactor {
  long P = 1;  // product of multiplicity factorials, parallel loops included
  long V = 1;  // colour-preserving vertex permutations fixing the multigraph
  long L = 1;  // 2 per loop
  long aut() const { return P * V * L; }
};

// `g` is read as undirected; loops allowed. Empty colours mean one colour.
SymmetryFactor symmetry_factor(const graph::LabelledGraph& g, const std::vector<int>& colors = {});

struct DiagramClass {
  graph::LabelledGraph shape;  // undirected canonical form, loops allowed
  std::vector<int> colors;
  long count = 0;              // matchings in the class
  SymmetryFactor symmetry;
  AlphaSeries weight;          // summed matching weights, before the 1/p! factors
};

// Matchings grouped by contraction pattern. Vertices in one identical group
// share a colour. Re-summing the weights with the group factors reproduces
// correlator().
std::vector<DiagramClass> diagram_expansion(const std::vector<GradedPoly>& vertices,
                                            const std::vector<Generator>& coords,
                                            const QuadraticKernel& k,
                                            const std::vector<std::vector<int>>& identical_groups = {},
                                            int leg_cap = kDefaultLegCap);

AlphaSeries resum(const std::vector<DiagramClass>& classes, const std::vector<std::vector<int>>& identical_groups);

// Copies 1..N with <x_i^mu x_j^nu> = even_inverse^{mu nu} t_ij and
// <psi_i^a psi_j^b> = odd_inverse^{ab} t_ij, t_ij = -t_ji, t_ii = 0.
struct LatticeKernel {
  std::vector<Generator> even;
  Matrix even_inverse;
  std::vector<Generator> odd;
  Matrix odd_inverse;
};

// Builds the kernel from Omega (antisymmetric) and eta (symmetric); rejects
// singular or wrongly symmetric input.
LatticeKernel lattice_kernel(const std::vector<Generator>& x, const Matrix& omega,
                             const std::vector<Generator>& psi = {}, const Matrix& eta = {});

// f_k sits on copy k (1-based). Result is a polynomial in the edge variables
// t_ij of graph_complex.
GradedPoly lattice_correlator(const std::vector<GradedPoly>& fs, const LatticeKernel& k,
                              int leg_cap = kDefaultLegCap);

}  // namespace gbv::wick
