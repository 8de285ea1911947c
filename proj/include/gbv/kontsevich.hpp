#pragma once

#include "gbv/graded_poly.hpp"
#include "gbv/graph_complex.hpp"
#include "gbv/serialize.hpp"
#include "gbv/wick.hpp"

#include <vector>

namespace gbv::kontsevich {

// Even coordinates x (degree 0) with symplectic Omega, optional odd
// coordinates (degree 1) with symmetric eta.
struct SymplecticData {
  std::vector<Generator> x;
  Matrix omega;
  std::vector<Generator> odd;
  Matrix eta;

  Matrix omega_inv;
  Matrix eta_inv;

  // Validates shapes, symmetry and invertibility.
  SymplecticData(std::vector<Generator> x_gens, Matrix omega_, std::vector<Generator> odd_gens = {},
                 Matrix eta_ = {});

  std::vector<Generator> alphabet() const;
  wick::LatticeKernel kernel() const;
};

// x1..x{2n} with the block form [[0,1],[-1,0]], and chi1..chi{m} with eta
// (identity when empty).
SymplecticData standard_data(int n, int m = 0, Matrix eta = {});

// {f,g} = d_mu f P^{mu nu} d_nu g with P = -Omega^{-1}, so {x1,x2} = 1 for the
// block form, plus the odd block -(f d<-_a) eta^{ab} (d_b g).
GradedPoly poisson(const GradedPoly& f, const GradedPoly& g, const SymplecticData& d);

// Ham0 entries: homogeneous parity, no constant or linear terms.
void validate_chain(const std::vector<GradedPoly>& chain, const SymplecticData& d);

struct CETerm {
  Rational coeff;
  std::vector<GradedPoly> chain;
};

struct CEBoundary {
  std::vector<CETerm> terms;
  int dropped_constants = 0;  // brackets that were constant and acted trivially
};

CEBoundary ce_boundary(const std::vector<GradedPoly>& chain, const SymplecticData& d);

// Formal sums in normal form: entries expanded into monomials and sorted with
// the chain symmetry sign; repeated entries of even shifted parity vanish.
using CENormalForm = std::map<std::vector<Monomial>, Rational>;
CENormalForm normal_form(const std::vector<CETerm>& terms);

// Sum over injective label maps [l] -> [N] (N = 0 means l).
GradedPoly evaluate_chain(const std::vector<GradedPoly>& chain, const SymplecticData& d, int N = 0);

struct HomomorphismResult {
  GradedPoly lhs;  // correlator of the CE boundary
  GradedPoly rhs;  // operator-form graph differential of the correlator
  bool equal = false;
};

HomomorphismResult homomorphism_check(const std::vector<GradedPoly>& chain, const SymplecticData& d);

// Structure constants f_{abc} (all indices lowered with eta), validated for
// total antisymmetry and the Jacobi identity.
struct LieAlgebra {
  int dim = 0;
  std::vector<Rational> f;  // f[(a*dim + b)*dim + c]
  Matrix eta;

  Rational at(int a, int b, int c) const {
    return f[static_cast<std::size_t>((a * dim + b) * dim + c)];
  }
};

LieAlgebra su2();
// Throws ValidationError naming the first violated triple.
void validate_lie_algebra(const LieAlgebra& g);
// (1/3!) f_{abc} chi^a chi^b chi^c on R^{0|dim}.
GradedPoly cubic_element(const LieAlgebra& g, const SymplecticData& d);

graph::GraphChain lie_algebra_cycle(const LieAlgebra& g, int k);

Json data_to_json(const SymplecticData& d);
SymplecticData data_from_json(const Json& j);

}  // namespace gbv::kontsevich
