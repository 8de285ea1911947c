#pragma once

#include "gbv/graph_complex.hpp"
#include "gbv/rational.hpp"
#include "gbv/serialize.hpp"

#include <string>
#include <vector>

namespace gbv::frobenius {

// Finite graded commutative algebra with basis e^0..e^{d-1}.
//   product[I][J][K]: e^I e^J = sum_K product[I][J][K] e^K
//   differential[I][J]: d e^I = sum_J D^I_J e^J
//   pairing[I][J] = m^{IJ} = integral of e^I e^J, the integral having degree -p.
struct DGFrobeniusAlgebra {
  std::vector<std::string> names;
  std::vector<int> degrees;
  std::vector<std::vector<std::vector<Rational>>> product;
  Matrix differential;
  Matrix pairing;
  int unit = 0;
  int p = 0;

  std::size_t dim() const { return degrees.size(); }
  // Coefficient vector of e^I e^J ... in the basis, for the listed indices.
  std::vector<Rational> multiply(const std::vector<int>& indices) const;
  // Integral of the product of the listed basis elements.
  Rational integrate(const std::vector<int>& indices) const;
};

// Exterior algebra on e1, e2, e3 with de^c = -1/2 eps_abc e^a e^b and
// integral of e1 e2 e3 equal to 1. Basis order 1, e1, e2, e3, e1e2, e1e3,
// e2e3, e1e2e3.
DGFrobeniusAlgebra build_su2();

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<Check> checks;
  bool all_passed() const;
  const Check* find(const std::string& name) const;
};

ValidationReport validate(const DGFrobeniusAlgebra& a);

// Betti numbers of d by degree, keyed by degree.
std::map<int, long> cohomology_dims(const DGFrobeniusAlgebra& a);

// Matrices in the row convention of the differential: row I holds the
// coefficients of the image of e^I.
struct Propagator {
  Matrix K;          // K_{IJ}
  Matrix metric;     // metric used for the Hodge splitting
  Matrix inverse_d;  // (D^{-1})^K_J
  Matrix harmonic;   // projector onto the harmonic part
};

// K_{IJ} = m_{IK} (D^{-1})^K_J with D^{-1} = (1/box) d^dagger on the
// non-harmonic part; rejects a non-positive-definite metric or harmonic
// elements outside the lowest and highest degree, and a metric coupling
// different degrees. Empty metric means orthonormal basis.
Propagator hodge_propagator(const DGFrobeniusAlgebra& a, const Matrix& metric = {});

// K_{QP} = (-1)^{QP+1} K_{PQ} entrywise.
bool propagator_symmetric(const DGFrobeniusAlgebra& a, const Matrix& K);

// Inverse of the pairing, m_{IJ}.
Matrix pairing_inverse(const DGFrobeniusAlgebra& a);

inline constexpr long kDefaultAssignmentCap = 5'000'000;

// Sum over basis indices at both ends of every edge of prod K times the
// integrals of the vertex products, with the Koszul sign of grouping the
// formal variables vertex by vertex. Vertices whose valence cannot reach
// degree p are detected before summation.
Rational evaluate_cochain(const Matrix& K, const DGFrobeniusAlgebra& a, const graph::LabelledGraph& g,
                          long cap = kDefaultAssignmentCap);
// Sum of coefficient times value over the classes of a chain.
Rational evaluate_cochain(const Matrix& K, const DGFrobeniusAlgebra& a, const graph::GraphChain& c,
                          long cap = kDefaultAssignmentCap);

struct CocycleResidue {
  graph::LabelledGraph graph;
  Rational residue;
};

struct CocycleReport {
  long graphs_checked = 0;
  long graphs_skipped = 0;  // below the valence bound
  long boundaries_with_support = 0;  // boundaries meeting a class of nonzero value
  std::vector<CocycleResidue> residues;  // nonzero values on boundaries
  bool closed() const { return residues.empty(); }
};

// Value on the boundary of every class with at most `max_vertices` vertices
// and `max_edges` edges (default 3 * max_vertices / 2 + 1) whose vertices all
// have valence >= min_valence. Contraction never lowers a valence below 2,
// so min_valence = 2 selects a subcomplex. Hairs are excluded by default: a
// hair on a trivalent graph contracts to that graph, and the harmonic
// unit/top pair gives such boundaries a nonzero value.
CocycleReport cocycle_check(const Matrix& K, const DGFrobeniusAlgebra& a, int max_vertices, int max_edges = -1,
                            int min_valence = 2);

// delta K_{IJ} = J_{IL} D^L_J + (-1)^{p-I} D^L_I J_{LJ}.
Matrix propagator_variation(const DGFrobeniusAlgebra& a, const Matrix& J);
// Rejects J violating J_{PQ} = (-1)^{PQ} J_{QP} or leaving degree p-2.
void validate_variation(const DGFrobeniusAlgebra& a, const Matrix& J);

// First-order change of the value on a cycle under K -> K + t delta K: the
// sum over edges of the value with that one edge carrying delta K.
Rational propagator_variation_check(const DGFrobeniusAlgebra& a, const Matrix& K, const Matrix& J,
                                    const graph::GraphChain& cycle);
// Finite difference value(K + delta K) - value(K) on a cycle.
Rational propagator_difference(const DGFrobeniusAlgebra& a, const Matrix& K, const Matrix& J,
                               const graph::GraphChain& cycle);

// Pairing of the cochain with a cycle; non-cycles are rejected.
Rational partition_function(const DGFrobeniusAlgebra& a, const Matrix& K, const graph::GraphChain& cycle);

Json algebra_to_json(const DGFrobeniusAlgebra& a);
DGFrobeniusAlgebra algebra_from_json(const Json& j);

}  // namespace gbv::frobenius
