#pragma once

#include "gbv/graded_poly.hpp"
#include "gbv/serialize.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace gbv::graph {

inline constexpr int kDefaultVertexCap = 8;

// Vertices 1..n; directed edges (from, to), kept sorted.
struct LabelledGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  LabelledGraph() = default;
  LabelledGraph(int n_vertices, std::vector<std::pair<int, int>> e);

  bool has_loop() const;
  std::vector<int> valences() const;  // a loop adds 2

  friend bool operator==(const LabelledGraph& a, const LabelledGraph& b) {
    return a.n == b.n && a.edges == b.edges;
  }
  friend bool operator<(const LabelledGraph& a, const LabelledGraph& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    return a.edges < b.edges;
  }
};

struct GraphClass {
  LabelledGraph canonical;
  bool is_zero = false;
};

struct CanonicalResult {
  GraphClass cls;
  int sign = 1;  // g = sign * canonical; 0 for zero classes
};

// Exhaustive search over vertex permutations; throws CapExceeded above `cap`.
CanonicalResult canonical_form(const LabelledGraph& g, int cap = kDefaultVertexCap);

// Linear combination of nonzero classes keyed by canonical representative.
class GraphChain {
 public:
  using Terms = std::map<LabelledGraph, Rational>;

  // Canonicalizes g; zero classes are dropped.
  void add(const LabelledGraph& g, const Rational& c);
  void add(const GraphChain& other, const Rational& scale = 1);
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const LabelledGraph& g) const;  // canonicalizes g

  friend bool operator==(const GraphChain& a, const GraphChain& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

// Cochain values keyed by canonical representative.
using GraphCochain = std::map<LabelledGraph, Rational>;

// Contracting i->j (i < j) merges j into i with sign (-1)^{j+1}; a j->i edge
// adds a further -1.
GraphChain boundary(const LabelledGraph& g);
GraphChain boundary(const GraphChain& c);

// Strict mode throws on vertex-degree mismatch; otherwise mismatched terms pair to 0.
Rational pair(const GraphCochain& cochain, const GraphChain& chain, bool strict = false);

// Graph variables: t_i odd of degree -1, t_ij even with t_ij = -t_ji.
Generator vertex_var(int i);
Generator edge_var(int i, int j);  // requires i < j
// Label data of a graph variable: {i, 0} for t_i, {i, j} for t_ij.
std::optional<std::pair<int, int>> parse_graph_var(Generator g);

// Sum over injective label maps [n] -> [N] (N defaults to n).
GradedPoly to_polynomial(const LabelledGraph& g, int N = 0);
GradedPoly to_polynomial(const GraphChain& c, int N = 0);

// Divides by #V * #P; zero classes give 0.
Rational extract_coefficient(const LabelledGraph& g, const GradedPoly& p);

// All classes (with their coefficients) present in a graph polynomial.
GraphChain from_polynomial(const GradedPoly& p);

// Applies a label map to every t variable; collisions t_ii vanish.
GradedPoly relabel(const GradedPoly& p, const std::map<int, int>& labels);

// 1/(2(N-l+1)) sum_{k != q} R^q_k d/dt_kq d/dt_q with left derivatives.
GradedPoly boundary_operator_poly(const GradedPoly& p, int N, int l);

// Every nonzero, loopless class with 1..max_vertices vertices and at most
// max_edges edges, in canonical form and sorted.
std::vector<LabelledGraph> enumerate_classes(int max_vertices, int max_edges);

// Isomorphism class ignoring orientation, with loops allowed and vertex
// colors respected. `automorphisms` counts color-preserving permutations
// fixing the undirected multigraph.
struct ShapeResult {
  LabelledGraph canonical;  // undirected form: (min, max)
  std::vector<int> colors;  // colors in canonical labelling
  long automorphisms = 0;
};
ShapeResult canonical_shape(const LabelledGraph& g, const std::vector<int>& colors,
                            int cap = kDefaultVertexCap);

// Named graphs used in the tests and examples.
LabelledGraph tetrahedron();    // t14 t13 t12 t24 t23 t43
LabelledGraph double_square();  // t12^2 t43^2 t14 t23
LabelledGraph three_vertex_221();  // t12^2 t13^2 t23
LabelledGraph theta();          // three parallel edges 1->2

Json graph_to_json(const LabelledGraph& g);
LabelledGraph graph_from_json(const Json& j);
Json chain_to_json(const GraphChain& c);
GraphChain chain_from_json(const Json& j);

}  // namespace gbv::graph
