#include "gbv/frobenius.hpp"

#include "gbv/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace gbv::frobenius {

namespace {

using Vec = std::vector<Rational>;

int sign_of(long e) { return ((e % 2) + 2) % 2 ? -1 : 1; }

Vec unit_vector(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

Vec mul_vec(const DGFrobeniusAlgebra& a, const Vec& u, const Vec& v) {
  Vec out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (v[j] == 0) continue;
      for (std::size_t k = 0; k < a.dim(); ++k)
        if (a.product[i][j][k] != 0) out[k] += u[i] * v[j] * a.product[i][j][k];
    }
  }
  return out;
}

Vec d_vec(const DGFrobeniusAlgebra& a, const Vec& u) {
  Vec out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (u[i] != 0)
      for (std::size_t j = 0; j < a.dim(); ++j) out[j] += u[i] * a.differential[i][j];
  return out;
}

Rational integral(const DGFrobeniusAlgebra& a, const Vec& u) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (u[i] != 0) s += u[i] * a.pairing[static_cast<std::size_t>(a.unit)][i];
  return s;
}

// Basis of the null space of m (columns), by reduced row echelon form.
std::vector<Vec> null_space(Matrix m, std::size_t cols) {
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t k = 0; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<Vec> out;
  for (std::size_t c = 0; c < cols; ++c) {
    if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(c)) != pivot_col.end()) continue;
    Vec v(cols);
    v[c] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[static_cast<std::size_t>(pivot_col[i])] = -m[i][c];
    out.push_back(v);
  }
  return out;
}

void check_square(const Matrix& m, std::size_t n, const char* what) {
  if (m.size() != n || std::any_of(m.begin(), m.end(), [&](const Vec& row) { return row.size() != n; }))
    throw ValidationError(std::string(what) + " must be " + std::to_string(n) + "x" + std::to_string(n));
}

void check_shape(const DGFrobeniusAlgebra& a) {
  std::size_t n = a.dim();
  if (n == 0) throw ValidationError("algebra has an empty basis");
  if (a.names.size() != n) throw ValidationError("names and degrees differ in length");
  if (a.unit < 0 || static_cast<std::size_t>(a.unit) >= n) throw ValidationError("unit index out of range");
  if (a.product.size() != n) throw ValidationError("product table has the wrong shape");
  for (const auto& plane : a.product) check_square(plane, n, "product table slice");
  check_square(a.differential, n, "differential");
  check_square(a.pairing, n, "pairing");
}

}  // namespace

Vec DGFrobeniusAlgebra::multiply(const std::vector<int>& indices) const {
  Vec v = unit_vector(dim(), static_cast<std::size_t>(unit));
  for (int i : indices) v = mul_vec(*this, v, unit_vector(dim(), static_cast<std::size_t>(i)));
  return v;
}

Rational DGFrobeniusAlgebra::integrate(const std::vector<int>& indices) const {
  return integral(*this, multiply(indices));
}

DGFrobeniusAlgebra build_su2() {
  std::vector<std::vector<int>> subsets{{}, {1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}};
  DGFrobeniusAlgebra a;
  std::size_t n = subsets.size();
  for (const auto& s : subsets) {
    std::string name = s.empty() ? "1" : "";
    for (int i : s) name += "e" + std::to_string(i);
    a.names.push_back(name);
    a.degrees.push_back(static_cast<int>(s.size()));
  }
  a.product.assign(n, Matrix(n, Vec(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<int> seq = subsets[i];
      seq.insert(seq.end(), subsets[j].begin(), subsets[j].end());
      int inv = 0;
      for (std::size_t x = 0; x < seq.size(); ++x)
        for (std::size_t y = x + 1; y < seq.size(); ++y) {
          if (seq[x] == seq[y]) inv = -1;
          if (inv >= 0 && seq[x] > seq[y]) ++inv;
        }
      if (inv < 0) continue;
      std::sort(seq.begin(), seq.end());
      auto k = static_cast<std::size_t>(std::find(subsets.begin(), subsets.end(), seq) - subsets.begin());
      a.product[i][j][k] = sign_of(inv);
    }
  a.unit = 0;
  a.p = 3;
  a.pairing = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a.pairing[i][j] = a.product[i][j][n - 1];

  auto eps = [](int x, int y, int z) {
    if (x == y || y == z || x == z) return 0;
    int inv = (x > y) + (x > z) + (y > z);
    return sign_of(inv);
  };
  // d on generators, extended as a derivation.
  std::vector<Vec> dgen(4, Vec(n));
  for (int c = 1; c <= 3; ++c)
    for (int x = 1; x <= 3; ++x)
      for (int y = 1; y <= 3; ++y) {
        int e = eps(x, y, c);
        if (e == 0) continue;
        Vec prod = mul_vec(a, unit_vector(n, static_cast<std::size_t>(x)), unit_vector(n, static_cast<std::size_t>(y)));
        for (std::size_t k = 0; k < n; ++k) dgen[static_cast<std::size_t>(c)][k] += Rational(-e, 2) * prod[k];
      }
  a.differential = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = subsets[i];
    Vec out(n);
    for (std::size_t pos = 0; pos < s.size(); ++pos) {
      Vec term = unit_vector(n, 0);
      for (std::size_t q = 0; q < s.size(); ++q) {
        Vec factor = q == pos ? dgen[static_cast<std::size_t>(s[q])] : unit_vector(n, static_cast<std::size_t>(s[q]));
        term = mul_vec(a, term, factor);
      }
      int sg = sign_of(static_cast<long>(pos));
      for (std::size_t k = 0; k < n; ++k) out[k] += term[k] * sg;
    }
    a.differential[i] = out;
  }
  return a;
}

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::map<int, long> cohomology_dims(const DGFrobeniusAlgebra& a) {
  std::map<int, std::vector<std::size_t>> by_degree;
  for (std::size_t i = 0; i < a.dim(); ++i) by_degree[a.degrees[i]].push_back(i);
  auto rank_from = [&](int k) -> long {
    auto it = by_degree.find(k);
    auto jt = by_degree.find(k + 1);
    if (it == by_degree.end() || jt == by_degree.end()) return 0;
    Matrix m;
    for (std::size_t i : it->second) {
      Vec row;
      for (std::size_t j : jt->second) row.push_back(a.differential[i][j]);
      m.push_back(row);
    }
    return static_cast<long>(matrix_rank(m));
  };
  std::map<int, long> out;
  for (const auto& [k, idx] : by_degree)
    out[k] = static_cast<long>(idx.size()) - rank_from(k) - rank_from(k - 1);
  return out;
}

ValidationReport validate(const DGFrobeniusAlgebra& a) {
  ValidationReport r;
  auto add = [&](const std::string& name, bool ok, const std::string& detail = {}) {
    r.checks.push_back({name, ok, detail});
  };
  try {
    check_shape(a);
  } catch (const ValidationError& e) {
    add("shape", false, e.what());
    return r;
  }
  add("shape", true);
  std::size_t n = a.dim();
  auto deg = [&](std::size_t i) { return a.degrees[i]; };
  auto e = [&](std::size_t i) { return unit_vector(n, i); };

  std::string bad;
  for (std::size_t i = 0; i < n && bad.empty(); ++i) {
    Vec l = mul_vec(a, e(static_cast<std::size_t>(a.unit)), e(i));
    Vec rr = mul_vec(a, e(i), e(static_cast<std::size_t>(a.unit)));
    if (l != e(i) || rr != e(i)) bad = a.names[i];
  }
  add("unit", bad.empty(), bad.empty() ? "" : "fails on " + bad);

  bad.clear();
  for (std::size_t i = 0; i < n && bad.empty(); ++i)
    for (std::size_t j = 0; j < n && bad.empty(); ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Rational& c = a.product[i][j][k];
        if (c != 0 && deg(k) != deg(i) + deg(j)) bad = a.names[i] + "*" + a.names[j];
        if (c != a.product[j][i][k] * sign_of(static_cast<long>(deg(i)) * deg(j))) bad = a.names[i] + "*" + a.names[j];
        if (!bad.empty()) break;
      }
  add("graded commutative product", bad.empty(), bad);

  bad.clear();
  for (std::size_t i = 0; i < n && bad.empty(); ++i)
    for (std::size_t j = 0; j < n && bad.empty(); ++j)
      for (std::size_t k = 0; k < n && bad.empty(); ++k)
        if (mul_vec(a, mul_vec(a, e(i), e(j)), e(k)) != mul_vec(a, e(i), mul_vec(a, e(j), e(k))))
          bad = a.names[i] + "," + a.names[j] + "," + a.names[k];
  add("associativity", bad.empty(), bad);

  bad.clear();
  for (std::size_t i = 0; i < n && bad.empty(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a.differential[i][j] != 0 && deg(j) != deg(i) + 1) {
        bad = a.names[i];
        break;
      }
  add("differential degree", bad.empty(), bad);
  add("d squared", is_zero_matrix(matmul(a.differential, a.differential)));

  bad.clear();
  for (std::size_t i = 0; i < n && bad.empty(); ++i)
    for (std::size_t j = 0; j < n && bad.empty(); ++j) {
      Vec lhs = d_vec(a, mul_vec(a, e(i), e(j)));
      Vec r1 = mul_vec(a, d_vec(a, e(i)), e(j));
      Vec r2 = mul_vec(a, e(i), d_vec(a, e(j)));
      int s = sign_of(deg(i));
      for (std::size_t k = 0; k < n; ++k) r1[k] += s * r2[k];
      if (lhs != r1) bad = a.names[i] + "*" + a.names[j];
    }
  add("Leibniz rule", bad.empty(), bad);

  add("p odd", a.p % 2 != 0, "p = " + std::to_string(a.p));

  bad.clear();
  for (std::size_t i = 0; i < n && bad.empty(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a.pairing[i][j] != 0 && deg(i) + deg(j) != a.p) {
        bad = a.names[i] + "," + a.names[j];
        break;
      }
  add("pairing degree", bad.empty(), bad);

  bad.clear();
  for (std::size_t i = 0; i < n && bad.empty(); ++i)
    for (std::size_t j = 0; j < n && bad.empty(); ++j)
      for (std::size_t k = 0; k < n && bad.empty(); ++k) {
        auto pair_vec = [&](const Vec& u, const Vec& v) {
          Rational s = 0;
          for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) s += u[x] * v[y] * a.pairing[x][y];
          return s;
        };
        Rational ab_c = pair_vec(mul_vec(a, e(i), e(j)), e(k));
        Rational a_bc = pair_vec(e(i), mul_vec(a, e(j), e(k)));
        Rational one = pair_vec(e(static_cast<std::size_t>(a.unit)), mul_vec(a, mul_vec(a, e(i), e(j)), e(k)));
        if (ab_c != a_bc || a_bc != one) bad = a.names[i] + "," + a.names[j] + "," + a.names[k];
      }
  add("pairing compatibility", bad.empty(), bad);

  bool nondeg = determinant(a.pairing) != 0;
  add("nondegenerate pairing", nondeg);

  bad.clear();
  for (std::size_t i = 0; i < n && bad.empty(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < n; ++k)
        s += a.differential[i][k] * a.pairing[k][j] + sign_of(deg(i)) * a.pairing[i][k] * a.differential[j][k];
      if (s != 0) {
        bad = a.names[i] + "," + a.names[j];
        break;
      }
    }
  add("Stokes symmetry", bad.empty(), bad);

  auto h = cohomology_dims(a);
  bad.clear();
  if (!h.empty()) {
    int lo = h.begin()->first, hi = h.rbegin()->first;
    for (const auto& [k, dimk] : h)
      if (k != lo && k != hi && dimk != 0) bad += "H^" + std::to_string(k) + " = " + std::to_string(dimk) + " ";
  }
  add("acyclic", bad.empty(), bad);
  return r;
}

Matrix pairing_inverse(const DGFrobeniusAlgebra& a) { return inverse(a.pairing); }

Propagator hodge_propagator(const DGFrobeniusAlgebra& a, const Matrix& metric) {
  check_shape(a);
  std::size_t n = a.dim();
  Matrix g = metric.empty() ? identity_matrix(n) : metric;
  check_square(g, n, "metric");
  if (!is_symmetric(g) || !is_positive_definite(g)) throw ValidationError("metric is not positive definite");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (g[i][j] != 0 && a.degrees[i] != a.degrees[j]) throw ValidationError("metric couples different degrees");

  // Column operators: M e_I = d e^I.
  Matrix m = transpose(a.differential);
  Matrix ginv = inverse(g);
  Matrix dd = matmul(matmul(ginv, transpose(m)), g);
  Matrix box = matadd(matmul(m, dd), matmul(dd, m));

  std::map<int, std::vector<std::size_t>> by_degree;
  for (std::size_t i = 0; i < n; ++i) by_degree[a.degrees[i]].push_back(i);
  int lo = by_degree.begin()->first, hi = by_degree.rbegin()->first;
  std::vector<Vec> harmonic;
  for (const auto& [k, idx] : by_degree) {
    Matrix block;
    for (std::size_t r : idx) {
      Vec row;
      for (std::size_t c : idx) row.push_back(box[r][c]);
      block.push_back(row);
    }
    auto ker = null_space(block, idx.size());
    if (!ker.empty() && k != lo && k != hi)
      throw ValidationError("harmonic elements in degree " + std::to_string(k) + "; the algebra is not acyclic");
    for (const auto& v : ker) {
      Vec full(n);
      for (std::size_t t = 0; t < idx.size(); ++t) full[idx[t]] = v[t];
      harmonic.push_back(full);
    }
  }
  Matrix pi = zero_matrix(n, n);
  if (!harmonic.empty()) {
    Matrix b(n, Vec(harmonic.size()));
    for (std::size_t c = 0; c < harmonic.size(); ++c)
      for (std::size_t r = 0; r < n; ++r) b[r][c] = harmonic[c][r];
    Matrix bt = transpose(b);
    pi = matmul(matmul(b, inverse(matmul(matmul(bt, g), b))), matmul(bt, g));
  }
  Matrix green = matadd(inverse(matadd(box, pi)), matscale(pi, -1));
  Matrix h = matmul(dd, green);

  Propagator out;
  out.metric = g;
  out.inverse_d = transpose(h);
  out.harmonic = transpose(pi);
  Matrix minv = pairing_inverse(a);
  out.K = matmul(minv, out.inverse_d);
  return out;
}

bool propagator_symmetric(const DGFrobeniusAlgebra& a, const Matrix& K) {
  for (std::size_t p = 0; p < a.dim(); ++p)
    for (std::size_t q = 0; q < a.dim(); ++q)
      if (K[q][p] != K[p][q] * sign_of(static_cast<long>(a.degrees[p]) * a.degrees[q] + 1)) return false;
  return true;
}

namespace {

struct Entry {
  int i, j;
  Rational v;
};

std::vector<Entry> nonzero_entries(const Matrix& K) {
  std::vector<Entry> out;
  for (std::size_t i = 0; i < K.size(); ++i)
    for (std::size_t j = 0; j < K[i].size(); ++j)
      if (K[i][j] != 0) out.push_back({static_cast<int>(i), static_cast<int>(j), K[i][j]});
  return out;
}

// Edge e carries the matrix per_edge[e].
Rational evaluate_edges(const std::vector<const Matrix*>& per_edge, const DGFrobeniusAlgebra& a,
                        const graph::LabelledGraph& g, long cap) {
  std::vector<std::vector<Entry>> entries;
  for (const Matrix* m : per_edge) {
    check_square(*m, a.dim(), "propagator");
    entries.push_back(nonzero_entries(*m));
  }

  // Degree selection: every vertex must be able to reach degree p.
  std::vector<std::set<int>> reach(static_cast<std::size_t>(g.n) + 1, std::set<int>{0});
  auto extend = [&](std::set<int>& s, const std::vector<Entry>& opts, bool tail) {
    std::set<int> out;
    for (int x : s)
      for (const auto& en : opts) out.insert(x + a.degrees[static_cast<std::size_t>(tail ? en.i : en.j)]);
    s = std::move(out);
  };
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    extend(reach[static_cast<std::size_t>(g.edges[e].first)], entries[e], true);
    extend(reach[static_cast<std::size_t>(g.edges[e].second)], entries[e], false);
  }
  for (int v = 1; v <= g.n; ++v)
    if (!reach[static_cast<std::size_t>(v)].count(a.p)) return 0;

  double work = 1;
  for (const auto& en : entries) work *= static_cast<double>(en.size());
  if (work > static_cast<double>(cap))
    throw CapExceeded("cochain evaluation needs " + std::to_string(static_cast<long>(work)) + " index assignments");

  // Formal variables in edge order: (vertex, basis index).
  std::size_t slots = 2 * g.edges.size();
  std::vector<int> vert(slots), idx(slots);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    vert[2 * e] = g.edges[e].first;
    vert[2 * e + 1] = g.edges[e].second;
  }
  std::map<std::vector<int>, Rational> memo;
  auto vertex_integral = [&](const std::vector<int>& ids) {
    auto it = memo.find(ids);
    if (it != memo.end()) return it->second;
    Rational v = a.integrate(ids);
    memo.emplace(ids, v);
    return v;
  };

  Rational total = 0;
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t e, Rational weight) {
    if (e == g.edges.size()) {
      long inv = 0;
      for (std::size_t x = 0; x < slots; ++x) {
        if (a.degrees[static_cast<std::size_t>(idx[x])] % 2 == 0) continue;
        for (std::size_t y = x + 1; y < slots; ++y)
          if (vert[x] > vert[y] && a.degrees[static_cast<std::size_t>(idx[y])] % 2 != 0) ++inv;
      }
      Rational value = weight * sign_of(inv);
      for (int v = 1; v <= g.n && value != 0; ++v) {
        std::vector<int> ids;
        for (std::size_t x = 0; x < slots; ++x)
          if (vert[x] == v) ids.push_back(idx[x]);
        value *= vertex_integral(ids);
      }
      total += value;
      return;
    }
    for (const auto& en : entries[e]) {
      idx[2 * e] = en.i;
      idx[2 * e + 1] = en.j;
      rec(e + 1, weight * en.v);
    }
  };
  rec(0, Rational(1));
  return total;
}

}  // namespace

Rational evaluate_cochain(const Matrix& K, const DGFrobeniusAlgebra& a, const graph::LabelledGraph& g, long cap) {
  check_shape(a);
  return evaluate_edges(std::vector<const Matrix*>(g.edges.size(), &K), a, g, cap);
}

Rational evaluate_cochain(const Matrix& K, const DGFrobeniusAlgebra& a, const graph::GraphChain& c, long cap) {
  Rational total = 0;
  for (const auto& [g, coeff] : c.terms()) total += coeff * evaluate_cochain(K, a, g, cap);
  return total;
}

CocycleReport cocycle_check(const Matrix& K, const DGFrobeniusAlgebra& a, int max_vertices, int max_edges,
                            int min_valence) {
  if (max_vertices < 1) throw ValidationError("max_vertices must be positive");
  if (max_edges < 0) max_edges = 3 * max_vertices / 2 + 1;
  CocycleReport report;
  std::map<graph::LabelledGraph, Rational> values;
  auto value = [&](const graph::LabelledGraph& g) {
    auto it = values.find(g);
    if (it != values.end()) return it->second;
    Rational v = evaluate_cochain(K, a, g);
    values.emplace(g, v);
    return v;
  };
  for (const auto& g : graph::enumerate_classes(max_vertices, max_edges)) {
    auto val = g.valences();
    if (std::any_of(val.begin(), val.end(), [&](int v) { return v < min_valence; })) {
      ++report.graphs_skipped;
      continue;
    }
    ++report.graphs_checked;
    graph::GraphChain b = graph::boundary(g);
    Rational total = 0;
    bool support = false;
    for (const auto& [h, c] : b.terms()) {
      Rational v = value(h);
      if (v != 0) support = true;
      total += c * v;
    }
    if (support) ++report.boundaries_with_support;
    if (total != 0) report.residues.push_back({g, total});
  }
  return report;
}

void validate_variation(const DGFrobeniusAlgebra& a, const Matrix& J) {
  check_square(J, a.dim(), "variation");
  for (std::size_t p = 0; p < a.dim(); ++p)
    for (std::size_t q = 0; q < a.dim(); ++q) {
      if (J[p][q] != 0 && a.degrees[p] + a.degrees[q] != a.p - 2)
        throw ValidationError("variation entry (" + a.names[p] + "," + a.names[q] + ") has the wrong degree");
      if (J[p][q] != J[q][p] * sign_of(static_cast<long>(a.degrees[p]) * a.degrees[q]))
        throw ValidationError("variation violates the symmetry rule at (" + a.names[p] + "," + a.names[q] + ")");
    }
}

Matrix propagator_variation(const DGFrobeniusAlgebra& a, const Matrix& J) {
  validate_variation(a, J);
  std::size_t n = a.dim();
  Matrix out = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational s = 0;
      for (std::size_t l = 0; l < n; ++l)
        s += J[i][l] * a.differential[l][j] + sign_of(a.p - a.degrees[i]) * a.differential[l][i] * J[l][j];
      out[i][j] = s;
    }
  return out;
}

Rational propagator_variation_check(const DGFrobeniusAlgebra& a, const Matrix& K, const Matrix& J,
                                    const graph::GraphChain& cycle) {
  if (!graph::boundary(cycle).is_zero()) throw ValidationError("input chain is not a cycle");
  check_shape(a);
  Matrix dk = propagator_variation(a, J);
  Rational total = 0;
  for (const auto& [g, coeff] : cycle.terms())
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      std::vector<const Matrix*> per_edge(g.edges.size(), &K);
      per_edge[e] = &dk;
      total += coeff * evaluate_edges(per_edge, a, g, kDefaultAssignmentCap);
    }
  return total;
}

Rational propagator_difference(const DGFrobeniusAlgebra& a, const Matrix& K, const Matrix& J,
                               const graph::GraphChain& cycle) {
  if (!graph::boundary(cycle).is_zero()) throw ValidationError("input chain is not a cycle");
  Matrix moved = matadd(K, propagator_variation(a, J));
  return evaluate_cochain(moved, a, cycle) - evaluate_cochain(K, a, cycle);
}

Rational partition_function(const DGFrobeniusAlgebra& a, const Matrix& K, const graph::GraphChain& cycle) {
  if (!graph::boundary(cycle).is_zero()) throw ValidationError("input chain is not a cycle");
  return evaluate_cochain(K, a, cycle);
}

Json algebra_to_json(const DGFrobeniusAlgebra& a) {
  Json j;
  j["p"] = a.p;
  j["unit"] = a.unit;
  j["basis"] = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) j["basis"].push_back({{"name", a.names[i]}, {"degree", a.degrees[i]}});
  j["product"] = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k)
      for (std::size_t l = 0; l < a.dim(); ++l)
        if (a.product[i][k][l] != 0) j["product"].push_back({i, k, l, rational_to_json(a.product[i][k][l])});
  auto sparse = [&](const Matrix& m) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t k = 0; k < m[i].size(); ++k)
        if (m[i][k] != 0) arr.push_back({i, k, rational_to_json(m[i][k])});
    return arr;
  };
  j["differential"] = sparse(a.differential);
  j["pairing"] = sparse(a.pairing);
  return j;
}

DGFrobeniusAlgebra algebra_from_json(const Json& j) {
  try {
    DGFrobeniusAlgebra a;
    a.p = j.at("p").get<int>();
    a.unit = j.value("unit", 0);
    for (const auto& b : j.at("basis")) {
      a.names.push_back(b.at("name").get<std::string>());
      a.degrees.push_back(b.at("degree").get<int>());
    }
    std::size_t n = a.dim();
    auto index = [&](const Json& v) {
      auto i = v.get<long>();
      if (i < 0 || static_cast<std::size_t>(i) >= n) throw ValidationError("basis index out of range");
      return static_cast<std::size_t>(i);
    };
    a.product.assign(n, Matrix(n, Vec(n)));
    for (const auto& t : j.at("product"))
      a.product[index(t.at(0))][index(t.at(1))][index(t.at(2))] = rational_from_json(t.at(3));
    a.differential = zero_matrix(n, n);
    for (const auto& t : j.at("differential")) a.differential[index(t.at(0))][index(t.at(1))] = rational_from_json(t.at(2));
    a.pairing = zero_matrix(n, n);
    for (const auto& t : j.at("pairing")) a.pairing[index(t.at(0))][index(t.at(1))] = rational_from_json(t.at(2));
    check_shape(a);
    return a;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed algebra: ") + e.what());
  }
}

}  // namespace gbv::frobenius
