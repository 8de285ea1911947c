#pragma once

#include "gbv/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gbv {

// Interned handle. A name is bound to exactly one degree for the life of the
// process; re-registering with another degree throws ValidationError.
class Generator {
 public:
  static Generator make(std::string_view name, int degree);
  static std::optional<Generator> find(std::string_view name);

  const std::string& name() const;
  int degree() const;
  bool odd() const { return (degree() % 2) != 0; }

  friend bool operator==(Generator a, Generator b) { return a.info_ == b.info_; }
  friend bool operator!=(Generator a, Generator b) { return a.info_ != b.info_; }
  // Order key: (degree, name).
  friend bool operator<(Generator a, Generator b);

  struct Info;

 private:
  explicit Generator(const Info* info) : info_(info) {}
  const Info* info_;
};

// Factors sorted by generator order, no duplicates, odd exponents equal 1.
class Monomial {
 public:
  using Factor = std::pair<Generator, unsigned>;

  Monomial() = default;
  static Monomial of(Generator g, unsigned exp = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }
  int degree() const;
  bool odd() const { return (degree() % 2) != 0; }
  unsigned exponent(Generator g) const;
  unsigned total_exponent() const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }
  friend bool operator<(const Monomial& a, const Monomial& b);

  // Product with Koszul sign; sign 0 when an odd generator repeats.
  static std::pair<int, Monomial> multiply(const Monomial& a, const Monomial& b);

 private:
  friend class GradedPoly;
  std::vector<Factor> factors_;
};

class GradedPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  GradedPoly() = default;
  GradedPoly(const Rational& c);  // NOLINT: constants convert implicitly
  GradedPoly(int c) : GradedPoly(Rational(c)) {}  // NOLINT
  static GradedPoly gen(Generator g);
  static GradedPoly term(const Rational& c, const Monomial& m);

  // Each raw term is a coefficient and an unordered factor list; repeated
  // entries multiply. Sign from sorting the odd factors.
  static GradedPoly normalize(const std::vector<std::pair<Rational, std::vector<Generator>>>& raw);
  // Same with names resolved through the registry; unknown names are rejected.
  static GradedPoly normalize_names(
      const std::vector<std::pair<Rational, std::vector<std::string>>>& raw);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;

  // Degree when all terms agree; nullopt otherwise (and for zero).
  std::optional<int> homogeneous_degree() const;
  // Parity when all terms agree.
  std::optional<bool> homogeneous_parity() const;
  // Split by degree.
  std::map<int, GradedPoly> by_degree() const;
  std::vector<Generator> generators() const;
  bool depends_on(Generator g) const;

  GradedPoly& operator+=(const GradedPoly& o);
  GradedPoly& operator-=(const GradedPoly& o);
  GradedPoly& operator*=(const Rational& s);
  void add_term(const Rational& c, const Monomial& m);

  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator-(GradedPoly a) { return a *= Rational(-1); }
  friend GradedPoly operator*(GradedPoly a, const Rational& s) { return a *= s; }
  friend GradedPoly operator*(const Rational& s, GradedPoly a) { return a *= s; }
  friend GradedPoly operator*(GradedPoly a, int s) { return a *= Rational(s); }
  friend GradedPoly operator*(int s, GradedPoly a) { return a *= Rational(s); }
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) { return mul(a, b); }
  friend bool operator==(const GradedPoly& a, const GradedPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const GradedPoly& a, const GradedPoly& b) { return !(a == b); }

  static GradedPoly mul(const GradedPoly& a, const GradedPoly& b);
  GradedPoly pow(unsigned k) const;

  // Left graded derivative.
  GradedPoly derive(Generator g) const;
  // Iterated Berezin integral; the first listed generator is integrated first.
  GradedPoly berezin(const std::vector<Generator>& odd_gens) const;
  // Simultaneous substitution; bindings must preserve parity.
  GradedPoly substitute(const std::map<Generator, GradedPoly>& bindings) const;
  // Sets the listed generators to zero.
  GradedPoly restrict_zero(const std::vector<Generator>& gens) const;
  // Renames generators (parity must agree); cheaper than substitute.
  GradedPoly rename(const std::map<Generator, Generator>& names) const;

 private:
  Terms terms_;
};

// Sorts a factor sequence, returning the Koszul sign (0 if an odd generator
// repeats). Independent of Monomial::multiply; counts odd inversions directly.
std::pair<int, Monomial> sort_factors(const std::vector<Generator>& seq);

std::string to_text(const GradedPoly& p);
std::string to_text(const Monomial& m);

}  // namespace gbv
