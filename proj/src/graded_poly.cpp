#include "gbv/graded_poly.hpp"

#include "gbv/errors.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>

namespace gbv {

struct Generator::Info {
  std::string name;
  int degree;
};

namespace {

struct Registry {
  std::mutex mu;
  std::map<std::string, std::unique_ptr<Generator::Info>, std::less<>> by_name;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

Generator Generator::make(std::string_view name, int degree) {
  if (name.empty()) throw ValidationError("empty generator name");
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto it = reg.by_name.find(name);
  if (it != reg.by_name.end()) {
    if (it->second->degree != degree)
      throw ValidationError("generator '" + std::string(name) + "' already registered with degree " +
                            std::to_string(it->second->degree));
    return Generator(it->second.get());
  }
  auto info = std::make_unique<Info>(Info{std::string(name), degree});
  const Info* raw = info.get();
  reg.by_name.emplace(std::string(name), std::move(info));
  return Generator(raw);
}

std::optional<Generator> Generator::find(std::string_view name) {
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto it = reg.by_name.find(name);
  if (it == reg.by_name.end()) return std::nullopt;
  return Generator(it->second.get());
}

const std::string& Generator::name() const { return info_->name; }
int Generator::degree() const { return info_->degree; }

bool operator<(Generator a, Generator b) {
  if (a.info_ == b.info_) return false;
  if (a.info_->degree != b.info_->degree) return a.info_->degree < b.info_->degree;
  return a.info_->name < b.info_->name;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(Generator g, unsigned exp) {
  Monomial m;
  if (exp == 0) return m;
  m.factors_.emplace_back(g, exp);
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& [g, e] : factors_) d += g.degree() * static_cast<int>(e);
  return d;
}

unsigned Monomial::exponent(Generator g) const {
  for (const auto& [h, e] : factors_)
    if (h == g) return e;
  return 0;
}

unsigned Monomial::total_exponent() const {
  unsigned t = 0;
  for (const auto& f : factors_) t += f.second;
  return t;
}

bool operator<(const Monomial& a, const Monomial& b) {
  std::size_t n = std::min(a.factors_.size(), b.factors_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& fa = a.factors_[i];
    const auto& fb = b.factors_[i];
    if (fa.first != fb.first) return fa.first < fb.first;
    if (fa.second != fb.second) return fa.second < fb.second;
  }
  return a.factors_.size() < b.factors_.size();
}

std::pair<int, Monomial> Monomial::multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors_.reserve(a.factors_.size() + b.factors_.size());
  // Odd factors of a not yet emitted; each odd factor of b that is emitted
  // before them passes all of them.
  int odd_remaining_a = 0;
  for (const auto& f : a.factors_)
    if (f.first.odd()) ++odd_remaining_a;
  int sign = 1;
  std::size_t i = 0, j = 0;
  while (i < a.factors_.size() || j < b.factors_.size()) {
    bool take_a;
    if (i == a.factors_.size()) {
      take_a = false;
    } else if (j == b.factors_.size()) {
      take_a = true;
    } else if (a.factors_[i].first == b.factors_[j].first) {
      Generator g = a.factors_[i].first;
      if (g.odd()) return {0, Monomial()};
      out.factors_.emplace_back(g, a.factors_[i].second + b.factors_[j].second);
      ++i;
      ++j;
      continue;
    } else {
      take_a = a.factors_[i].first < b.factors_[j].first;
    }
    if (take_a) {
      if (a.factors_[i].first.odd()) --odd_remaining_a;
      out.factors_.push_back(a.factors_[i++]);
    } else {
      if (b.factors_[j].first.odd() && (odd_remaining_a % 2) != 0) sign = -sign;
      out.factors_.push_back(b.factors_[j++]);
    }
  }
  return {sign, std::move(out)};
}

std::pair<int, Monomial> sort_factors(const std::vector<Generator>& seq) {
  // Inversion count among odd factors gives the sign.
  int inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!seq[i].odd()) continue;
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[j].odd() && seq[j] < seq[i]) ++inversions;
  }
  std::vector<Generator> sorted = seq;
  std::sort(sorted.begin(), sorted.end());
  Monomial m;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    unsigned e = static_cast<unsigned>(j - i);
    if (sorted[i].odd() && e > 1) return {0, Monomial()};
    m = Monomial::multiply(m, Monomial::of(sorted[i], e)).second;
    i = j;
  }
  return {(inversions % 2) ? -1 : 1, m};
}

// -------------------------------------------------------------- GradedPoly

GradedPoly::GradedPoly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial(), c);
}

GradedPoly GradedPoly::gen(Generator g) { return term(1, Monomial::of(g)); }

GradedPoly GradedPoly::term(const Rational& c, const Monomial& m) {
  GradedPoly p;
  p.add_term(c, m);
  return p;
}

GradedPoly GradedPoly::normalize(
    const std::vector<std::pair<Rational, std::vector<Generator>>>& raw) {
  GradedPoly p;
  for (const auto& [c, seq] : raw) {
    auto [sign, m] = sort_factors(seq);
    if (sign != 0) p.add_term(c * sign, m);
  }
  return p;
}

GradedPoly GradedPoly::normalize_names(
    const std::vector<std::pair<Rational, std::vector<std::string>>>& raw) {
  std::vector<std::pair<Rational, std::vector<Generator>>> resolved;
  resolved.reserve(raw.size());
  for (const auto& [c, names] : raw) {
    std::vector<Generator> seq;
    for (const auto& n : names) {
      auto g = Generator::find(n);
      if (!g) throw ValidationError("unknown generator '" + n + "'");
      seq.push_back(*g);
    }
    resolved.emplace_back(c, std::move(seq));
  }
  return normalize(resolved);
}

Rational GradedPoly::constant_term() const { return coefficient(Monomial()); }

Rational GradedPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<int> GradedPoly::homogeneous_degree() const {
  std::optional<int> d;
  for (const auto& [m, c] : terms_) {
    int md = m.degree();
    if (d && *d != md) return std::nullopt;
    d = md;
  }
  return d;
}

std::optional<bool> GradedPoly::homogeneous_parity() const {
  std::optional<bool> p;
  for (const auto& [m, c] : terms_) {
    bool mp = m.odd();
    if (p && *p != mp) return std::nullopt;
    p = mp;
  }
  return p;
}

std::map<int, GradedPoly> GradedPoly::by_degree() const {
  std::map<int, GradedPoly> out;
  for (const auto& [m, c] : terms_) out[m.degree()].terms_.emplace(m, c);
  return out;
}

std::vector<Generator> GradedPoly::generators() const {
  std::vector<Generator> gens;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) gens.push_back(f.first);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

bool GradedPoly::depends_on(Generator g) const {
  for (const auto& [m, c] : terms_)
    if (m.exponent(g) > 0) return true;
  return false;
}

void GradedPoly::add_term(const Rational& c, const Monomial& m) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(c, m);
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(-c, m);
  return *this;
}

GradedPoly& GradedPoly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

GradedPoly GradedPoly::mul(const GradedPoly& a, const GradedPoly& b) {
  GradedPoly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      auto [sign, m] = Monomial::multiply(ma, mb);
      if (sign == 0) continue;
      Rational c = ca * cb;
      if (sign < 0) c = -c;
      out.add_term(c, m);
    }
  return out;
}

GradedPoly GradedPoly::pow(unsigned k) const {
  GradedPoly out(1);
  for (unsigned i = 0; i < k; ++i) out = mul(out, *this);
  return out;
}

GradedPoly GradedPoly::derive(Generator g) const {
  GradedPoly out;
  for (const auto& [m, c] : terms_) {
    int odd_before = 0;
    for (std::size_t k = 0; k < m.factors_.size(); ++k) {
      const auto& [h, e] = m.factors_[k];
      if (h == g) {
        Monomial r = m;
        Rational coeff = c * e;
        if (g.odd() && (odd_before % 2)) coeff = -coeff;
        if (e == 1) {
          r.factors_.erase(r.factors_.begin() + static_cast<long>(k));
        } else {
          r.factors_[k].second = e - 1;
        }
        out.add_term(coeff, r);
        break;
      }
      if (h.odd()) odd_before += static_cast<int>(e);
    }
  }
  return out;
}

GradedPoly GradedPoly::berezin(const std::vector<Generator>& odd_gens) const {
  for (Generator g : odd_gens)
    if (!g.odd()) throw ValidationError("Berezin integration over even generator '" + g.name() + "'");
  GradedPoly out = *this;
  for (Generator g : odd_gens) out = out.derive(g);
  return out;
}

GradedPoly GradedPoly::substitute(const std::map<Generator, GradedPoly>& bindings) const {
  for (const auto& [g, img] : bindings) {
    auto par = img.homogeneous_parity();
    if (par && *par != g.odd())
      throw ValidationError("substitution for '" + g.name() + "' does not preserve parity");
    if (!par && !img.is_zero())
      throw ValidationError("substitution for '" + g.name() + "' has mixed parity");
  }
  GradedPoly out;
  for (const auto& [m, c] : terms_) {
    GradedPoly acc(c);
    for (const auto& [g, e] : m.factors_) {
      auto it = bindings.find(g);
      GradedPoly factor = it == bindings.end() ? GradedPoly::term(1, Monomial::of(g, e)) : it->second.pow(e);
      acc = mul(acc, factor);
      if (acc.is_zero()) break;
    }
    out += acc;
  }
  return out;
}

GradedPoly GradedPoly::restrict_zero(const std::vector<Generator>& gens) const {
  GradedPoly out;
  for (const auto& [m, c] : terms_) {
    bool keep = true;
    for (Generator g : gens)
      if (m.exponent(g) > 0) {
        keep = false;
        break;
      }
    if (keep) out.terms_.emplace(m, c);
  }
  return out;
}

GradedPoly GradedPoly::rename(const std::map<Generator, Generator>& names) const {
  for (const auto& [a, b] : names)
    if (a.odd() != b.odd())
      throw ValidationError("renaming '" + a.name() + "' to '" + b.name() + "' changes parity");
  GradedPoly out;
  for (const auto& [m, c] : terms_) {
    std::vector<Generator> seq;
    for (const auto& [g, e] : m.factors_) {
      auto it = names.find(g);
      Generator h = it == names.end() ? g : it->second;
      for (unsigned k = 0; k < e; ++k) seq.push_back(h);
    }
    auto [sign, r] = sort_factors(seq);
    if (sign != 0) out.add_term(sign * c, r);
  }
  return out;
}

// ------------------------------------------------------------------- text

std::string to_text(const Monomial& m) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, e] : m.factors()) {
    if (!first) os << '*';
    first = false;
    os << g.name();
    if (e > 1) os << '^' << e;
  }
  return os.str();
}

std::string to_text(const GradedPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (m.empty()) {
      os << to_string(mag);
    } else {
      if (mag != 1) os << to_string(mag) << '*';
      os << to_text(m);
    }
  }
  return os.str();
}

}  // namespace gbv
