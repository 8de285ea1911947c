#include "gbv/serialize.hpp"

#include "gbv/errors.hpp"

#include <algorithm>

namespace gbv {

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ValidationError("expected a rational string \"p/q\", got " + j.dump());
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(rational_to_json(v));
    rows.push_back(std::move(r));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("matrix must be an array of rows");
  Matrix m;
  for (const auto& row : j) {
    if (!row.is_array()) throw ValidationError("matrix row must be an array");
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(rational_from_json(v));
    if (!m.empty() && r.size() != m[0].size()) throw ValidationError("ragged matrix");
    m.push_back(std::move(r));
  }
  return m;
}

Json poly_to_json(const GradedPoly& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json factors = Json::array();
    for (const auto& [g, e] : m.factors()) factors.push_back(Json::array({g.name(), e}));
    Json t;
    t["coeff"] = rational_to_json(c);
    t["factors"] = std::move(factors);
    terms.push_back(std::move(t));
  }
  Json out;
  out["terms"] = std::move(terms);
  return out;
}

GradedPoly poly_from_json(const Json& j, const std::vector<Generator>& alphabet) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw ValidationError("polynomial must be an object with a 'terms' array");
  std::vector<std::pair<Rational, std::vector<Generator>>> raw;
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("coeff")) throw ValidationError("term without 'coeff'");
    Rational c = rational_from_json(t["coeff"]);
    std::vector<Generator> seq;
    if (t.contains("factors")) {
      for (const auto& f : t["factors"]) {
        if (!f.is_array() || f.size() != 2 || !f[0].is_string() || !f[1].is_number_unsigned())
          throw ValidationError("factor must be [name, exponent]");
        std::string name = f[0].get<std::string>();
        auto it = std::find_if(alphabet.begin(), alphabet.end(),
                               [&](Generator g) { return g.name() == name; });
        if (it == alphabet.end()) throw ValidationError("unknown generator '" + name + "'");
        unsigned e = f[1].get<unsigned>();
        for (unsigned k = 0; k < e; ++k) seq.push_back(*it);
      }
    }
    raw.emplace_back(c, std::move(seq));
  }
  return GradedPoly::normalize(raw);
}

}  // namespace gbv
