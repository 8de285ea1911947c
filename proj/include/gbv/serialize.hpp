#pragma once

#include "gbv/graded_poly.hpp"

#include <json.hpp>

#include <vector>

namespace gbv {

using Json = nlohmann::ordered_json;

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// {terms: [{coeff: "p/q", factors: [[name, exp], ...]}, ...]}
Json poly_to_json(const GradedPoly& p);
// Names are resolved against `alphabet`; anything else is a validation error.
GradedPoly poly_from_json(const Json& j, const std::vector<Generator>& alphabet);

}  // namespace gbv
