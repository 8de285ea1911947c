#pragma once

#include "gbv/graded_poly.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace gbv {

using Rng = std::mt19937_64;

// Small nonzero rational with numerator in [-4, 4] and denominator in [1, 3].
Rational random_rational(Rng& rng);

// Product of up to `max_factors` generators drawn from `alphabet`, with a
// random rational coefficient; odd squares give zero.
GradedPoly random_monomial(Rng& rng, const std::vector<Generator>& alphabet, unsigned max_factors);

// Sum of `terms` random monomials with total exponent in [min_factors, max_factors].
GradedPoly random_poly(Rng& rng, const std::vector<Generator>& alphabet, unsigned terms,
                       unsigned min_factors, unsigned max_factors);

// Random polynomial projected onto one degree that actually occurs; nonzero
// unless every draw vanished.
GradedPoly random_homogeneous(Rng& rng, const std::vector<Generator>& alphabet, unsigned terms,
                              unsigned max_factors);

}  // namespace gbv
