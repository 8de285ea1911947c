#include "gbv/random_inputs.hpp"

namespace gbv {

Rational random_rational(Rng& rng) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  int n = 0;
  while (n == 0) n = num(rng);
  Rational r(n, den(rng));
  r.canonicalize();
  return r;
}

GradedPoly random_monomial(Rng& rng, const std::vector<Generator>& alphabet, unsigned max_factors) {
  std::uniform_int_distribution<unsigned> count(0, max_factors);
  return random_poly(rng, alphabet, 1, 0, count(rng));
}

GradedPoly random_poly(Rng& rng, const std::vector<Generator>& alphabet, unsigned terms,
                       unsigned min_factors, unsigned max_factors) {
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<unsigned> count(min_factors, max_factors);
  std::vector<std::pair<Rational, std::vector<Generator>>> raw;
  for (unsigned t = 0; t < terms; ++t) {
    std::vector<Generator> seq;
    unsigned k = count(rng);
    for (unsigned i = 0; i < k && !alphabet.empty(); ++i) seq.push_back(alphabet[pick(rng)]);
    raw.emplace_back(random_rational(rng), std::move(seq));
  }
  return GradedPoly::normalize(raw);
}

GradedPoly random_homogeneous(Rng& rng, const std::vector<Generator>& alphabet, unsigned terms,
                              unsigned max_factors) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    GradedPoly p = random_poly(rng, alphabet, terms, 0, max_factors);
    if (p.is_zero()) continue;
    auto parts = p.by_degree();
    std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
    auto it = parts.begin();
    std::advance(it, static_cast<long>(pick(rng)));
    return it->second;
  }
  return GradedPoly(1);
}

}  // namespace gbv
