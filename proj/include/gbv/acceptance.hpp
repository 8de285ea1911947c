#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gbv::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  long checks = 0;     // exact comparisons made
  std::string detail;  // counts on success, first failure otherwise
};

inline constexpr std::uint64_t kDefaultSeed = 1;

// Criteria 1..8 in order. Randomized batches derive their streams from `seed`.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = kDefaultSeed);

// "PASS [n] title: detail" or "FAIL [n] title: detail"
std::string format_line(const CriterionResult& r);

}  // namespace gbv::acceptance
