#pragma once

// Random aligned families on thick ladders, for the strand property tests.
#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "edr/extraction.hpp"

namespace families {

struct AlignedCase {
  std::size_t m = 0;  // strand levels to check
  edr::AlignedFamilies aligned;
  std::vector<edr::StrandSet> strands;
  long long base = 0;
  int horizon = 0;
};

// One random case: ladder width, horizon, family members, tail drops and the
// capture subsequence are all drawn from rng. Empty when the draw leaves too
// few separations or levels to align.
std::optional<AlignedCase> random_aligned_case(std::mt19937_64& rng);

}  // namespace families
