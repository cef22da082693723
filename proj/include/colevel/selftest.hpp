#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "colevel/bounds.hpp"

namespace colevel {

struct PropertyCheck {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  std::string first_counterexample;  // empty when violations == 0
};

struct GridConfig {
  Int max_N = 24;
  Int max_r = 5;
  Int max_degree = 6;
  Int max_j = 6;
  Int max_i = 3;
};

// Every non-increasing degree sequence with r <= max_r, entries in [1, max_degree].
std::vector<DegreeSequence> degree_grid(Int max_r, Int max_degree);

// Exhaustive checks of the structural properties of mu and nu, the
// projective identities, and dominance of the bound tables over the
// comparison bounds.
std::vector<PropertyCheck> run_property_grid(const GridConfig& config = {});

}  // namespace colevel
