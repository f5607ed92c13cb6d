#pragma once

#include <cstdint>
#include <vector>

#include "hodnet/nets.hpp"

namespace hodnet {

// Hand-checked reference nets over Z_2 used by the verify bundle and the
// regression tests: a 4-dimensional base net with m = 4 whose interleaved
// form has fully known quality parameters and point list.

// The 4-dimensional base net (identity, anti-diagonal and two upper-mixed
// matrices); a classical net with t = 1.
GeneratorSet golden_base_net();

// interleave(golden_base_net(), 2); a 2-dimensional net with 16 points.
GeneratorSet golden_interleaved_net();

// The 16 points of the interleaved net as numerators over 2^4, in index
// order: {x numerator, y numerator}.
std::vector<std::pair<std::uint64_t, std::uint64_t>> golden_point_numerators();

}  // namespace hodnet
