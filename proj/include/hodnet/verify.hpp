#pragma once

#include <string>
#include <vector>

#include "hodnet/nets.hpp"

namespace hodnet {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Compares generate_points(net) against the reference point list; on
// mismatch the detail names the first differing point.
CheckResult check_golden_points(const GeneratorSet& net);

// The self-test bundle behind `hodnet verify`: reference points, certified
// t-values, construction bounds, character sums, kernel coefficients and
// the shift-average identity. `inject_fault` flips one generating-matrix
// entry first (negative control).
std::vector<CheckResult> golden_checks(bool inject_fault = false);

}  // namespace hodnet
