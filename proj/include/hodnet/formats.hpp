#pragma once

#include <string>
#include <vector>

#include "hodnet/engine.hpp"
#include "hodnet/korobov.hpp"
#include "hodnet/nets.hpp"
#include "hodnet/quality.hpp"

namespace hodnet {

// GeneratorSet JSON schema (keys alphabetical, byte-stable):
// {"b": int, "declared_quality": {"alpha", "beta_den", "beta_num", "t"} | null,
//  "m": int, "matrices": [[[int]]], "s": int}
std::string generator_set_to_json(const GeneratorSet& g);
GeneratorSet generator_set_from_json(const std::string& text);

// Certification report:
// {"alpha": int, "beta": "p/q", "dual_min_weight": int | "infinite" | null,
//  "method": "definition" | "dual", "strict": bool, "t": int}
std::string quality_report_json(const NetQuality& q, const std::string& method, bool dual_computed);

// Digital shift sidecar: {"b", "digits": [[int]], "p", "s", "seed"}.
std::string shift_to_json(const DigitShift& sh, std::uint64_t seed);

// Points CSV: header j1,...,js; exact reduced fractions by default, or
// decimals with ceil(m*log10(b)) + 2 digits.
std::string points_to_csv(const PointSet& p, bool decimal = false);

// Coordinates parsed from a points CSV ("p/q" fractions or decimals);
// returns row-major values and sets s. Throws on malformed input.
std::vector<long double> points_from_csv(const std::string& text, int& s_out);

struct ConvergenceRow {
    int m = 0;
    std::uint64_t n = 0;
    double wce = 0;
};

// Least-squares slope of log(wce) against log(N).
double fitted_slope(const std::vector<ConvergenceRow>& rows);

// Columns m, N, wce, log_b_wce, slope (finite difference); a trailing
// comment line reports the fitted slope over the top half of the range.
std::string convergence_to_csv(const std::vector<ConvergenceRow>& rows, int b);

}  // namespace hodnet
