#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hodnet/engine.hpp"
#include "hodnet/quality.hpp"
#include "hodnet/rational.hpp"

namespace hodnet {

// Periodic reproducing kernel of smoothness alpha, expressed through the
// even Bernoulli polynomial of degree 2*alpha:
//   K(x, y) = 1 + sign * (2 pi)^(2 alpha) / (2 alpha)! * B(|x - y|),
// sign = (-1)^(alpha+1). Product over dimensions. alpha is restricted to
// {1, 2, 3} (exact coefficient tables).
struct KorobovOrder {
    int alpha = 1;
    int b = 2;
    std::vector<Rational> bernoulli;  // coefficients of B_{2 alpha}, by ascending power
};

KorobovOrder korobov_order(int alpha, int b);

// One-dimensional kernel value.
double kernel1(const KorobovOrder& ord, double x, double y);

// Tensor-product kernel over s coordinates.
double kernel(const KorobovOrder& ord, const std::vector<double>& x, const std::vector<double>& y);

// Worst-case integration error of the point set: e = sqrt(e2) with
//   e2 = -1 + N^-2 sum_{n,h} K(x_n, x_h),
// evaluated as the equivalent sum of kernel-minus-one products so the
// leading 1 never enters the accumulator. Summation is compensated in
// extended precision. e2 below -1e-9 raises a consistency error; small
// negatives clamp to 0.
double wce(const PointSet& p, const KorobovOrder& ord);
double wce_squared(const PointSet& p, const KorobovOrder& ord);

// Same, for coordinates already in [0,1) (n points, s columns, row-major).
double wce_squared_coords(const std::vector<long double>& coords, std::size_t n, int s, const KorobovOrder& ord);

// Walsh coefficient of the kernel,
//   r(k, l) = int int K(x,y) conj(wal_k(x)) wal_l(y) dx dy,
// computed exactly from closed-form cell integrals of |x-y|^j over the
// b^a-cell grid on which both Walsh factors are constant (a = digit count
// of max(k, l)). Throws CapExceeded when b^(2a) > 2^cap.
std::complex<double> r_coeff(std::uint64_t k, std::uint64_t l, const KorobovOrder& ord, int cap = kDefaultEnumCap);

// I_j(k) = int int |x-y|^j conj(wal_k(x)) wal_k(y) dx dy via the same cells.
std::complex<double> walsh_bernoulli_integral(std::uint64_t k, int j, const KorobovOrder& ord,
                                              int cap = kDefaultEnumCap);

// Diagonal coefficients r(k) for all k < b^digits at once: cell sums are
// grouped by the digit-wise difference of the cell indices and transformed
// with a tensor DFT over (Z_b)^digits. Same cap rule as r_coeff.
std::vector<double> r_diag_table(const KorobovOrder& ord, int digits, int cap = kDefaultEnumCap);

// |r(k,l)|^2 <= r(k,k) r(l,l), with 1e-12 slack.
bool rr_cauchy_check(std::uint64_t k, std::uint64_t l, const KorobovOrder& ord, int cap = kDefaultEnumCap);

struct ShiftedMean {
    double mean = 0;
    double stderror = 0;
};

// Mean and standard error of e2 over the given digital shifts.
ShiftedMean mean_square_wce(const GeneratorSet& g, const KorobovOrder& ord, const std::vector<DigitShift>& shifts);

// Monte Carlo estimate of the shift-averaged square worst-case error over
// `samples` i.i.d. digital shifts; deterministic given the seed.
ShiftedMean wce_shifted_mean(const GeneratorSet& g, const KorobovOrder& ord, int samples, std::uint64_t seed);

// Truncated series sum_{k in dual} r(k) over dual elements with components
// below b^(m+extension); nondecreasing in the extension.
double dual_wce_series(const GeneratorSet& g, const KorobovOrder& ord, int extension, int cap = kDefaultEnumCap);

}  // namespace hodnet
