#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hodnet/nets.hpp"

namespace hodnet {

// Thrown when an enumeration would exceed the configured cap.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Default enumeration budget: dual enumeration allows nullspace dimension
// up to this value; cell partitions allow b^(2a) <= 2^cap pairs.
inline constexpr int kDefaultEnumCap = 24;

// Weight context: the base and smoothness the mu-metric is taken in.
struct AlphaWeight {
    int b = 2;
    int alpha = 1;
};

// Certified quality triple. `dual_trivial` marks a computed dual with no
// elements below b^m (minimum weight is infinite).
struct NetQuality {
    std::int64_t t = 0;
    int alpha = 1;
    Rational beta{1, 1};
    bool strict = false;
    std::optional<std::int64_t> dual_min_weight;
    bool dual_trivial = false;
};

// Sum of the min(alpha, nu) largest base-b digit positions (1-based) of k;
// 0 for k = 0.
std::int64_t mu_weight(std::uint64_t k, int b, int alpha);
std::int64_t mu_weight_vec(const std::vector<std::uint64_t>& k, int b, int alpha);

// q = b^(-mu_weight_vec).
double q_factor(const std::vector<std::uint64_t>& k, int b, int alpha);

inline std::int64_t mu_weight(std::uint64_t k, const AlphaWeight& w) { return mu_weight(k, w.b, w.alpha); }
inline std::int64_t mu_weight_vec(const std::vector<std::uint64_t>& k, const AlphaWeight& w) {
    return mu_weight_vec(k, w.b, w.alpha);
}
inline double q_factor(const std::vector<std::uint64_t>& k, const AlphaWeight& w) {
    return q_factor(k, w.b, w.alpha);
}

// Row-independence certificate: true iff every admissible selection of row
// indices with counted weight <= beta*m - t is linearly independent over
// Z_b. Only the alpha largest indices per dimension carry weight; rows
// below a full top-alpha profile are included wholesale (a superset check
// covers every selection sharing the profile).
bool is_talphabeta_net(const GeneratorSet& g, std::int64_t t, int alpha, const Rational& beta);

// Smallest t certifying the net property at (alpha, beta); binary search
// over t (the property is monotone).
NetQuality strict_t(const GeneratorSet& g, int alpha, const Rational& beta);

// Nullspace basis of the stacked transposed system [C_1^T | ... | C_s^T]
// acting on concatenated digit vectors; spans the dual elements with
// components below b^m.
std::vector<std::vector<int>> dual_nullspace_basis(const GeneratorSet& g);

// Minimum mu-weight over the nonzero dual elements with components below
// b^m, by nullspace enumeration of the stacked transposed system.
// nullopt means the restricted dual is empty (infinite weight).
std::optional<std::int64_t> dual_min_weight(const GeneratorSet& g, int alpha, int cap = kDefaultEnumCap);

// Strict t derived from the dual minimum weight.
NetQuality strict_t_dual(const GeneratorSet& g, int alpha, const Rational& beta, int cap = kDefaultEnumCap);

// Parameter propagation to a new smoothness alpha_new:
// t' = ceil(t*min(alpha,alpha')/alpha), beta' = beta*min(alpha,alpha')/alpha.
NetQuality propagation_derive(const NetQuality& q, int alpha_new, int m);

// Parameter weakening at fixed alpha: any t' >= t and 0 < beta' <= beta
// with t' <= beta'*m remains valid.
NetQuality weaken_quality(const NetQuality& q, std::int64_t t_new, const Rational& beta_new, int m);

}  // namespace hodnet
