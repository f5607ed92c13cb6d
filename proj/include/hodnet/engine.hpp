#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hodnet/nets.hpp"

namespace hodnet {

// Exact b-adic point set: each coordinate is an integer numerator over b^m.
// The first b-adic digit of a coordinate is the most significant base-b
// digit of its numerator.
struct PointSet {
    int b = 2;
    int m = 1;  // precision digits; numerators < b^m
    int s = 1;
    std::vector<std::uint64_t> num;  // point-major, size n*s

    std::size_t size() const { return s == 0 ? 0 : num.size() / s; }
    std::uint64_t at(std::size_t n, int j) const { return num[n * s + j]; }
};

// Per-coordinate digit shift of precision p (p digits, each in {0..b-1}).
struct DigitShift {
    int b = 2;
    int s = 1;
    int p = 1;
    std::vector<int> digits;  // s*p, digits[j*p + i] is digit i+1 of coordinate j

    int digit(int j, int i) const { return digits[static_cast<std::size_t>(j) * p + i]; }
};

std::uint64_t pow_u64(int b, int e);

// All b^m points of the net, exactly. The digit vector of n (least
// significant first) is mapped through each matrix; the output digits fill
// the numerator most significant first.
PointSet generate_points(const GeneratorSet& g);

// Digit-wise modular addition/subtraction of numerators over b^m (no carries).
std::uint64_t digit_add(std::uint64_t x, std::uint64_t y, int b, int m);
std::uint64_t digit_sub(std::uint64_t x, std::uint64_t y, int b, int m);

// Exponent e in {0..b-1} with wal_k(x) = exp(2*pi*i*e/b), for x given as a
// numerator over b^m.
int walsh_exponent(std::uint64_t k, std::uint64_t x_num, int b, int m);

struct WalshValue {
    int exponent;                 // residue mod b
    std::complex<double> value;   // exp(2*pi*i*exponent/b)
};

WalshValue walsh_eval(std::uint64_t k, std::uint64_t x_num, int b, int m);

// Normalized character sum (1/b^m) sum_n wal_k(x_n) for the net generated
// by g, evaluated exactly through the transposed-matrix criterion. Returns
// 1 iff k lies in the dual (or is zero), else 0.
int walsh_net_sum(const GeneratorSet& g, const std::vector<std::uint64_t>& k);

// Digit-wise shifted copy of p; precision widens to sh.p (net digits beyond
// p.m are zero). Throws on base/shape mismatch or sh.p < p.m.
PointSet apply_shift(const PointSet& p, const DigitShift& sh);

// Uniform i.i.d. digits from a seeded mt19937_64; rejection sampling keeps
// non-power-of-two bases unbiased.
DigitShift sample_shift(int b, int s, int p, std::uint64_t seed);

// Largest p with b^p <= 2^53 (double-precision-equivalent digit count).
int default_shift_precision(int b);

}  // namespace hodnet
