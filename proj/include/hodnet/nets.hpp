#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "hodnet/gf.hpp"
#include "hodnet/rational.hpp"

namespace hodnet {

// Quality triple carried along with a constructed net. Values recorded
// here are upper bounds, never asserted strict.
struct DeclaredQuality {
    std::int64_t t = 0;
    int alpha = 1;
    Rational beta{1, 1};

    friend bool operator==(const DeclaredQuality& a, const DeclaredQuality& b) {
        return a.t == b.t && a.alpha == b.alpha && a.beta == b.beta;
    }
};

// A digital net: s generating matrices of shape m x m over Z_b.
struct GeneratorSet {
    int b = 2;
    int m = 1;
    int s = 1;
    std::vector<GFMatrix> matrices;
    std::optional<DeclaredQuality> declared_quality;

    void validate() const;  // shapes and base consistency

    friend bool operator==(const GeneratorSet& a, const GeneratorSet& b) {
        return a.b == b.b && a.m == b.m && a.s == b.s && a.matrices == b.matrices &&
               a.declared_quality == b.declared_quality;
    }
};

// Infinite generating matrices given by an entry oracle; truncating the
// upper-left m x m blocks yields a GeneratorSet. `t_prime` is the known
// classical quality parameter of the underlying sequence (-1 if unknown);
// `interleave_d` is 1 for plain sequences.
struct SequenceGenerator {
    int b = 2;
    int s = 1;
    int t_prime = -1;
    int interleave_d = 1;
    std::function<int(int j, int k, int l)> entry;  // 0-based dimension j, row k, col l

    GeneratorSet truncate(int m) const;
};

// Two-dimensional net from the identity and the anti-diagonal identity.
GeneratorSet hammersley(int b, int m);

// C_j = P^(j-1) mod b with P the upper-triangular binomial matrix,
// P[k][l] = binom(l, k). Requires s <= b.
GeneratorSet faure(int b, int m, int s);

SequenceGenerator faure_sequence(int b, int s);

// Row-interleaving: splits the s*d input matrices into s groups of d and
// alternates their rows. Row l (1-based) of output matrix j comes from row
// v of input matrix u where l = (v-j)d + u, (j-1)d < u <= jd.
GeneratorSet interleave(const GeneratorSet& g, int d);

SequenceGenerator interleave_sequence(const SequenceGenerator& seq, int d);

// Quality bound for the interleaved construction:
// min(alpha,d)*t' + ceil(s(d-1)min(alpha,d)/2).
std::int64_t interleave_t_bound(std::int64_t t_prime, int s, int d, int alpha);

// Lower and upper bounds on the least attainable t over Z_b in dimension s
// at smoothness alpha.
std::pair<double, double> d_b_bounds(int s, int alpha, int b);

}  // namespace hodnet
