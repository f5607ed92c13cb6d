#include "hodnet/engine.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace hodnet {

std::uint64_t pow_u64(int b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > UINT64_MAX / static_cast<std::uint64_t>(b)) throw std::overflow_error("pow_u64: overflow");
        r *= static_cast<std::uint64_t>(b);
    }
    return r;
}

PointSet generate_points(const GeneratorSet& g) {
    g.validate();
    if (g.m * std::log2(static_cast<double>(g.b)) > 62.0)
        throw std::invalid_argument("generate_points: b^m exceeds 64-bit range");
    const std::uint64_t n_points = pow_u64(g.b, g.m);

    PointSet p;
    p.b = g.b;
    p.m = g.m;
    p.s = g.s;
    p.num.resize(n_points * g.s);

    std::vector<int> ndig(g.m);
    for (std::uint64_t n = 0; n < n_points; ++n) {
        std::uint64_t rest = n;
        for (int l = 0; l < g.m; ++l) {
            ndig[l] = static_cast<int>(rest % g.b);
            rest /= g.b;
        }
        for (int j = 0; j < g.s; ++j) {
            const std::vector<int> y = g.matrices[j].apply(ndig);
            std::uint64_t numer = 0;
            for (int i = 0; i < g.m; ++i) numer = numer * g.b + static_cast<std::uint64_t>(y[i]);
            p.num[n * g.s + j] = numer;
        }
    }
    return p;
}

std::uint64_t digit_add(std::uint64_t x, std::uint64_t y, int b, int m) {
    if (b == 2) return x ^ y;
    std::uint64_t r = 0, place = 1;
    for (int i = 0; i < m; ++i) {
        r += place * ((x % b + y % b) % b);
        x /= b;
        y /= b;
        place *= b;
    }
    return r;
}

std::uint64_t digit_sub(std::uint64_t x, std::uint64_t y, int b, int m) {
    if (b == 2) return x ^ y;
    std::uint64_t r = 0, place = 1;
    for (int i = 0; i < m; ++i) {
        r += place * ((x % b + b - y % b) % b);
        x /= b;
        y /= b;
        place *= b;
    }
    return r;
}

int walsh_exponent(std::uint64_t k, std::uint64_t x_num, int b, int m) {
    if (m > 64) throw std::invalid_argument("walsh_exponent: precision exceeds 64 digits");
    // digit i of x (most significant first) pairs with digit i of k (least
    // significant first); scanning x from its least significant digit x_m
    // pairs it with digit m-1 of k
    int kd[64];
    for (int i = 0; i < m; ++i) {
        kd[i] = static_cast<int>(k % b);
        k /= b;
    }
    int e = 0;
    for (int i = m - 1; i >= 0; --i) {
        e = (e + static_cast<int>(x_num % b) * kd[i]) % b;
        x_num /= b;
    }
    return e;
}

WalshValue walsh_eval(std::uint64_t k, std::uint64_t x_num, int b, int m) {
    const int e = walsh_exponent(k, x_num, b, m);
    const double ang = 2.0 * std::numbers::pi * e / b;
    return {e, {std::cos(ang), std::sin(ang)}};
}

int walsh_net_sum(const GeneratorSet& g, const std::vector<std::uint64_t>& k) {
    g.validate();
    if (static_cast<int>(k.size()) != g.s) throw std::invalid_argument("walsh_net_sum: k has wrong dimension");
    std::vector<int> acc(g.m, 0);
    std::vector<int> kdig(g.m);
    for (int j = 0; j < g.s; ++j) {
        std::uint64_t kj = k[j];
        for (int l = 0; l < g.m; ++l) {
            kdig[l] = static_cast<int>(kj % g.b);
            kj /= g.b;
        }
        const std::vector<int> v = g.matrices[j].transposed().apply(kdig);
        for (int i = 0; i < g.m; ++i) acc[i] = (acc[i] + v[i]) % g.b;
    }
    for (int e : acc)
        if (e != 0) return 0;
    return 1;
}

PointSet apply_shift(const PointSet& p, const DigitShift& sh) {
    if (p.b != sh.b || p.s != sh.s) throw std::invalid_argument("apply_shift: base or dimension mismatch");
    if (sh.p < p.m) throw std::invalid_argument("apply_shift: shift precision below point precision");

    PointSet out;
    out.b = p.b;
    out.m = sh.p;
    out.s = p.s;
    out.num.resize(p.num.size());
    const std::uint64_t pad = pow_u64(p.b, sh.p - p.m);

    std::vector<std::uint64_t> shift_num(p.s);
    for (int j = 0; j < p.s; ++j) {
        std::uint64_t numer = 0;
        for (int i = 0; i < sh.p; ++i) numer = numer * sh.b + static_cast<std::uint64_t>(sh.digit(j, i));
        shift_num[j] = numer;
    }
    for (std::size_t n = 0; n < p.size(); ++n)
        for (int j = 0; j < p.s; ++j)
            out.num[n * p.s + j] = digit_add(p.at(n, j) * pad, shift_num[j], p.b, sh.p);
    return out;
}

DigitShift sample_shift(int b, int s, int p, std::uint64_t seed) {
    if (b < 2 || s < 1 || p < 1) throw std::invalid_argument("sample_shift: bad arguments");
    std::mt19937_64 rng(seed);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % static_cast<std::uint64_t>(b);
    DigitShift sh;
    sh.b = b;
    sh.s = s;
    sh.p = p;
    sh.digits.resize(static_cast<std::size_t>(s) * p);
    for (auto& d : sh.digits) {
        std::uint64_t r;
        do {
            r = rng();
        } while (r >= limit);
        d = static_cast<int>(r % b);
    }
    return sh;
}

int default_shift_precision(int b) {
    int p = 0;
    std::uint64_t v = 1;
    const std::uint64_t cap = 1ULL << 53;
    while (v <= cap / static_cast<std::uint64_t>(b)) {
        v *= static_cast<std::uint64_t>(b);
        ++p;
    }
    return p;
}

}  // namespace hodnet
