#include "hodnet/nets.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hodnet {

namespace {

int pow_mod(long long base, long long exp, int mod) {
    long long r = 1;
    base %= mod;
    if (base < 0) base += mod;
    while (exp > 0) {
        if (exp & 1) r = r * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return static_cast<int>(r);
}

// binom(n, k) mod prime b via Lucas' theorem; handles unbounded n, k.
int binom_mod(long long n, long long k, int b) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    while (n > 0 || k > 0) {
        const int ni = static_cast<int>(n % b);
        const int ki = static_cast<int>(k % b);
        if (ki > ni) return 0;
        // small factorial binomial
        long long c = 1;
        for (int i = 0; i < ki; ++i) c = c * (ni - i) / (i + 1);
        r = r * (c % b) % b;
        n /= b;
        k /= b;
    }
    return static_cast<int>(r);
}

// Entry (k, l) of P^c over Z_b: binom(l, k) * c^(l-k).
int pascal_power_entry(int c, int k, int l, int b) {
    if (k > l) return 0;
    const int bin = binom_mod(l, k, b);
    if (bin == 0) return 0;
    if (c == 0) return k == l ? 1 : 0;
    return static_cast<int>(static_cast<long long>(bin) * pow_mod(c, l - k, b) % b);
}

std::int64_t clamp_to_beta_m(std::int64_t t, const Rational& beta, int m) {
    const Rational bm = beta * Rational(m);
    // largest valid t is floor(beta*m)
    const std::int64_t floor_bm = bm.num / bm.den;
    return t > floor_bm ? floor_bm : t;
}

}  // namespace

void GeneratorSet::validate() const {
    if (m < 1 || s < 1) throw std::invalid_argument("GeneratorSet: m and s must be >= 1");
    if (static_cast<int>(matrices.size()) != s) throw std::invalid_argument("GeneratorSet: expected s matrices");
    for (const auto& c : matrices)
        if (c.base() != b || c.rows() != m || c.cols() != m)
            throw std::invalid_argument("GeneratorSet: matrix base/shape mismatch");
}

GeneratorSet SequenceGenerator::truncate(int m) const {
    if (m < 1) throw std::invalid_argument("SequenceGenerator::truncate: m must be >= 1");
    GeneratorSet g;
    g.b = b;
    g.m = m;
    g.s = s;
    for (int j = 0; j < s; ++j) {
        GFMatrix c(b, m, m);
        for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l) {
                const int e = entry(j, k, l);
                if (e < 0 || e >= b) throw std::invalid_argument("SequenceGenerator: oracle entry out of range");
                c.at(k, l) = e;
            }
        g.matrices.push_back(std::move(c));
    }
    if (t_prime >= 0) {
        if (interleave_d == 1) {
            g.declared_quality = DeclaredQuality{clamp_to_beta_m(t_prime, Rational(1), m), 1, Rational(1)};
        } else {
            const int d = interleave_d;
            const std::int64_t bound = interleave_t_bound(t_prime, s, d, d);
            g.declared_quality = DeclaredQuality{clamp_to_beta_m(bound, Rational(d), m), d, Rational(d)};
        }
    }
    return g;
}

GeneratorSet hammersley(int b, int m) {
    if (m < 1) throw std::invalid_argument("hammersley: m must be >= 1");
    GeneratorSet g;
    g.b = b;
    g.m = m;
    g.s = 2;
    g.matrices.push_back(GFMatrix::identity(b, m));
    GFMatrix anti(b, m, m);
    for (int i = 0; i < m; ++i) anti.at(i, m - 1 - i) = 1;
    g.matrices.push_back(std::move(anti));
    g.declared_quality = DeclaredQuality{0, 1, Rational(1)};
    return g;
}

GeneratorSet faure(int b, int m, int s) {
    if (m < 1 || s < 1) throw std::invalid_argument("faure: m and s must be >= 1");
    if (s > b) throw std::invalid_argument("faure: requires s <= b, got s=" + std::to_string(s) +
                                           " b=" + std::to_string(b));
    GeneratorSet g;
    g.b = b;
    g.m = m;
    g.s = s;
    for (int j = 0; j < s; ++j) {
        GFMatrix c(b, m, m);
        for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l) c.at(k, l) = pascal_power_entry(j, k, l, b);
        g.matrices.push_back(std::move(c));
    }
    g.declared_quality = DeclaredQuality{0, 1, Rational(1)};
    return g;
}

SequenceGenerator faure_sequence(int b, int s) {
    if (s < 1) throw std::invalid_argument("faure_sequence: s must be >= 1");
    if (s > b) throw std::invalid_argument("faure_sequence: requires s <= b");
    SequenceGenerator seq;
    seq.b = b;
    seq.s = s;
    seq.t_prime = 0;
    seq.entry = [b](int j, int k, int l) { return pascal_power_entry(j, k, l, b); };
    return seq;
}

GeneratorSet interleave(const GeneratorSet& g, int d) {
    g.validate();
    if (d < 1) throw std::invalid_argument("interleave: d must be >= 1");
    if (g.s % d != 0) throw std::invalid_argument("interleave: dimension not divisible by d");
    if (d == 1) return g;

    const int s_out = g.s / d;
    GeneratorSet out;
    out.b = g.b;
    out.m = g.m;
    out.s = s_out;
    for (int j = 0; j < s_out; ++j) {
        GFMatrix c(g.b, g.m, g.m);
        for (int l = 0; l < g.m; ++l) {
            const int v = l / d;           // source row
            const int u = j * d + l % d;   // source matrix
            for (int col = 0; col < g.m; ++col) c.at(l, col) = g.matrices[u].at(v, col);
        }
        out.matrices.push_back(std::move(c));
    }
    if (g.declared_quality && g.declared_quality->alpha == 1 && g.declared_quality->beta == Rational(1)) {
        const std::int64_t bound = interleave_t_bound(g.declared_quality->t, s_out, d, d);
        out.declared_quality = DeclaredQuality{clamp_to_beta_m(bound, Rational(d), g.m), d, Rational(d)};
    }
    return out;
}

SequenceGenerator interleave_sequence(const SequenceGenerator& seq, int d) {
    if (d < 1) throw std::invalid_argument("interleave_sequence: d must be >= 1");
    if (seq.s % d != 0) throw std::invalid_argument("interleave_sequence: dimension not divisible by d");
    if (d == 1) return seq;

    SequenceGenerator out;
    out.b = seq.b;
    out.s = seq.s / d;
    out.entry = [inner = seq.entry, d](int j, int k, int l) {
        return inner(j * d + k % d, k / d, l);
    };
    if (seq.interleave_d == 1 && seq.t_prime >= 0) {
        out.t_prime = seq.t_prime;
        out.interleave_d = d;
    }
    return out;
}

std::int64_t interleave_t_bound(std::int64_t t_prime, int s, int d, int alpha) {
    if (t_prime < 0 || s < 1 || d < 1 || alpha < 1) throw std::invalid_argument("interleave_t_bound: bad arguments");
    const std::int64_t md = std::min(alpha, d);
    const std::int64_t num = static_cast<std::int64_t>(s) * (d - 1) * md;
    return md * t_prime + (num + 1) / 2;
}

std::pair<double, double> d_b_bounds(int s, int alpha, int b) {
    if (s < 1 || alpha < 1) throw std::invalid_argument("d_b_bounds: s and alpha must be >= 1");
    if (!is_prime(b)) throw std::invalid_argument("d_b_bounds: b must be prime");
    const double a = alpha;
    const double lower =
        a * (static_cast<double>(s) / b - 1.0 - std::log((b - 1.0) * s + b + 1.0) / std::log(static_cast<double>(b)) +
             std::log(2.0) / std::log(static_cast<double>(b))) + 1.0;
    const double upper = a * (s - 1.0) * (3.0 * b - 1.0) / (b - 1.0) -
                         a * (2.0 * b + 4.0) * std::sqrt(s - 1.0) / std::sqrt(static_cast<double>(b) * b - 1.0) +
                         2.0 * a + s * a * (a - 1.0) / 2.0;
    return {lower, upper};
}

}  // namespace hodnet
