#include <doctest.h>

#include <algorithm>
#include <complex>
#include <numbers>
#include <random>

#include "hodnet/golden.hpp"
#include "hodnet/korobov.hpp"

using namespace hodnet;

namespace {

constexpr double kPi = std::numbers::pi;
const double kZeta2 = kPi * kPi / 6.0;
const double kZeta4 = std::pow(kPi, 4) / 90.0;
const double kZeta6 = std::pow(kPi, 6) / 945.0;

double two_zeta(int alpha) { return 2.0 * (alpha == 1 ? kZeta2 : alpha == 2 ? kZeta4 : kZeta6); }

PointSet equispaced(int m) {
    PointSet p;
    p.b = 2;
    p.m = m;
    p.s = 1;
    for (std::uint64_t u = 0; u < (1ULL << m); ++u) p.num.push_back(u);
    return p;
}

PointSet single_point(int s) {
    PointSet p;
    p.b = 2;
    p.m = 3;
    p.s = s;
    for (int j = 0; j < s; ++j) p.num.push_back(3);  // 3/8 in every coordinate
    return p;
}

// Fourier coefficient of the k-th Walsh function, exactly from its
// piecewise-constant form: beta(h, k) = int exp(-2 pi i h x) wal_k(x) dx.
std::complex<double> walsh_fourier_coeff(long long h, std::uint64_t k, int b, int a) {
    using namespace std::complex_literals;
    if (h == 0) return k == 0 ? 1.0 : 0.0;
    const std::uint64_t n = pow_u64(b, a);
    std::complex<double> acc = 0;
    for (std::uint64_t u = 0; u < n; ++u) {
        const auto w = walsh_eval(k, u, b, a).value;
        const double hi = -2.0 * kPi * h / static_cast<double>(n);
        const std::complex<double> endd = std::exp(1i * (hi * static_cast<double>(u + 1)));
        const std::complex<double> start = std::exp(1i * (hi * static_cast<double>(u)));
        acc += w * (endd - start);
    }
    return acc / (-2.0 * kPi * 1i * static_cast<double>(h));
}

// Independent route to r(k, l): the kernel's Fourier series paired with the
// Walsh Fourier coefficients, truncated at |h| <= H.
std::complex<double> r_series(std::uint64_t k, std::uint64_t l, int alpha, int b, long long H) {
    int a = 1;
    while (std::max(k, l) >= pow_u64(b, a)) ++a;
    std::complex<double> acc = 0;
    for (long long h = 1; h <= H; ++h) {
        const double decay = std::pow(static_cast<double>(h), -2.0 * alpha);
        acc += decay * (std::conj(walsh_fourier_coeff(h, k, b, a)) * walsh_fourier_coeff(h, l, b, a) +
                        std::conj(walsh_fourier_coeff(-h, k, b, a)) * walsh_fourier_coeff(-h, l, b, a));
    }
    return acc;
}

}  // namespace

TEST_CASE("kernel point values") {
    const auto ord = korobov_order(1, 2);
    CHECK(kernel1(ord, 0.25, 0.25) == doctest::Approx(1.0 + kPi * kPi / 3.0).epsilon(1e-12));
    CHECK(kernel1(ord, 0.0, 0.5) == doctest::Approx(1.0 - kPi * kPi / 6.0).epsilon(1e-12));

    const auto ord2 = korobov_order(2, 2);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const double x1 = (rng() % 1000) / 1000.0, x2 = (rng() % 1000) / 1000.0;
        const double y1 = (rng() % 1000) / 1000.0, y2 = (rng() % 1000) / 1000.0;
        CHECK(kernel(ord2, {x1, x2}, {y1, y2}) ==
              doctest::Approx(kernel1(ord2, x1, y1) * kernel1(ord2, x2, y2)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(korobov_order(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(korobov_order(0, 2), std::invalid_argument);
}

TEST_CASE("worst-case error closed forms") {
    for (int alpha : {1, 2, 3}) {
        const auto ord = korobov_order(alpha, 2);
        CHECK(wce_squared(single_point(1), ord) == doctest::Approx(two_zeta(alpha)).epsilon(1e-10));
    }
    // s-dimensional single point: (1 + 2 zeta)^s - 1
    for (int s : {2, 3}) {
        const auto ord = korobov_order(2, 2);
        CHECK(wce_squared(single_point(s), ord) ==
              doctest::Approx(std::pow(1.0 + two_zeta(2), s) - 1.0).epsilon(1e-10));
    }
    // N equispaced points: 2 zeta(2 alpha) / N^(2 alpha)
    for (int alpha : {1, 2}) {
        const auto ord = korobov_order(alpha, 2);
        for (int m : {1, 2, 3}) {
            const double n = std::pow(2.0, m);
            CHECK(wce_squared(equispaced(m), ord) ==
                  doctest::Approx(two_zeta(alpha) / std::pow(n, 2 * alpha)).epsilon(1e-10));
        }
    }
}

TEST_CASE("worst-case error is order-insensitive and shift-stable") {
    const auto ord = korobov_order(2, 2);
    PointSet p = generate_points(golden_interleaved_net());
    const double base = wce_squared(p, ord);

    PointSet shuffled = p;
    std::mt19937_64 rng(9);
    for (std::size_t n = shuffled.size(); n > 1; --n) {
        const std::size_t pick = rng() % n;
        for (int j = 0; j < p.s; ++j) std::swap(shuffled.num[(n - 1) * p.s + j], shuffled.num[pick * p.s + j]);
    }
    CHECK(wce_squared(shuffled, ord) == doctest::Approx(base).epsilon(1e-12));

    DigitShift zero{2, 2, p.m, std::vector<int>(static_cast<std::size_t>(2) * p.m, 0)};
    CHECK(wce_squared(apply_shift(p, zero), ord) == base);  // bitwise
}

TEST_CASE("classical criterion via the truncated Fourier dual sum") {
    // equispaced N points: dual modes h = jN; truncate at |h| <= 1e5 and
    // bound the tail analytically
    for (int alpha : {1, 2}) {
        const auto ord = korobov_order(alpha, 2);
        for (int m : {2, 3}) {
            const long long n = 1LL << m;
            double oracle = 0;
            const long long jmax = 100000 / n;
            for (long long j = 1; j <= jmax; ++j) oracle += 2.0 * std::pow(j * n, -2.0 * alpha);
            const double tail = 2.0 * std::pow(static_cast<double>(n), -2.0 * alpha) *
                                std::pow(static_cast<double>(jmax), 1.0 - 2.0 * alpha) / (2.0 * alpha - 1.0);
            CHECK(std::abs(wce_squared(equispaced(m), ord) - oracle) <= tail + 1e-12);
        }
    }
}

TEST_CASE("hand-evaluated cell integrals") {
    const auto ord = korobov_order(1, 2);
    // four 2x2 cells give I_1(1) = 1/12 - 2/8 = -1/6
    CHECK(walsh_bernoulli_integral(1, 1, ord).real() == doctest::Approx(-1.0 / 6).epsilon(1e-13));
    CHECK(walsh_bernoulli_integral(1, 1, ord).imag() == doctest::Approx(0.0));
    // and r(1) = 2 pi^2 (I_2(1) - I_1(1)) = pi^2 / 12
    CHECK(r_coeff(1, 1, ord).real() == doctest::Approx(kPi * kPi / 12).epsilon(1e-12));
}

TEST_CASE("walsh coefficient identities") {
    for (int alpha : {1, 2}) {
        const auto ord = korobov_order(alpha, 2);
        CHECK(r_coeff(0, 0, ord).real() == doctest::Approx(1.0).epsilon(1e-13));
        for (std::uint64_t k = 1; k <= 64; ++k) CHECK(std::abs(r_coeff(0, k, ord)) < 1e-12);

        // scaling under multiplication by powers of the base
        for (std::uint64_t k = 1; k <= 16; ++k)
            for (int mm = 1; mm <= 3; ++mm) {
                const double want = std::pow(2.0, -2.0 * alpha * mm) * r_coeff(k, k, ord).real();
                CHECK(r_coeff(k << mm, k << mm, ord).real() == doctest::Approx(want).epsilon(1e-12));
            }
    }
}

TEST_CASE("vanishing even-order integrals") {
    const auto ord = korobov_order(3, 2);
    // nu = 1: j = 0; nu = 2: j = 0, 2; nu = 3: j = 0, 2, 4
    for (std::uint64_t k : {1, 2, 4, 16}) CHECK(std::abs(walsh_bernoulli_integral(k, 0, ord)) < 1e-12);
    for (std::uint64_t k : {3, 5, 6, 9, 12, 33}) {
        CHECK(std::abs(walsh_bernoulli_integral(k, 0, ord)) < 1e-12);
        CHECK(std::abs(walsh_bernoulli_integral(k, 2, ord)) < 1e-12);
    }
    for (std::uint64_t k : {7, 11, 21, 42}) {
        CHECK(std::abs(walsh_bernoulli_integral(k, 2, ord)) < 1e-12);
        CHECK(std::abs(walsh_bernoulli_integral(k, 4, ord)) < 1e-12);
    }
}

TEST_CASE("r agrees with the independent Fourier-series route") {
    for (int alpha : {1, 2}) {
        const auto ord = korobov_order(alpha, 2);
        for (const auto& [k, l] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
                 {1, 1}, {1, 2}, {2, 3}, {3, 3}, {0, 1}, {5, 6}, {4, 4}}) {
            const auto direct = r_coeff(k, l, ord);
            const auto series = r_series(k, l, alpha, 2, 3000);
            CHECK(std::abs(direct - series) < 1e-8);
        }
    }
}

TEST_CASE("hermitian symmetry and the cross-coefficient bound") {
    std::mt19937_64 rng(31);
    const auto ord1 = korobov_order(1, 2);
    const auto ord2 = korobov_order(2, 2);
    for (int trial = 0; trial < 40; ++trial) {
        const std::uint64_t k = rng() % 256, l = rng() % 256;
        for (const auto& ord : {ord1, ord2}) {
            const auto a = r_coeff(k, l, ord);
            const auto b = r_coeff(l, k, ord);
            CHECK(std::abs(a - std::conj(b)) < 1e-12);
            CHECK(rr_cauchy_check(k, l, ord));
        }
    }
    CHECK(rr_cauchy_check(7, 7, ord2));
    CHECK(rr_cauchy_check(0, 13, ord1));
}

TEST_CASE("diagonal table matches per-coefficient evaluation") {
    for (int alpha : {1, 2}) {
        const auto ord = korobov_order(alpha, 2);
        const auto table = r_diag_table(ord, 5);
        CHECK(table[0] == doctest::Approx(1.0).epsilon(1e-13));
        for (std::uint64_t k = 1; k < 32; ++k)
            CHECK(table[k] == doctest::Approx(r_coeff(k, k, ord).real()).epsilon(1e-10));
    }
    // base 3 spot check
    const auto ord3 = korobov_order(1, 3);
    const auto table3 = r_diag_table(ord3, 2);
    for (std::uint64_t k = 1; k < 9; ++k)
        CHECK(table3[k] == doctest::Approx(r_coeff(k, k, ord3).real()).epsilon(1e-10));
}

TEST_CASE("partial sums of r climb to the full kernel mass") {
    const auto ord = korobov_order(1, 2);
    const auto table = r_diag_table(ord, 8);
    double sum = 0;
    double prev = 0;
    for (std::uint64_t k = 1; k < 256; ++k) {
        CHECK(table[k] >= -1e-13);
        sum += table[k];
        CHECK(sum >= prev);
        prev = sum;
    }
    CHECK(sum <= 2 * kZeta2 + 1e-9);
    CHECK(sum >= 0.95 * 2 * kZeta2);
}

TEST_CASE("bounded-constant proxy for the coefficient envelope") {
    for (int alpha : {1, 2}) {
        const auto ord = korobov_order(alpha, 2);
        const auto table = r_diag_table(ord, 10, 26);
        std::vector<double> bucket_max(11, 0.0);
        for (std::uint64_t k = 1; k < (1ULL << 10); ++k) {
            int a = 0;
            for (std::uint64_t t = k; t != 0; t >>= 1) ++a;
            const double ratio = std::sqrt(std::max(table[k], 0.0)) / q_factor({k}, 2, alpha);
            bucket_max[a] = std::max(bucket_max[a], ratio);
        }
        const double head = *std::max_element(bucket_max.begin() + 1, bucket_max.begin() + 6);
        for (int a = 6; a <= 10; ++a) CHECK(bucket_max[a] <= head * 1.0001);
        MESSAGE("alpha ", alpha, " envelope constant ", head);
    }
}

TEST_CASE("truncated dual series") {
    const auto ord = korobov_order(1, 2);

    GeneratorSet one;
    one.b = 2;
    one.m = 4;
    one.s = 1;
    one.matrices.push_back(GFMatrix::identity(2, 4));
    CHECK(dual_wce_series(one, ord, 0) == 0.0);

    // the only dual element below 2^(m+1) is 2^m itself
    const auto table = r_diag_table(ord, 5);
    CHECK(dual_wce_series(one, ord, 1) == doctest::Approx(table[16]).epsilon(1e-12));
    CHECK(table[16] == doctest::Approx(std::pow(2.0, -8.0) * (kPi * kPi / 12)).epsilon(1e-10));

    const auto net = golden_interleaved_net();
    double prev = -1;
    for (int ext = 0; ext <= 3; ++ext) {
        const double v = dual_wce_series(net, ord, ext);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("kernel sum agrees with the double dual series") {
    // e2 = sum over dual pairs (k, l) of r(k, l): evaluate the series with
    // both components truncated below 2^(m+ext) and watch it close in on
    // the direct kernel-sum value
    auto dual_double_series = [](const GeneratorSet& g, const KorobovOrder& ord, int ext) {
        const auto basis = dual_nullspace_basis(g);
        const std::uint64_t bm = 1ULL << g.m;
        const std::uint64_t lift = 1ULL << ext;
        const std::uint64_t kmax = bm * lift;
        std::vector<std::vector<std::complex<double>>> table(kmax, std::vector<std::complex<double>>(kmax));
        for (std::uint64_t k = 0; k < kmax; ++k)
            for (std::uint64_t l = 0; l < kmax; ++l) table[k][l] = r_coeff(k, l, ord, 30);
        std::vector<std::vector<std::uint64_t>> dual;
        const std::uint64_t combos = 1ULL << basis.size();
        for (std::uint64_t c = 0; c < combos; ++c) {
            std::vector<std::uint64_t> h(g.s, 0);
            for (std::size_t i = 0; i < basis.size(); ++i) {
                if (!(c >> i & 1)) continue;
                for (int j = 0; j < g.s; ++j) {
                    std::uint64_t kj = 0;
                    for (int l2 = g.m - 1; l2 >= 0; --l2) kj = kj * 2 + static_cast<std::uint64_t>(basis[i][j * g.m + l2]);
                    h[j] ^= kj;
                }
            }
            std::vector<std::uint64_t> lifts(g.s, 0);
            while (true) {
                std::vector<std::uint64_t> k(g.s);
                for (int j = 0; j < g.s; ++j) k[j] = h[j] + bm * lifts[j];
                dual.push_back(k);
                int j = 0;
                for (; j < g.s; ++j) {
                    if (++lifts[j] < lift) break;
                    lifts[j] = 0;
                }
                if (j == g.s) break;
            }
        }
        std::complex<double> acc = 0;
        for (const auto& k : dual)
            for (const auto& l : dual) {
                bool both_zero = true;
                for (int j = 0; j < g.s; ++j)
                    if (k[j] != 0 || l[j] != 0) both_zero = false;
                if (both_zero) continue;
                std::complex<double> term = 1;
                for (int j = 0; j < g.s; ++j) term *= table[k[j]][l[j]];
                acc += term;
            }
        return acc.real();
    };

    const auto g = hammersley(2, 2);
    for (int alpha : {1, 2}) {
        const auto ord = korobov_order(alpha, 2);
        const double direct = wce_squared(generate_points(g), ord);
        const double gap1 = std::abs(dual_double_series(g, ord, 1) - direct) / direct;
        const double gap3 = std::abs(dual_double_series(g, ord, 3) - direct) / direct;
        CHECK(gap3 < gap1);
        CHECK(gap3 < (alpha == 1 ? 0.15 : 0.02));
    }
}

TEST_CASE("upper envelope from the truncated dual sum") {
    for (int alpha : {1, 2}) {
        const auto ord = korobov_order(alpha, 2);
        for (const GeneratorSet& g : {hammersley(2, 4), golden_interleaved_net()}) {
            const double e = wce(generate_points(g), ord);
            const auto table = r_diag_table(ord, g.m + 3);
            // sum of sqrt(r) over dual elements with components < 2^(m+3)
            const auto basis = dual_nullspace_basis(g);
            double sum = 0;
            const std::uint64_t bm = 1ULL << g.m;
            const std::uint64_t lift = 1ULL << 3;
            const std::uint64_t combos = pow_u64(2, static_cast<int>(basis.size()));
            for (std::uint64_t c = 0; c < combos; ++c) {
                std::vector<std::uint64_t> h(g.s, 0);
                for (std::size_t i = 0; i < basis.size(); ++i) {
                    if (!(c >> i & 1)) continue;
                    for (int j = 0; j < g.s; ++j) {
                        std::uint64_t kj = 0;
                        for (int l = g.m - 1; l >= 0; --l) kj = kj * 2 + static_cast<std::uint64_t>(basis[i][j * g.m + l]);
                        h[j] ^= kj;
                    }
                }
                for (std::uint64_t l1 = 0; l1 < lift; ++l1)
                    for (std::uint64_t l2 = 0; l2 < (g.s == 2 ? lift : 1); ++l2) {
                        const std::uint64_t k1 = h[0] + bm * l1;
                        const std::uint64_t k2 = g.s == 2 ? h[1] + bm * l2 : 0;
                        if (k1 == 0 && k2 == 0) continue;
                        double term = std::sqrt(std::max(table[k1], 0.0));
                        if (g.s == 2) term *= std::sqrt(std::max(table[k2], 0.0));
                        sum += term;
                    }
            }
            CHECK(e <= sum * 1.05 + 1e-9);
        }
    }
}

TEST_CASE("shift-averaged square error") {
    const auto net = golden_interleaved_net();

    SUBCASE("zero shifts reproduce the unshifted square error") {
        const auto ord = korobov_order(2, 2);
        const DigitShift zero{2, 2, 8, std::vector<int>(16, 0)};
        const auto ms = mean_square_wce(net, ord, {zero, zero, zero});
        CHECK(ms.mean == wce_squared(generate_points(net), ord));
        CHECK(ms.stderror == 0.0);
    }
    SUBCASE("deterministic given the seed") {
        const auto ord = korobov_order(1, 2);
        const auto a = wce_shifted_mean(net, ord, 16, 77);
        const auto b = wce_shifted_mean(net, ord, 16, 77);
        CHECK(a.mean == b.mean);
        CHECK(a.stderror == b.stderror);
    }
    SUBCASE("mean square error stays below the square worst-case error") {
        for (int alpha : {1, 2}) {
            const auto ord = korobov_order(alpha, 2);
            const auto ms = wce_shifted_mean(net, ord, 100, 4242);
            CHECK(ms.mean <= wce_squared(generate_points(net), ord) + 3 * ms.stderror);
        }
    }
    SUBCASE("Monte Carlo agrees with the truncated dual series") {
        const auto ord = korobov_order(1, 2);
        const auto g = hammersley(2, 4);
        const auto ms = wce_shifted_mean(g, ord, 150, 555);
        const double series = dual_wce_series(g, ord, 5);
        CHECK(std::abs(ms.mean - series) <= 0.05 * series + 3 * ms.stderror);
    }
}

TEST_CASE("cell caps are enforced") {
    const auto ord = korobov_order(1, 2);
    CHECK_THROWS_AS(r_coeff(1 << 10, 1, ord, 10), CapExceeded);
    CHECK_THROWS_AS(r_diag_table(ord, 8, 10), CapExceeded);
    CHECK_THROWS_AS(dual_wce_series(golden_interleaved_net(), ord, 0, 3), CapExceeded);
}
