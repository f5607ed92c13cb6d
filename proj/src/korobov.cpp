#include "hodnet/korobov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace hodnet {

namespace {

constexpr double kNegativeE2Tolerance = 1e-9;

template <typename T>
struct NeumaierSum {
    T sum = 0;
    T comp = 0;
    void add(T v) {
        const T t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    T value() const { return sum + comp; }
};

int digit_count(std::uint64_t k, int b) {
    int a = 0;
    while (k != 0) {
        k /= b;
        ++a;
    }
    return a;
}

long double kernel_scale_ld(int alpha) {
    long double fact = 1;
    for (int i = 2; i <= 2 * alpha; ++i) fact *= i;
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    long double p = 1;
    for (int i = 0; i < 2 * alpha; ++i) p *= two_pi;
    const long double sign = (alpha % 2 == 1) ? 1.0L : -1.0L;  // (-1)^(alpha+1)
    return sign * p / fact;
}

std::vector<long double> bernoulli_ld(const KorobovOrder& ord) {
    std::vector<long double> c;
    c.reserve(ord.bernoulli.size());
    for (const auto& r : ord.bernoulli)
        c.push_back(static_cast<long double>(r.num) / static_cast<long double>(r.den));
    return c;
}

long double horner_ld(const std::vector<long double>& c, long double x) {
    long double v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

void require_cell_cap(int b, int a, int cap, const char* who) {
    const double bits = 2.0 * a * std::log2(static_cast<double>(b));
    if (bits > static_cast<double>(cap))
        throw CapExceeded(std::string(who) + ": b^(2a) exceeds 2^" + std::to_string(cap) +
                          " cell pairs (a=" + std::to_string(a) + ")");
}

// Closed-form cell integrals of |x-y|^j over the grid of b^a cells:
// same cell: 2 / (b^(a(j+2)) (j+1)(j+2));
// cells at index distance w >= 1:
//   2 j! / b^(a(j+2)) * sum_l w^(j-2l) / ((j-2l)! (2l+2)!).
// Rescaled by (j+1)(j+2) b^(a(j+2)) / 2 the values become integers,
//   Q_j(0) = 1,  Q_j(w) = sum_l binom(j+2, 2l+2) w^(j-2l),
// so the heavily cancelling cell sums can be accumulated exactly and only
// the final prefactor touches floating point.
using BigInt = __int128;

long double cell_prefactor(int j, int a, int b) {
    return 2.0L / ((j + 1.0L) * (j + 2.0L) * std::pow(static_cast<long double>(b), static_cast<long double>(a) * (j + 2)));
}

std::vector<BigInt> cell_integer_table(int j, std::uint64_t n_cells) {
    std::vector<BigInt> tab(n_cells);
    tab[0] = 1;
    std::vector<long long> binom;  // binom(j+2, 2l+2)
    for (int l = 0; 2 * l <= j; ++l) {
        long long c = 1;
        for (int i = 1; i <= 2 * l + 2; ++i) c = c * (j + 2 - i + 1) / i;
        binom.push_back(c);
    }
    for (std::uint64_t w = 1; w < n_cells; ++w) {
        BigInt wpow = 1;
        for (int i = 0; i < j; ++i) wpow *= static_cast<BigInt>(w);
        BigInt v = 0;
        const BigInt w2 = static_cast<BigInt>(w) * static_cast<BigInt>(w);
        for (std::size_t l = 0; l < binom.size(); ++l) {
            v += binom[l] * wpow;
            if (l + 1 < binom.size()) wpow /= w2;  // exact: the power stays >= 0
        }
        tab[w] = v;
    }
    return tab;
}

// Cell sums stay below 28 b^(a(j+2)); keep well inside the 127-bit range.
void require_exact_range(int b, int a, int jmax, const char* who) {
    const double bits = std::log2(28.0) + static_cast<double>(a) * (jmax + 2) * std::log2(static_cast<double>(b));
    if (bits > 120.0)
        throw CapExceeded(std::string(who) + ": exact cell accumulation would overflow (a=" + std::to_string(a) + ")");
}

std::vector<std::complex<double>> unit_roots(int b) {
    std::vector<std::complex<double>> w(b);
    for (int r = 0; r < b; ++r) {
        const double ang = 2.0 * std::numbers::pi * r / b;
        w[r] = {std::cos(ang), std::sin(ang)};
    }
    return w;
}

std::vector<std::complex<long double>> unit_roots_ld(int b) {
    std::vector<std::complex<long double>> w(b);
    for (int r = 0; r < b; ++r) {
        const long double ang = 2.0L * std::numbers::pi_v<long double> * r / b;
        w[r] = {std::cos(ang), std::sin(ang)};
    }
    return w;
}

// Per-power Walsh-weighted cell sums: out[j] = I_j(k, l) for j = 0..jmax.
// The accumulation per exponent residue is exact; cancellation between the
// residue classes happens on integers.
std::vector<std::complex<long double>> cell_walsh_integrals(std::uint64_t k, std::uint64_t l, int jmax, int b, int a,
                                                             int cap, const char* who) {
    require_cell_cap(b, a, cap, who);
    require_exact_range(b, a, jmax, who);
    const std::uint64_t n = pow_u64(b, a);

    std::vector<int> ek(n), el(n);
    for (std::uint64_t u = 0; u < n; ++u) {
        ek[u] = walsh_exponent(k, u, b, a);
        el[u] = walsh_exponent(l, u, b, a);
    }
    std::vector<std::vector<BigInt>> cells;
    for (int j = 0; j <= jmax; ++j) cells.push_back(cell_integer_table(j, n));

    std::vector<BigInt> acc(static_cast<std::size_t>(b) * (jmax + 1), 0);
    for (std::uint64_t u = 0; u < n; ++u) {
        const int eu = ek[u];
        for (std::uint64_t v = 0; v < n; ++v) {
            const int r = (el[v] - eu + b) % b;
            const std::uint64_t w = u > v ? u - v : v - u;
            auto* slot = &acc[static_cast<std::size_t>(r) * (jmax + 1)];
            for (int j = 0; j <= jmax; ++j) slot[j] += cells[j][w];
        }
    }
    const auto roots = unit_roots_ld(b);
    std::vector<std::complex<long double>> out(jmax + 1);
    for (int j = 0; j <= jmax; ++j) {
        std::complex<long double> v = 0;
        if (b == 2) {
            // exact integer difference of the two residue classes
            v = static_cast<long double>(acc[j] - acc[static_cast<std::size_t>(jmax + 1) + j]);
        } else {
            for (int r = 0; r < b; ++r)
                v += roots[r] * static_cast<long double>(acc[static_cast<std::size_t>(r) * (jmax + 1) + j]);
        }
        out[j] = v * cell_prefactor(j, a, b);
    }
    return out;
}

int reverse_digits(std::uint64_t e, int b, int a) {
    std::uint64_t r = 0;
    for (int i = 0; i < a; ++i) {
        r = r * b + e % b;
        e /= b;
    }
    return static_cast<int>(r);
}

}  // namespace

KorobovOrder korobov_order(int alpha, int b) {
    if (alpha < 1 || alpha > 3)
        throw std::invalid_argument("korobov_order: alpha must be in {1,2,3}, got " + std::to_string(alpha));
    if (!is_prime(b)) throw std::invalid_argument("korobov_order: base must be prime");
    KorobovOrder ord;
    ord.alpha = alpha;
    ord.b = b;
    switch (alpha) {
        case 1:  // x^2 - x + 1/6
            ord.bernoulli = {Rational(1, 6), Rational(-1), Rational(1)};
            break;
        case 2:  // x^4 - 2x^3 + x^2 - 1/30
            ord.bernoulli = {Rational(-1, 30), Rational(0), Rational(1), Rational(-2), Rational(1)};
            break;
        default:  // x^6 - 3x^5 + 5/2 x^4 - 1/2 x^2 + 1/42
            ord.bernoulli = {Rational(1, 42), Rational(0), Rational(-1, 2), Rational(0),
                             Rational(5, 2),  Rational(-3), Rational(1)};
            break;
    }
    return ord;
}

double kernel1(const KorobovOrder& ord, double x, double y) {
    const long double d = std::fabs(static_cast<long double>(x) - y);
    return static_cast<double>(1.0L + kernel_scale_ld(ord.alpha) * horner_ld(bernoulli_ld(ord), d));
}

double kernel(const KorobovOrder& ord, const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("kernel: dimension mismatch");
    double v = 1;
    for (std::size_t j = 0; j < x.size(); ++j) v *= kernel1(ord, x[j], y[j]);
    return v;
}

double wce_squared_coords(const std::vector<long double>& coords, std::size_t n, int s, const KorobovOrder& ord) {
    if (n < 1) throw std::invalid_argument("wce: empty point set");
    const auto bern = bernoulli_ld(ord);
    const long double scale = kernel_scale_ld(ord.alpha);

    // kernel-minus-one of a single coordinate pair
    auto g1 = [&](long double xa, long double xb) { return scale * horner_ld(bern, std::fabs(xa - xb)); };

    // diagonal term: prod_j (1 + g(0)) - 1, built without forming the product
    const long double g0 = scale * bern[0];
    long double diag = 0;
    for (int j = 0; j < s; ++j) diag += g0 + diag * g0;

    NeumaierSum<long double> total;
    if (s == 1) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const long double xi = coords[i];
            for (std::size_t h = i + 1; h < n; ++h) total.add(g1(xi, coords[h]));
        }
    } else {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const long double* xi = &coords[i * s];
            for (std::size_t h = i + 1; h < n; ++h) {
                const long double* xh = &coords[h * s];
                long double prod = 0;
                for (int j = 0; j < s; ++j) {
                    const long double g = g1(xi[j], xh[j]);
                    prod += g + prod * g;
                }
                total.add(prod);
            }
        }
    }
    const long double nn = static_cast<long double>(n);
    const long double e2 = (nn * diag + 2.0L * total.value()) / (nn * nn);
    if (e2 < -kNegativeE2Tolerance)
        throw std::runtime_error("wce: square error " + std::to_string(static_cast<double>(e2)) +
                                 " below numerical-consistency tolerance");
    return e2 < 0 ? 0.0 : static_cast<double>(e2);
}

namespace {

std::vector<long double> point_coords(const PointSet& p) {
    const long double den = static_cast<long double>(pow_u64(p.b, p.m));
    std::vector<long double> coords(p.num.size());
    for (std::size_t i = 0; i < p.num.size(); ++i) coords[i] = static_cast<long double>(p.num[i]) / den;
    return coords;
}

}  // namespace

double wce_squared(const PointSet& p, const KorobovOrder& ord) {
    return wce_squared_coords(point_coords(p), p.size(), p.s, ord);
}

double wce(const PointSet& p, const KorobovOrder& ord) { return std::sqrt(wce_squared(p, ord)); }

std::complex<double> r_coeff(std::uint64_t k, std::uint64_t l, const KorobovOrder& ord, int cap) {
    const long double delta = (k == 0 && l == 0) ? 1.0L : 0.0L;
    const int a = std::max(digit_count(std::max(k, l), ord.b), 1);
    const auto ints = cell_walsh_integrals(k, l, 2 * ord.alpha, ord.b, a, cap, "r_coeff");
    std::complex<long double> acc = 0;
    for (std::size_t j = 0; j < ord.bernoulli.size(); ++j) {
        const long double cj = static_cast<long double>(ord.bernoulli[j].num) / ord.bernoulli[j].den;
        acc += cj * ints[j];
    }
    acc = delta + kernel_scale_ld(ord.alpha) * acc;
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

std::complex<double> walsh_bernoulli_integral(std::uint64_t k, int j, const KorobovOrder& ord, int cap) {
    if (j < 0) throw std::invalid_argument("walsh_bernoulli_integral: j must be >= 0");
    const int a = std::max(digit_count(k, ord.b), 1);
    const auto v = cell_walsh_integrals(k, k, j, ord.b, a, cap, "walsh_bernoulli_integral")[static_cast<std::size_t>(j)];
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

std::vector<double> r_diag_table(const KorobovOrder& ord, int digits, int cap) {
    if (digits < 1) throw std::invalid_argument("r_diag_table: digits must be >= 1");
    require_cell_cap(ord.b, digits, cap, "r_diag_table");
    const int b = ord.b;
    const int a = digits;
    const std::uint64_t n = pow_u64(b, a);
    const int jmax = 2 * ord.alpha;
    require_exact_range(b, a, jmax, "r_diag_table");

    std::vector<double> result(n, 0.0);
    const long double scale = kernel_scale_ld(ord.alpha);

    for (int j = 0; j <= jmax; ++j) {
        if (ord.bernoulli[j].num == 0) continue;
        const auto cells = cell_integer_table(j, n);

        // group cell pairs by digit-wise index difference e = v (-) u
        std::vector<BigInt> grouped(n, 0);
        for (std::uint64_t e = 0; e < n; ++e) {
            BigInt acc = 0;
            if (b == 2) {
                for (std::uint64_t u = 0; u < n; ++u) {
                    const std::uint64_t v = u ^ e;
                    acc += cells[u > v ? u - v : v - u];
                }
            } else {
                for (std::uint64_t u = 0; u < n; ++u) {
                    const std::uint64_t v = digit_add(u, e, b, a);
                    acc += cells[u > v ? u - v : v - u];
                }
            }
            grouped[e] = acc;
        }

        // I_j(k) = sum_e wal_k(e / b^a) grouped[e]: digit-reverse, then a
        // tensor DFT over (Z_b)^a
        const long double cj = static_cast<long double>(ord.bernoulli[j].num) / ord.bernoulli[j].den;
        const long double factor = scale * cj * cell_prefactor(j, a, b);

        if (b == 2) {
            // +-1 characters: the whole transform stays on exact integers
            std::vector<BigInt> buf(n);
            for (std::uint64_t e = 0; e < n; ++e) buf[reverse_digits(e, b, a)] = grouped[e];
            for (std::uint64_t len = 1; len < n; len <<= 1)
                for (std::uint64_t base = 0; base < n; base += len << 1)
                    for (std::uint64_t off = 0; off < len; ++off) {
                        const BigInt x = buf[base + off];
                        const BigInt y = buf[base + off + len];
                        buf[base + off] = x + y;
                        buf[base + off + len] = x - y;
                    }
            for (std::uint64_t kk = 0; kk < n; ++kk)
                result[kk] += static_cast<double>(factor * static_cast<long double>(buf[kk]));
        } else {
            std::vector<std::complex<double>> buf(n);
            const auto roots = unit_roots(b);
            for (std::uint64_t e = 0; e < n; ++e)
                buf[reverse_digits(e, b, a)] = static_cast<double>(static_cast<long double>(grouped[e]));
            std::vector<std::complex<double>> lane(b);
            std::uint64_t stride = 1;
            for (int t = 0; t < a; ++t) {
                for (std::uint64_t base = 0; base < n; base += stride * b) {
                    for (std::uint64_t off = 0; off < stride; ++off) {
                        for (int c = 0; c < b; ++c) lane[c] = buf[base + off + static_cast<std::uint64_t>(c) * stride];
                        for (int c = 0; c < b; ++c) {
                            std::complex<double> acc = 0;
                            for (int cp = 0; cp < b; ++cp) acc += roots[c * cp % b] * lane[cp];
                            buf[base + off + static_cast<std::uint64_t>(c) * stride] = acc;
                        }
                    }
                }
                stride *= b;
            }
            for (std::uint64_t kk = 0; kk < n; ++kk)
                result[kk] += static_cast<double>(factor * static_cast<long double>(buf[kk].real()));
        }
    }
    result[0] += 1.0;  // delta term of r(0,0)
    return result;
}

bool rr_cauchy_check(std::uint64_t k, std::uint64_t l, const KorobovOrder& ord, int cap) {
    const double lhs = std::norm(r_coeff(k, l, ord, cap));
    const double rhs = r_coeff(k, k, ord, cap).real() * r_coeff(l, l, ord, cap).real();
    return lhs <= rhs + 1e-12;
}

ShiftedMean mean_square_wce(const GeneratorSet& g, const KorobovOrder& ord, const std::vector<DigitShift>& shifts) {
    if (shifts.empty()) throw std::invalid_argument("mean_square_wce: no shifts");
    const PointSet base = generate_points(g);
    std::vector<double> e2s;
    e2s.reserve(shifts.size());
    for (const auto& sh : shifts) e2s.push_back(wce_squared(apply_shift(base, sh), ord));

    ShiftedMean out;
    for (double v : e2s) out.mean += v;
    out.mean /= static_cast<double>(e2s.size());
    if (e2s.size() > 1) {
        double var = 0;
        for (double v : e2s) var += (v - out.mean) * (v - out.mean);
        var /= static_cast<double>(e2s.size() - 1);
        out.stderror = std::sqrt(var / static_cast<double>(e2s.size()));
    }
    return out;
}

ShiftedMean wce_shifted_mean(const GeneratorSet& g, const KorobovOrder& ord, int samples, std::uint64_t seed) {
    if (samples < 2) throw std::invalid_argument("wce_shifted_mean: samples must be >= 2");
    g.validate();
    const int p = std::max(g.m, default_shift_precision(g.b));
    std::mt19937_64 master(seed);
    std::vector<DigitShift> shifts;
    shifts.reserve(samples);
    for (int i = 0; i < samples; ++i) shifts.push_back(sample_shift(g.b, g.s, p, master()));
    return mean_square_wce(g, ord, shifts);
}

double dual_wce_series(const GeneratorSet& g, const KorobovOrder& ord, int extension, int cap) {
    g.validate();
    if (extension < 0) throw std::invalid_argument("dual_wce_series: extension must be >= 0");
    if (ord.b != g.b) throw std::invalid_argument("dual_wce_series: base mismatch");

    const auto basis = dual_nullspace_basis(g);
    const int nd = static_cast<int>(basis.size());
    if (nd > cap)
        throw CapExceeded("dual_wce_series: nullspace dimension " + std::to_string(nd) +
                          " exceeds enumeration cap " + std::to_string(cap));

    const auto table = r_diag_table(ord, g.m + extension, cap);
    const std::uint64_t bm = pow_u64(g.b, g.m);
    const std::uint64_t lifts = pow_u64(g.b, extension);
    const int cols = g.s * g.m;

    std::vector<int> combo(nd, 0);
    std::vector<int> v(cols, 0);
    std::vector<std::uint64_t> h(g.s, 0);
    std::vector<std::uint64_t> lift(g.s, 0);
    NeumaierSum<double> sum;

    const std::uint64_t count = nd == 0 ? 1 : pow_u64(g.b, nd);
    for (std::uint64_t c = 0; c < count; ++c) {
        if (c > 0) {
            for (int i = 0; i < nd; ++i) {
                if (++combo[i] < g.b) break;
                combo[i] = 0;
            }
            std::fill(v.begin(), v.end(), 0);
            for (int i = 0; i < nd; ++i) {
                if (combo[i] == 0) continue;
                for (int c2 = 0; c2 < cols; ++c2) v[c2] = (v[c2] + combo[i] * basis[i][c2]) % g.b;
            }
            for (int j = 0; j < g.s; ++j) {
                std::uint64_t kj = 0;
                for (int l = g.m - 1; l >= 0; --l) kj = kj * g.b + static_cast<std::uint64_t>(v[j * g.m + l]);
                h[j] = kj;
            }
        }
        // all lifts of h by higher digits (free coordinates of the dual)
        std::fill(lift.begin(), lift.end(), 0);
        std::uint64_t n_lifts = 1;
        for (int j = 0; j < g.s; ++j) n_lifts *= lifts;
        for (std::uint64_t li = 0; li < n_lifts; ++li) {
            if (li > 0) {
                for (int j = 0; j < g.s; ++j) {
                    if (++lift[j] < lifts) break;
                    lift[j] = 0;
                }
            }
            bool zero = true;
            double term = 1;
            for (int j = 0; j < g.s; ++j) {
                const std::uint64_t kj = h[j] + bm * lift[j];
                if (kj != 0) zero = false;
                term *= table[kj];
            }
            if (zero) continue;
            sum.add(term);
        }
    }
    return sum.value();
}

}  // namespace hodnet
