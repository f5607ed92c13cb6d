#include "hodnet/verify.hpp"

#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>

#include "hodnet/engine.hpp"
#include "hodnet/golden.hpp"
#include "hodnet/korobov.hpp"
#include "hodnet/quality.hpp"

namespace hodnet {

namespace {

std::string fraction(std::uint64_t num, std::uint64_t den) {
    const std::uint64_t g = std::gcd(num, den);
    if (num == 0) return "0";
    if (den / g == 1) return std::to_string(num / g);
    return std::to_string(num / g) + "/" + std::to_string(den / g);
}

CheckResult check_tvalue(const std::string& name, const GeneratorSet& g, int alpha, std::int64_t expected) {
    CheckResult r{name, false, ""};
    const NetQuality by_def = strict_t(g, alpha, Rational(alpha));
    const NetQuality by_dual = strict_t_dual(g, alpha, Rational(alpha));
    std::ostringstream d;
    d << "definition t=" << by_def.t << ", dual t=" << by_dual.t << ", expected " << expected;
    r.detail = d.str();
    r.pass = by_def.t == expected && by_dual.t == expected;
    return r;
}

}  // namespace

CheckResult check_golden_points(const GeneratorSet& net) {
    CheckResult r{"reference points", false, ""};
    const auto expected = golden_point_numerators();
    const PointSet p = generate_points(net);
    if (p.size() != expected.size() || p.s != 2) {
        r.detail = "point count mismatch";
        return r;
    }
    const std::uint64_t den = pow_u64(net.b, net.m);
    for (std::size_t n = 0; n < expected.size(); ++n) {
        if (p.at(n, 0) != expected[n].first || p.at(n, 1) != expected[n].second) {
            std::ostringstream d;
            d << "point " << n << " is (" << fraction(p.at(n, 0), den) << "," << fraction(p.at(n, 1), den)
              << "), expected (" << fraction(expected[n].first, den) << "," << fraction(expected[n].second, den)
              << ")";
            r.detail = d.str();
            return r;
        }
    }
    r.pass = true;
    r.detail = "all 16 points match";
    return r;
}

std::vector<CheckResult> golden_checks(bool inject_fault) {
    std::vector<CheckResult> out;
    GeneratorSet net = golden_interleaved_net();
    if (inject_fault) net.matrices[0].at(0, 0) ^= 1;

    out.push_back(check_golden_points(net));

    out.push_back(check_tvalue("strict t, alpha=1", net, 1, 1));
    out.push_back(check_tvalue("strict t, alpha=2", net, 2, 3));
    out.push_back(check_tvalue("strict t of the two-dimensional base pair, alpha=2", hammersley(2, 4), 2, 4));
    {
        CheckResult r{"interleaved one-dimensional net: t=0 at alpha=2 for even m", true, ""};
        for (int m : {2, 4, 6, 8}) {
            const auto q = strict_t(interleave(hammersley(2, m), 2), 2, Rational(2));
            const auto qd = strict_t_dual(interleave(hammersley(2, m), 2), 2, Rational(2));
            if (q.t != 0 || qd.t != 0) {
                r.pass = false;
                r.detail = "m=" + std::to_string(m) + " gave t=" + std::to_string(q.t);
                break;
            }
        }
        if (r.pass) r.detail = "m in {2,4,6,8}";
        out.push_back(r);
    }

    {
        CheckResult r{"interleave t bound values", false, ""};
        const auto b1 = interleave_t_bound(1, 2, 2, 2);
        const auto b2 = interleave_t_bound(0, 1, 2, 2);
        r.pass = b1 == 4 && b2 == 1;
        r.detail = "bound(1,2,2,2)=" + std::to_string(b1) + ", bound(0,1,2,2)=" + std::to_string(b2) +
                   ", expected 4 and 1";
        out.push_back(r);
    }

    {
        CheckResult r{"character sum vanishes below the dual minimum weight", true, ""};
        int checked = 0;
        for (std::uint64_t k1 = 0; k1 < 16; ++k1)
            for (std::uint64_t k2 = 0; k2 < 16; ++k2) {
                if (k1 == 0 && k2 == 0) continue;
                if (mu_weight_vec({k1, k2}, 2, 2) > 5) continue;
                ++checked;
                if (walsh_net_sum(net, {k1, k2}) != 0) {
                    r.pass = false;
                    r.detail = "k=(" + std::to_string(k1) + "," + std::to_string(k2) + ") lies in the dual";
                }
            }
        if (walsh_net_sum(net, {0, 0}) != 1) {
            r.pass = false;
            r.detail = "k=0 must give 1";
        }
        if (r.pass) r.detail = std::to_string(checked) + " modes checked";
        out.push_back(r);
    }

    {
        CheckResult r{"kernel coefficient identities", true, ""};
        const auto ord = korobov_order(2, 2);
        if (std::abs(r_coeff(0, 0, ord).real() - 1.0) > 1e-12) {
            r.pass = false;
            r.detail = "r(0,0) != 1";
        }
        for (std::uint64_t k = 1; k <= 16 && r.pass; ++k)
            if (std::abs(r_coeff(0, k, ord)) > 1e-12) {
                r.pass = false;
                r.detail = "r(0," + std::to_string(k) + ") != 0";
            }
        for (std::uint64_t k = 1; k <= 8 && r.pass; ++k) {
            const double lhs = r_coeff(2 * k, 2 * k, ord).real();
            const double rhs = std::pow(2.0, -4.0) * r_coeff(k, k, ord).real();
            if (std::abs(lhs - rhs) > 1e-12 * std::abs(rhs)) {
                r.pass = false;
                r.detail = "scaling fails at k=" + std::to_string(k);
            }
        }
        if (r.pass) r.detail = "delta, vanishing and scaling hold";
        out.push_back(r);
    }

    {
        CheckResult r{"exhaustive shift average matches the pair identity", true, ""};
        const int b = 2, p = 3, n = 1 << p;
        for (int k = 0; k < n && r.pass; ++k)
            for (int l = 0; l < n && r.pass; ++l)
                for (int x1 = 0; x1 < n && r.pass; ++x1)
                    for (int x2 = 0; x2 < n && r.pass; ++x2) {
                        std::complex<double> acc = 0;
                        for (int sg = 0; sg < n; ++sg) {
                            const auto z1 = digit_add(x1, sg, b, p);
                            const auto z2 = digit_add(x2, sg, b, p);
                            acc += walsh_eval(k, z1, b, p).value * std::conj(walsh_eval(l, z2, b, p).value);
                        }
                        acc /= static_cast<double>(n);
                        const std::complex<double> want =
                            k == l ? walsh_eval(k, x1, b, p).value * std::conj(walsh_eval(k, x2, b, p).value)
                                   : std::complex<double>(0);
                        if (std::abs(acc - want) > 1e-12) {
                            r.pass = false;
                            r.detail = "k=" + std::to_string(k) + " l=" + std::to_string(l);
                        }
                    }
        if (r.pass) r.detail = "all pairs at p=3";
        out.push_back(r);
    }

    {
        CheckResult r{"shift-averaged square error below the square worst-case error", false, ""};
        const auto ord = korobov_order(2, 2);
        const double e2 = wce_squared(generate_points(net), ord);
        const auto ms = wce_shifted_mean(net, ord, 64, 20240601);
        r.pass = ms.mean <= e2 + 3 * ms.stderror;
        std::ostringstream d;
        d << "mean=" << ms.mean << " vs e2=" << e2 << " (stderr " << ms.stderror << ")";
        r.detail = d.str();
        out.push_back(r);
    }

    return out;
}

}  // namespace hodnet
