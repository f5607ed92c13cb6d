#include "hodnet/formats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace hodnet {

namespace {

std::int64_t parse_int64(const std::string& s) {
    std::int64_t v = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw std::invalid_argument("expected integer, got '" + s + "'");
    return v;
}

}  // namespace

Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_int64(s));
    return Rational(parse_int64(s.substr(0, slash)), parse_int64(s.substr(slash + 1)));
}

std::string generator_set_to_json(const GeneratorSet& g) {
    g.validate();
    nlohmann::json j;
    j["b"] = g.b;
    j["m"] = g.m;
    j["s"] = g.s;
    auto mats = nlohmann::json::array();
    for (const auto& c : g.matrices) {
        auto rows = nlohmann::json::array();
        for (int r = 0; r < c.rows(); ++r) rows.push_back(c.row(r));
        mats.push_back(std::move(rows));
    }
    j["matrices"] = std::move(mats);
    if (g.declared_quality) {
        j["declared_quality"] = {{"t", g.declared_quality->t},
                                 {"alpha", g.declared_quality->alpha},
                                 {"beta_num", g.declared_quality->beta.num},
                                 {"beta_den", g.declared_quality->beta.den}};
    } else {
        j["declared_quality"] = nullptr;
    }
    return j.dump(2) + "\n";
}

GeneratorSet generator_set_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed generator JSON: ") + e.what());
    }
    GeneratorSet g;
    try {
        g.b = j.at("b").get<int>();
        g.m = j.at("m").get<int>();
        g.s = j.at("s").get<int>();
        for (const auto& mat : j.at("matrices")) {
            std::vector<int> entries;
            entries.reserve(static_cast<std::size_t>(g.m) * g.m);
            for (const auto& row : mat)
                for (const auto& e : row) entries.push_back(e.get<int>());
            g.matrices.emplace_back(g.b, g.m, g.m, std::move(entries));
        }
        if (j.contains("declared_quality") && !j.at("declared_quality").is_null()) {
            const auto& q = j.at("declared_quality");
            g.declared_quality = DeclaredQuality{
                q.at("t").get<std::int64_t>(), q.at("alpha").get<int>(),
                Rational(q.at("beta_num").get<std::int64_t>(), q.at("beta_den").get<std::int64_t>())};
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed generator JSON: ") + e.what());
    }
    g.validate();
    return g;
}

std::string quality_report_json(const NetQuality& q, const std::string& method, bool dual_computed) {
    nlohmann::json j;
    j["t"] = q.t;
    j["alpha"] = q.alpha;
    j["beta"] = q.beta.str();
    j["strict"] = q.strict;
    j["method"] = method;
    if (q.dual_min_weight)
        j["dual_min_weight"] = *q.dual_min_weight;
    else if (q.dual_trivial)
        j["dual_min_weight"] = "infinite";
    else
        j["dual_min_weight"] = nullptr;
    (void)dual_computed;
    return j.dump(2) + "\n";
}

std::string shift_to_json(const DigitShift& sh, std::uint64_t seed) {
    nlohmann::json j;
    j["b"] = sh.b;
    j["s"] = sh.s;
    j["p"] = sh.p;
    j["seed"] = seed;
    auto rows = nlohmann::json::array();
    for (int jdim = 0; jdim < sh.s; ++jdim) {
        std::vector<int> row(sh.digits.begin() + static_cast<std::size_t>(jdim) * sh.p,
                             sh.digits.begin() + static_cast<std::size_t>(jdim + 1) * sh.p);
        rows.push_back(std::move(row));
    }
    j["digits"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string points_to_csv(const PointSet& p, bool decimal) {
    std::ostringstream out;
    for (int j = 0; j < p.s; ++j) out << (j ? "," : "") << "j" << (j + 1);
    out << "\n";
    const std::uint64_t den = pow_u64(p.b, p.m);
    const int digits = static_cast<int>(std::ceil(p.m * std::log10(static_cast<double>(p.b)))) + 2;
    for (std::size_t n = 0; n < p.size(); ++n) {
        for (int j = 0; j < p.s; ++j) {
            if (j) out << ",";
            const std::uint64_t num = p.at(n, j);
            if (decimal) {
                std::ostringstream d;
                d.setf(std::ios::fixed);
                d.precision(digits);
                d << (static_cast<long double>(num) / static_cast<long double>(den));
                out << d.str();
            } else {
                const std::uint64_t g = std::gcd(num, den);
                if (num == 0)
                    out << "0";
                else if (den / g == 1)
                    out << num / g;
                else
                    out << num / g << "/" << den / g;
            }
        }
        out << "\n";
    }
    return out.str();
}

std::vector<long double> points_from_csv(const std::string& text, int& s_out) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("points CSV: empty input");
    s_out = 1 + static_cast<int>(std::count(line.begin(), line.end(), ','));

    std::vector<long double> coords;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        int got = 0;
        while (std::getline(row, field, ',')) {
            const auto slash = field.find('/');
            long double v;
            try {
                if (slash == std::string::npos) {
                    std::size_t used = 0;
                    v = std::stold(field, &used);
                    if (used != field.size()) throw std::invalid_argument(field);
                } else {
                    v = static_cast<long double>(parse_int64(field.substr(0, slash))) /
                        static_cast<long double>(parse_int64(field.substr(slash + 1)));
                }
            } catch (const std::exception&) {
                throw std::invalid_argument("points CSV: bad field '" + field + "'");
            }
            if (v < 0.0L || v >= 1.0L) throw std::invalid_argument("points CSV: coordinate out of [0,1)");
            coords.push_back(v);
            ++got;
        }
        if (got != s_out) throw std::invalid_argument("points CSV: ragged row");
    }
    if (coords.empty()) throw std::invalid_argument("points CSV: no points");
    return coords;
}

double fitted_slope(const std::vector<ConvergenceRow>& rows) {
    if (rows.size() < 2) throw std::invalid_argument("fitted_slope: need at least two rows");
    double sx = 0, sy = 0;
    for (const auto& r : rows) {
        sx += std::log(static_cast<double>(r.n));
        sy += std::log(r.wce);
    }
    const double mx = sx / rows.size(), my = sy / rows.size();
    double sxx = 0, sxy = 0;
    for (const auto& r : rows) {
        const double dx = std::log(static_cast<double>(r.n)) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(r.wce) - my);
    }
    return sxy / sxx;
}

std::string convergence_to_csv(const std::vector<ConvergenceRow>& rows, int b) {
    std::ostringstream out;
    out << "m,N,wce,log_b_wce,slope\n";
    out.precision(12);
    const double logb = std::log(static_cast<double>(b));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << rows[i].m << "," << rows[i].n << "," << rows[i].wce << "," << std::log(rows[i].wce) / logb << ",";
        if (i > 0) {
            const double dy = std::log(rows[i].wce) - std::log(rows[i - 1].wce);
            const double dx = std::log(static_cast<double>(rows[i].n)) - std::log(static_cast<double>(rows[i - 1].n));
            out << dy / dx;
        }
        out << "\n";
    }
    if (rows.size() >= 2) {
        std::vector<ConvergenceRow> top(rows.begin() + rows.size() / 2, rows.end());
        if (top.size() >= 2) out << "# fitted_slope_top_half," << fitted_slope(top) << "\n";
    }
    return out.str();
}

}  // namespace hodnet
