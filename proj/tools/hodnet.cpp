// Command-line front end: net construction, point generation, quality
// certification, worst-case error evaluation and convergence sweeps.
//
// Exit codes: 0 success, 2 bad arguments, 3 enumeration cap exceeded,
// 4 verification failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hodnet/formats.hpp"
#include "hodnet/golden.hpp"
#include "hodnet/verify.hpp"

namespace {

using namespace hodnet;

int enum_cap_from_env() {
    if (const char* v = std::getenv("HODNET_ENUM_CAP")) {
        try {
            const int cap = std::stoi(v);
            if (cap >= 1) return cap;
        } catch (const std::exception&) {
        }
        throw std::invalid_argument("HODNET_ENUM_CAP must be a positive integer");
    }
    return kDefaultEnumCap;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << text;
}

GeneratorSet build_family(const std::string& family, const std::string& from, int b, int m, int s, int d) {
    if (family == "hammersley") return hammersley(b, m);
    if (family == "faure") return faure(b, m, s);
    if (family == "interleaved") {
        GeneratorSet base = from == "faure" ? faure(b, m, s) : hammersley(b, m);
        return interleave(base, d);
    }
    throw std::invalid_argument("unknown family '" + family + "'");
}

struct MRange {
    int lo = 0;
    int hi = -1;
};

MRange parse_m_range(const std::string& text) {
    const auto dots = text.find("..");
    MRange r;
    if (dots == std::string::npos) {
        r.lo = r.hi = std::stoi(text);
        return r;
    }
    r.lo = std::stoi(text.substr(0, dots));
    r.hi = std::stoi(text.substr(dots + 2));
    return r;
}

int run(int argc, char** argv) {
    CLI::App app{"higher-order digital nets: construction, certification and Korobov-space error evaluation"};
    app.require_subcommand(1);
    const int cap = enum_cap_from_env();

    // construct
    auto* c_cmd = app.add_subcommand("construct", "emit a generator set as JSON");
    std::string c_family, c_from = "hammersley", c_out;
    int c_b = 2, c_m = 4, c_s = 1, c_d = 1;
    c_cmd->add_option("family", c_family, "hammersley | faure | interleaved")->required();
    c_cmd->add_option("--base,-b", c_b, "prime base");
    c_cmd->add_option("--m", c_m, "digits per point")->required();
    c_cmd->add_option("--s", c_s, "dimension (faure; for interleaved: the base net dimension)");
    c_cmd->add_option("--d", c_d, "interleaving factor");
    c_cmd->add_option("--from", c_from, "base family for interleaved");
    c_cmd->add_option("--output,-o", c_out, "output path (default stdout)");

    // points
    auto* p_cmd = app.add_subcommand("points", "generate the exact net points as CSV");
    std::string p_net, p_out;
    bool p_decimal = false;
    std::int64_t p_seed = -1;
    p_cmd->add_option("net", p_net, "generator set JSON path")->required();
    p_cmd->add_flag("--decimal", p_decimal, "decimal output instead of exact fractions");
    p_cmd->add_option("--shift-seed", p_seed, "apply one sampled digital shift with this seed");
    p_cmd->add_option("--output,-o", p_out, "output path (default stdout)");

    // tvalue
    auto* t_cmd = app.add_subcommand("tvalue", "certify the strict quality parameters");
    std::string t_net, t_beta, t_method = "definition", t_out;
    int t_alpha = 1;
    t_cmd->add_option("net", t_net, "generator set JSON path")->required();
    t_cmd->add_option("--alpha", t_alpha, "smoothness")->required();
    t_cmd->add_option("--beta", t_beta, "rational beta as p/q (default alpha)");
    t_cmd->add_option("--method", t_method, "definition | dual")->check(CLI::IsMember({"definition", "dual"}));
    t_cmd->add_option("--output,-o", t_out, "output path (default stdout)");

    // wce
    auto* w_cmd = app.add_subcommand("wce", "worst-case integration error");
    std::string w_in, w_out;
    int w_alpha = 1, w_samples = 16, w_extension = 2;
    bool w_shifted = false, w_series = false;
    std::uint64_t w_seed = 0;
    w_cmd->add_option("input", w_in, "generator set JSON or points CSV path")->required();
    w_cmd->add_option("--alpha", w_alpha, "smoothness in {1,2,3}")->required();
    w_cmd->add_flag("--shifted", w_shifted, "Monte Carlo mean square error over digital shifts");
    w_cmd->add_option("--samples", w_samples, "number of shifts");
    w_cmd->add_option("--seed", w_seed, "shift seed");
    w_cmd->add_flag("--series", w_series, "truncated dual-series value of the shift-averaged square error");
    w_cmd->add_option("--extension", w_extension, "extra digits per component for --series");
    w_cmd->add_option("--output,-o", w_out, "output path (default stdout)");

    // convergence
    auto* v_cmd = app.add_subcommand("convergence", "error sweep over a range of m");
    std::string v_family = "hammersley", v_from = "hammersley", v_range, v_out;
    int v_b = 2, v_s = 1, v_d = 1, v_alpha = 1;
    v_cmd->add_option("--family", v_family, "hammersley | faure | interleaved")->required();
    v_cmd->add_option("--from", v_from, "base family for interleaved");
    v_cmd->add_option("--base,-b", v_b, "prime base");
    v_cmd->add_option("--s", v_s, "dimension (see construct)");
    v_cmd->add_option("--d", v_d, "interleaving factor");
    v_cmd->add_option("--alpha", v_alpha, "smoothness")->required();
    v_cmd->add_option("--m-range", v_range, "inclusive range a..b")->required();
    v_cmd->add_option("--output,-o", v_out, "output path (default stdout)");

    // verify
    auto* y_cmd = app.add_subcommand("verify", "run the reference self-test bundle");
    bool y_fault = false;
    y_cmd->add_flag("--inject-fault", y_fault, "flip one generating-matrix entry first (negative control)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (c_cmd->parsed()) {
        emit(generator_set_to_json(build_family(c_family, c_from, c_b, c_m, c_s, c_d)), c_out);
        return 0;
    }

    if (p_cmd->parsed()) {
        const GeneratorSet g = generator_set_from_json(read_file(p_net));
        PointSet pts = generate_points(g);
        std::string sidecar;
        if (p_seed >= 0) {
            const int prec = std::max(g.m, default_shift_precision(g.b));
            const DigitShift sh = sample_shift(g.b, g.s, prec, static_cast<std::uint64_t>(p_seed));
            pts = apply_shift(pts, sh);
            sidecar = shift_to_json(sh, static_cast<std::uint64_t>(p_seed));
        }
        emit(points_to_csv(pts, p_decimal), p_out);
        if (!sidecar.empty()) {
            if (p_out.empty())
                std::cerr << sidecar;
            else
                emit(sidecar, p_out + ".shift.json");
        }
        return 0;
    }

    if (t_cmd->parsed()) {
        const GeneratorSet g = generator_set_from_json(read_file(t_net));
        const Rational beta = t_beta.empty() ? Rational(t_alpha) : parse_rational(t_beta);
        NetQuality q;
        bool dual_done = false;
        if (t_method == "dual") {
            q = strict_t_dual(g, t_alpha, beta, cap);
            dual_done = true;
        } else {
            q = strict_t(g, t_alpha, beta);
            try {
                const NetQuality qd = strict_t_dual(g, t_alpha, beta, cap);
                if (qd.t != q.t)
                    throw std::runtime_error("internal: definition and dual certifications disagree (" +
                                             std::to_string(q.t) + " vs " + std::to_string(qd.t) + ")");
                q.dual_min_weight = qd.dual_min_weight;
                q.dual_trivial = qd.dual_trivial;
                dual_done = true;
            } catch (const CapExceeded&) {
                // definition result stands on its own; dual weight stays unset
            }
        }
        emit(quality_report_json(q, t_method, dual_done), t_out);
        return 0;
    }

    if (w_cmd->parsed()) {
        const std::string text = read_file(w_in);
        const bool is_json = text.find_first_not_of(" \t\r\n") != std::string::npos &&
                             text[text.find_first_not_of(" \t\r\n")] == '{';
        const KorobovOrder ord = korobov_order(w_alpha, [&] {
            if (is_json) return generator_set_from_json(text).b;
            return 2;  // kernel does not depend on the base; any prime works
        }());
        std::ostringstream out;
        out.precision(17);
        if (w_series) {
            if (!is_json) throw std::invalid_argument("wce --series needs a generator set JSON input");
            const GeneratorSet g = generator_set_from_json(text);
            const double e2 = dual_wce_series(g, ord, w_extension, cap);
            out << "{\n  \"e2_series\": " << e2 << ",\n  \"extension\": " << w_extension << "\n}\n";
        } else if (w_shifted) {
            if (!is_json) throw std::invalid_argument("wce --shifted needs a generator set JSON input");
            const GeneratorSet g = generator_set_from_json(text);
            const ShiftedMean ms = wce_shifted_mean(g, ord, w_samples, w_seed);
            out << "{\n  \"mean\": " << ms.mean << ",\n  \"stderr\": " << ms.stderror << "\n}\n";
        } else {
            double e2;
            if (is_json) {
                e2 = wce_squared(generate_points(generator_set_from_json(text)), ord);
            } else {
                int s = 0;
                const auto coords = points_from_csv(text, s);
                e2 = wce_squared_coords(coords, coords.size() / s, s, ord);
            }
            out << "{\n  \"e\": " << std::sqrt(e2) << ",\n  \"e2\": " << e2 << "\n}\n";
        }
        emit(out.str(), w_out);
        return 0;
    }

    if (v_cmd->parsed()) {
        const MRange range = parse_m_range(v_range);
        const KorobovOrder ord = korobov_order(v_alpha, v_b);
        std::vector<ConvergenceRow> rows;
        for (int m = range.lo; m <= range.hi; ++m) {
            const GeneratorSet g = build_family(v_family, v_from, v_b, m, v_s, v_d);
            const PointSet pts = generate_points(g);
            rows.push_back({m, pts.size(), wce(pts, ord)});
        }
        emit(convergence_to_csv(rows, v_b), v_out);
        return 0;
    }

    // verify
    const auto checks = golden_checks(y_fault);
    bool all = true;
    for (const auto& c : checks) {
        std::cout << (c.pass ? "ok   " : "FAIL ") << c.name << ": " << c.detail << "\n";
        all = all && c.pass;
    }
    std::cout << (all ? "verify: all checks passed\n" : "verify: failures detected\n");
    return all ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const hodnet::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
