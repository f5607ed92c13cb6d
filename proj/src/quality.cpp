#include "hodnet/quality.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "hodnet/engine.hpp"

namespace hodnet {

std::int64_t mu_weight(std::uint64_t k, int b, int alpha) {
    if (alpha < 1) throw std::invalid_argument("mu_weight: alpha must be >= 1");
    // collect nonzero digit positions, highest first
    std::vector<int> pos;
    int a = 1;
    while (k != 0) {
        if (k % b != 0) pos.push_back(a);
        k /= b;
        ++a;
    }
    std::int64_t w = 0;
    const int take = std::min<int>(alpha, static_cast<int>(pos.size()));
    for (int i = 0; i < take; ++i) w += pos[pos.size() - 1 - i];
    return w;
}

std::int64_t mu_weight_vec(const std::vector<std::uint64_t>& k, int b, int alpha) {
    std::int64_t w = 0;
    for (std::uint64_t kj : k) w += mu_weight(kj, b, alpha);
    return w;
}

double q_factor(const std::vector<std::uint64_t>& k, int b, int alpha) {
    return std::pow(static_cast<double>(b), -static_cast<double>(mu_weight_vec(k, b, alpha)));
}

namespace {

struct Profile {
    std::int64_t weight;
    std::uint64_t mask;  // bit i-1 set <=> row index i selected
};

// All counted-index profiles for one dimension: decreasing tuples of at
// most alpha indices in 1..m with weight <= wmax. A full tuple of alpha
// indices pulls in every row below its smallest index (free rows carry no
// weight, and checking the maximal superset covers all subsets). Profiles
// are deduplicated to the smallest weight per row mask.
std::vector<Profile> dimension_profiles(int m, int alpha, std::int64_t wmax) {
    std::map<std::uint64_t, std::int64_t> best;
    std::vector<int> chosen;

    auto emit = [&](std::int64_t weight) {
        std::uint64_t mask = 0;
        for (int idx : chosen) mask |= 1ULL << (idx - 1);
        if (static_cast<int>(chosen.size()) == alpha) {
            const int lowest = chosen.back();
            mask |= (1ULL << (lowest - 1)) - 1;
        }
        auto it = best.find(mask);
        if (it == best.end() || weight < it->second) best[mask] = weight;
    };

    // chosen is kept strictly decreasing
    auto rec = [&](auto&& self, int next_max, std::int64_t weight) -> void {
        if (!chosen.empty()) emit(weight);
        if (static_cast<int>(chosen.size()) == std::min(alpha, m)) return;
        for (int i = next_max; i >= 1; --i) {
            if (weight + i > wmax) continue;
            chosen.push_back(i);
            self(self, i - 1, weight + i);
            chosen.pop_back();
        }
    };
    rec(rec, m, 0);

    std::vector<Profile> out;
    out.reserve(best.size() + 1);
    out.push_back({0, 0});  // empty selection
    for (const auto& [mask, weight] : best) out.push_back({weight, mask});
    std::sort(out.begin(), out.end(), [](const Profile& a, const Profile& b) { return a.weight < b.weight; });
    return out;
}

bool selection_independent(const GeneratorSet& g, const std::vector<std::uint64_t>& masks) {
    int total = 0;
    for (std::uint64_t mask : masks) total += std::popcount(mask);
    if (total == 0) return true;
    if (total > g.m) return false;  // more than m vectors in Z_b^m
    std::vector<std::vector<int>> rows;
    rows.reserve(total);
    for (int j = 0; j < g.s; ++j)
        for (int i = 0; i < g.m; ++i)
            if (masks[j] >> i & 1) rows.push_back(g.matrices[j].row(i));
    return rows_independent(rows, g.b);
}

}  // namespace

bool is_talphabeta_net(const GeneratorSet& g, std::int64_t t, int alpha, const Rational& beta) {
    g.validate();
    if (alpha < 1) throw std::invalid_argument("is_talphabeta_net: alpha must be >= 1");
    if (beta <= Rational(0) || beta > Rational(alpha))
        throw std::invalid_argument("is_talphabeta_net: beta must satisfy 0 < beta <= alpha");
    const Rational bm = beta * Rational(g.m);
    if (t < 0 || Rational(t) > bm) throw std::invalid_argument("is_talphabeta_net: t out of [0, beta*m]");

    // weight threshold: integer weights w qualify iff w <= beta*m - t
    const Rational thr = bm - Rational(t);
    const std::int64_t wmax = thr.num / thr.den;  // thr >= 0
    if (wmax < 1) return true;                    // only the empty selection qualifies

    const auto profiles = dimension_profiles(g.m, alpha, wmax);

    std::vector<std::uint64_t> masks(g.s, 0);
    auto rec = [&](auto&& self, int j, std::int64_t weight) -> bool {
        if (j == g.s) return selection_independent(g, masks);
        for (const Profile& p : profiles) {
            if (weight + p.weight > wmax) break;  // sorted by weight
            masks[j] = p.mask;
            if (!self(self, j + 1, weight + p.weight)) return false;
        }
        masks[j] = 0;
        return true;
    };
    return rec(rec, 0, 0);
}

NetQuality strict_t(const GeneratorSet& g, int alpha, const Rational& beta) {
    g.validate();
    if (alpha < 1) throw std::invalid_argument("strict_t: alpha must be >= 1");
    if (beta <= Rational(0) || beta > Rational(alpha))
        throw std::invalid_argument("strict_t: beta must satisfy 0 < beta <= alpha");
    const Rational bm = beta * Rational(g.m);
    std::int64_t lo = 0, hi = bm.num / bm.den;  // property always holds at t = floor(beta*m)
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (is_talphabeta_net(g, mid, alpha, beta))
            hi = mid;
        else
            lo = mid + 1;
    }
    NetQuality q;
    q.t = lo;
    q.alpha = alpha;
    q.beta = beta;
    q.strict = true;
    return q;
}

std::vector<std::vector<int>> dual_nullspace_basis(const GeneratorSet& g) {
    g.validate();
    // columns (j, l) hold row l of C_j; M v = 0 encodes the dual condition
    // on concatenated digit vectors
    GFMatrix stacked(g.b, g.m, g.s * g.m);
    for (int j = 0; j < g.s; ++j)
        for (int l = 0; l < g.m; ++l)
            for (int i = 0; i < g.m; ++i) stacked.at(i, j * g.m + l) = g.matrices[j].at(l, i);
    return nullspace_basis(stacked);
}

std::optional<std::int64_t> dual_min_weight(const GeneratorSet& g, int alpha, int cap) {
    g.validate();
    if (alpha < 1) throw std::invalid_argument("dual_min_weight: alpha must be >= 1");

    const auto basis = dual_nullspace_basis(g);
    const int nd = static_cast<int>(basis.size());
    if (nd == 0) return std::nullopt;
    if (nd > cap)
        throw CapExceeded("dual_min_weight: nullspace dimension " + std::to_string(nd) +
                          " exceeds enumeration cap " + std::to_string(cap));

    const int cols = g.s * g.m;
    std::vector<int> combo(nd, 0);
    std::vector<int> v(cols);
    std::vector<std::uint64_t> k(g.s);
    std::optional<std::int64_t> min_w;

    const std::uint64_t count = pow_u64(g.b, nd);
    for (std::uint64_t c = 1; c < count; ++c) {
        // mixed-radix increment
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
            k[j] = kj;
        }
        const std::int64_t w = mu_weight_vec(k, g.b, alpha);
        if (!min_w || w < *min_w) min_w = w;
    }
    return min_w;
}

NetQuality strict_t_dual(const GeneratorSet& g, int alpha, const Rational& beta, int cap) {
    if (beta <= Rational(0) || beta > Rational(alpha))
        throw std::invalid_argument("strict_t_dual: beta must satisfy 0 < beta <= alpha");
    const auto w = dual_min_weight(g, alpha, cap);
    NetQuality q;
    q.alpha = alpha;
    q.beta = beta;
    q.strict = true;
    if (!w) {
        q.t = 0;
        q.dual_trivial = true;
        return q;
    }
    q.dual_min_weight = w;
    // smallest t with beta*m - t < w, i.e. t = max(0, floor(beta*m - w) + 1)
    const Rational gap = beta * Rational(g.m) - Rational(*w);
    std::int64_t f = gap.num / gap.den;
    if (gap.num < 0 && gap.num % gap.den != 0) --f;  // floor for negatives
    q.t = std::max<std::int64_t>(0, f + 1);
    return q;
}

NetQuality propagation_derive(const NetQuality& q, int alpha_new, int m) {
    if (alpha_new < 1 || alpha_new > m)
        throw std::invalid_argument("propagation_derive: alpha_new out of [1, m]");
    const int md = std::min(q.alpha, alpha_new);
    NetQuality out;
    out.alpha = alpha_new;
    out.t = (q.t * md + q.alpha - 1) / q.alpha;  // ceil
    out.beta = q.beta * Rational(md, q.alpha);
    out.strict = false;
    return out;
}

NetQuality weaken_quality(const NetQuality& q, std::int64_t t_new, const Rational& beta_new, int m) {
    if (beta_new <= Rational(0) || beta_new > q.beta)
        throw std::invalid_argument("weaken_quality: beta_new must satisfy 0 < beta_new <= beta");
    if (t_new < q.t || Rational(t_new) > beta_new * Rational(m))
        throw std::invalid_argument("weaken_quality: t_new out of [t, beta_new*m]");
    NetQuality out;
    out.t = t_new;
    out.alpha = q.alpha;
    out.beta = beta_new;
    out.strict = false;
    return out;
}

}  // namespace hodnet
