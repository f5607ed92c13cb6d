#include "hodnet/gf.hpp"

#include <stdexcept>
#include <string>

namespace hodnet {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int inv_mod(int a, int b) {
    a %= b;
    if (a < 0) a += b;
    if (a == 0) throw std::invalid_argument("inv_mod: zero has no inverse");
    // extended Euclid
    int t = 0, new_t = 1, r = b, new_r = a;
    while (new_r != 0) {
        const int q = r / new_r;
        const int tmp_t = t - q * new_t;
        t = new_t; new_t = tmp_t;
        const int tmp_r = r - q * new_r;
        r = new_r; new_r = tmp_r;
    }
    if (t < 0) t += b;
    return t;
}

GFMatrix::GFMatrix(int base, int rows, int cols) : base_(base), rows_(rows), cols_(cols) {
    if (!is_prime(base)) throw std::invalid_argument("GFMatrix: base must be prime, got " + std::to_string(base));
    if (rows < 0 || cols < 0) throw std::invalid_argument("GFMatrix: negative shape");
    a_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

GFMatrix::GFMatrix(int base, int rows, int cols, std::vector<int> entries) : GFMatrix(base, rows, cols) {
    if (entries.size() != a_.size()) throw std::invalid_argument("GFMatrix: entry count does not match shape");
    for (int e : entries)
        if (e < 0 || e >= base) throw std::invalid_argument("GFMatrix: entry out of range for base");
    a_ = std::move(entries);
}

GFMatrix GFMatrix::identity(int base, int n) {
    GFMatrix m(base, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

std::vector<int> GFMatrix::row(int r) const {
    return std::vector<int>(a_.begin() + static_cast<std::size_t>(r) * cols_,
                            a_.begin() + static_cast<std::size_t>(r + 1) * cols_);
}

GFMatrix GFMatrix::transposed() const {
    GFMatrix t(base_, cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

std::vector<int> GFMatrix::apply(const std::vector<int>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("GFMatrix::apply: size mismatch");
    std::vector<int> y(rows_, 0);
    for (int r = 0; r < rows_; ++r) {
        long long acc = 0;
        for (int c = 0; c < cols_; ++c) acc += static_cast<long long>(at(r, c)) * x[c];
        y[r] = static_cast<int>(acc % base_);
    }
    return y;
}

namespace {

// Row echelon elimination on a copy; returns the rank. `work` is row-major.
int eliminate(std::vector<std::vector<int>>& work, int base, int cols) {
    const int n = static_cast<int>(work.size());
    int r = 0;
    for (int c = 0; c < cols && r < n; ++c) {
        int pivot = -1;
        for (int i = r; i < n; ++i)
            if (work[i][c] != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        std::swap(work[r], work[pivot]);
        const int inv = inv_mod(work[r][c], base);
        for (int j = c; j < cols; ++j) work[r][j] = static_cast<int>(static_cast<long long>(work[r][j]) * inv % base);
        for (int i = 0; i < n; ++i) {
            if (i == r || work[i][c] == 0) continue;
            const int f = work[i][c];
            for (int j = c; j < cols; ++j) {
                long long v = work[i][j] - static_cast<long long>(f) * work[r][j];
                v %= base;
                if (v < 0) v += base;
                work[i][j] = static_cast<int>(v);
            }
        }
        ++r;
    }
    return r;
}

}  // namespace

int rank(const GFMatrix& m) {
    std::vector<std::vector<int>> work;
    work.reserve(m.rows());
    for (int r = 0; r < m.rows(); ++r) work.push_back(m.row(r));
    return eliminate(work, m.base(), m.cols());
}

bool rows_independent(const std::vector<std::vector<int>>& rows, int base) {
    if (!is_prime(base)) throw std::invalid_argument("rows_independent: base must be prime");
    if (rows.empty()) return true;
    const std::size_t len = rows.front().size();
    for (const auto& v : rows) {
        if (v.size() != len) throw std::invalid_argument("rows_independent: mismatched vector lengths");
        for (int e : v)
            if (e < 0 || e >= base) throw std::invalid_argument("rows_independent: entry out of range");
    }
    std::vector<std::vector<int>> work(rows);
    return eliminate(work, base, static_cast<int>(len)) == static_cast<int>(rows.size());
}

std::vector<std::vector<int>> nullspace_basis(const GFMatrix& m) {
    const int base = m.base();
    const int cols = m.cols();
    std::vector<std::vector<int>> work;
    work.reserve(m.rows());
    for (int r = 0; r < m.rows(); ++r) work.push_back(m.row(r));
    const int rk = eliminate(work, base, cols);

    // locate pivot columns of the reduced form
    std::vector<int> pivot_col(rk, -1);
    std::vector<bool> is_pivot(cols, false);
    for (int r = 0; r < rk; ++r) {
        for (int c = 0; c < cols; ++c)
            if (work[r][c] != 0) { pivot_col[r] = c; is_pivot[c] = true; break; }
    }

    std::vector<std::vector<int>> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<int> v(cols, 0);
        v[free] = 1;
        for (int r = 0; r < rk; ++r) {
            // pivot entry is 1 after elimination, so v[pivot] = -work[r][free]
            int val = (base - work[r][free]) % base;
            v[pivot_col[r]] = val;
        }
        for (int e : m.apply(v))
            if (e != 0) throw std::logic_error("nullspace_basis: candidate fails M v = 0");
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace hodnet
