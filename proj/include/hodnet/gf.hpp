#pragma once

#include <cstdint>
#include <vector>

namespace hodnet {

bool is_prime(int n);

// Multiplicative inverse mod prime b.
int inv_mod(int a, int b);

// Dense row-major matrix over the prime field Z_b. Entries are kept
// reduced to {0,..,b-1}; the constructor rejects non-prime bases and
// out-of-range entries.
class GFMatrix {
  public:
    GFMatrix(int base, int rows, int cols);
    GFMatrix(int base, int rows, int cols, std::vector<int> entries);

    static GFMatrix identity(int base, int n);

    int base() const { return base_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    int at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    int& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    std::vector<int> row(int r) const;
    GFMatrix transposed() const;

    // y = M x over Z_b.
    std::vector<int> apply(const std::vector<int>& x) const;

    friend bool operator==(const GFMatrix& a, const GFMatrix& b) {
        return a.base_ == b.base_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

  private:
    int base_;
    int rows_;
    int cols_;
    std::vector<int> a_;
};

// Z_b-rank by Gaussian elimination; pivot is the first nonzero entry in
// column order, so results are deterministic.
int rank(const GFMatrix& m);

// True iff no nontrivial Z_b-combination of the vectors vanishes.
// The empty collection is independent. Throws on mismatched lengths.
bool rows_independent(const std::vector<std::vector<int>>& rows, int base);

// Basis of {v : M v = 0}; size is cols - rank. Every returned vector is
// checked against M before being handed back.
std::vector<std::vector<int>> nullspace_basis(const GFMatrix& m);

}  // namespace hodnet
