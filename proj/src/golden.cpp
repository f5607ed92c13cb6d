#include "hodnet/golden.hpp"

namespace hodnet {

GeneratorSet golden_base_net() {
    GeneratorSet g;
    g.b = 2;
    g.m = 4;
    g.s = 4;
    g.matrices.push_back(GFMatrix::identity(2, 4));
    g.matrices.push_back(GFMatrix(2, 4, 4, {0, 0, 0, 1,
                                            0, 0, 1, 0,
                                            0, 1, 0, 0,
                                            1, 0, 0, 0}));
    g.matrices.push_back(GFMatrix(2, 4, 4, {1, 1, 1, 1,
                                            0, 1, 0, 1,
                                            0, 0, 1, 1,
                                            0, 0, 0, 1}));
    g.matrices.push_back(GFMatrix(2, 4, 4, {0, 1, 1, 0,
                                            1, 1, 0, 1,
                                            0, 0, 0, 1,
                                            0, 0, 1, 0}));
    g.declared_quality = DeclaredQuality{1, 1, Rational(1)};
    return g;
}

GeneratorSet golden_interleaved_net() { return interleave(golden_base_net(), 2); }

std::vector<std::pair<std::uint64_t, std::uint64_t>> golden_point_numerators() {
    return {
        {0, 0},  {8, 9},  {2, 15}, {10, 6}, {1, 12}, {9, 5},  {3, 3},  {11, 10},
        {4, 11}, {12, 2}, {6, 4},  {14, 13}, {5, 7}, {13, 14}, {7, 8}, {15, 1},
    };
}

}  // namespace hodnet
