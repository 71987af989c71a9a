#pragma once

#include <vector>

#include "magsq/array.hpp"

namespace magsq {

/// n x n grid whose entries are a permutation of {0, ..., n^2-1} with all
/// 2n+2 line sums equal to n(n^2-1)/2.
struct IntSquare {
    int side = 0;
    std::vector<i64> cells;  // row-major

    i64 at(int r, int c) const { return cells[static_cast<std::size_t>(r) * side + c]; }
    i64 magic_constant() const { return static_cast<i64>(side) * (static_cast<i64>(side) * side - 1) / 2; }
};

/**
 * Deterministic integer magic square for any side n > 2:
 * Siamese method for odd n, the complement method for n = 0 (mod 4),
 * the LUX method for n = 2 (mod 4). Entries are 0..n^2-1.
 */
IntSquare int_magic_square(int n);

/// int_magic_square reinterpreted in Z_{n^2}; magic sum n(n^2-1)/2 mod n^2.
GroupArray cyclic_magic_square(i64 n);

/// j x k grid, each row a permutation of {1..k}, column sums j(k+1)/2.
struct IntKotzigArray {
    int rows = 0;
    int cols = 0;
    std::vector<int> cells;  // row-major

    int at(int r, int c) const { return cells[static_cast<std::size_t>(r) * cols + c]; }
};

/**
 * Kotzig array for j > 1 with j(k-1) even. Even j stacks reversal pairs
 * (1..k / k..1); odd j (k odd) adds a 3 x k base found once by
 * backtracking and cached.
 */
IntKotzigArray int_kotzig(int j, int k);

} // namespace magsq
