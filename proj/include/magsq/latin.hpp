#pragma once

#include <vector>

#include "magsq/array.hpp"
#include "magsq/finite_field.hpp"

namespace magsq {

/**
 * Two side-n grids over symbols {0..n-1} intended to be Latin, mutually
 * orthogonal, and doubly diagonal (each square carries every symbol once
 * on both main diagonals). Invariants are checked by the predicates
 * below, never assumed.
 */
struct LatinPair {
    int side = 0;
    std::vector<int> a;  // row-major
    std::vector<int> b;

    int at_a(int i, int j) const { return a[static_cast<std::size_t>(i) * side + j]; }
    int at_b(int i, int j) const { return b[static_cast<std::size_t>(i) * side + j]; }
};

bool is_latin(const std::vector<int>& grid, int side);
bool is_doubly_diagonal(const std::vector<int>& grid, int side);
bool are_orthogonal(const std::vector<int>& a, const std::vector<int>& b, int side);
/// All three invariants on both squares.
bool is_valid_latin_pair(const LatinPair& lp);

/**
 * Element ordering e_0..e_{q-1} of GF(q) engineered for diagonal
 * symmetry: odd p has e_{q-1-j} = -e_j with 0 in the center; p = 2 has
 * e_{q-1-j} = e_j + 1. Indices into the field's element numbering.
 */
std::vector<i64> symmetric_ordering(const FiniteField& f);

/**
 * Doubly diagonal orthogonal pair of side q from the linear squares
 * A(i,j) = a e_i + e_j, B(i,j) = b e_i + e_j over GF(q), symbols
 * relabeled through the symmetric ordering. Exists for every prime
 * power q >= 4; q in {2,3} raises nonexistence.
 */
LatinPair ddmols_prime_power(i64 q);

/// Composite pair of side m*n from pairs of sides m and n.
LatinPair kronecker_product(const LatinPair& x, const LatinPair& y);

/**
 * Magic square over Z_n + Z_n with entries (A(i,j), B(i,j)). n = 3 uses
 * the explicit base square; prime powers n >= 4 use ddmols_prime_power.
 * Other sides are served by construct() via group decomposition and
 * raise unsupported_base here.
 */
GroupArray znzn_square(i64 n);

} // namespace magsq
