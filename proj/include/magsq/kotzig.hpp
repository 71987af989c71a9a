#pragma once

#include <span>
#include <vector>

#include "magsq/group.hpp"

namespace magsq {

/**
 * A permutation sigma of a group such that x -> x + sigma(x) is also a
 * permutation. Exists exactly for groups of odd order or with more than
 * one involution. image[r] = sigma(element of rank r).
 */
struct CompleteMapping {
    GroupPtr group;
    std::vector<GroupElement> image;

    GroupElement apply(const GroupElement& x) const { return image[static_cast<std::size_t>(x.rank())]; }
};

/**
 * Complete mapping for g in class G: identity on odd-order groups
 * (x -> 2x is a bijection there); even order composes an identity on the
 * odd part with a mapping on the non-cyclic 2-part, found by lex-first
 * backtracking for tiny 2-parts and built explicitly (linear maps plus a
 * quotient extension) above that.
 */
CompleteMapping complete_mapping(const GroupPtr& g);

/// j x |G| grid, each row a permutation of G, all column sums equal.
struct KotzigArrayG {
    GroupPtr group;
    int rows = 0;
    std::vector<GroupElement> cells;  // row-major, |G| columns

    i64 cols() const { return group->order(); }
    const GroupElement& at(int r, i64 c) const {
        return cells[static_cast<std::size_t>(r) * group->order() + c];
    }
    /// Common column sum (column 0's sum; validity makes them all equal).
    GroupElement column_sum() const;
};

/// All rows permutations of G and all column sums equal.
bool is_valid_kotzig(const KotzigArrayG& ka);

/**
 * Kotzig array with all column sums 0, for j > 1 with j even or G in
 * class G. Even j alternates the fixed enumeration E with -E, so rows
 * satisfy row_{2i} = row_0 and row_{2i+1} = -row_0. Odd j opens with
 * (E, sigma(E), -(E + sigma(E))) from a complete mapping and pads with
 * (E, -E) pairs.
 */
KotzigArrayG kotzig_gamma(int j, const GroupPtr& g);

/// Add to each row the inverse of its first entry: first column becomes
/// all zeros, hence all column sums 0.
KotzigArrayG normalize_rows(const KotzigArrayG& ka);
KotzigArrayG permute_columns(const KotzigArrayG& ka, std::span<const i64> perm);
/// Add c to every entry of one row; shifts every column sum by c.
KotzigArrayG translate_row(const KotzigArrayG& ka, int row, const GroupElement& c);

} // namespace magsq
