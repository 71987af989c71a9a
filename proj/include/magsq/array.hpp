#pragma once

#include <optional>
#include <string>
#include <vector>

#include "magsq/group.hpp"

namespace magsq {

/**
 * An m x n grid of elements of one group presentation: squares,
 * rectangles, Kotzig rows, blocks. Entries are stored row-major.
 * Whether the grid is a magic square/rectangle is never assumed;
 * verify() recomputes everything from scratch.
 */
class GroupArray {
public:
    GroupArray(GroupPtr group, std::size_t rows, std::size_t cols,
               std::vector<GroupElement> cells);

    const GroupPtr& group() const { return group_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const GroupElement& at(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
    const std::vector<GroupElement>& cells() const { return cells_; }

    bool operator==(const GroupArray& rhs) const;

private:
    GroupPtr group_;
    std::size_t rows_, cols_;
    std::vector<GroupElement> cells_;
};

/// Grid from raw coordinate tuples (row-major).
GroupArray array_from_coords(const GroupPtr& g, std::size_t rows, std::size_t cols,
                             const std::vector<std::vector<i64>>& coords);

/// Re-express every entry of a through iso (a's presentation must be iso's source).
GroupArray map_array(const GroupArray& a, const Isomorphism& iso);

enum class Classification { magic_square, magic_rectangle, semi_magic, not_magic };

std::string to_string(Classification c);

/**
 * Everything verify() measures about a grid. classification is
 *   magic_square    square, bijective onto the group, and all row, column
 *                   and both main-diagonal sums equal one element mu;
 *   magic_rectangle bijective with constant row sums rho and constant
 *                   column sums sigma, diagonals disregarded (rho and
 *                   sigma may differ);
 *   semi_magic      square shape, bijective, rho == sigma, but a diagonal
 *                   sum differs;
 *   not_magic       anything else.
 */
struct VerificationReport {
    std::vector<GroupElement> row_sums;
    std::vector<GroupElement> col_sums;
    std::optional<GroupElement> diag_sum;        // only for square shape
    std::optional<GroupElement> anti_diag_sum;   // only for square shape
    bool bijective = false;
    Classification classification = Classification::not_magic;
    std::optional<GroupElement> magic_sum;       // set iff magic_square
};

/// Recompute all line sums and the classification from scratch.
VerificationReport verify(const GroupArray& a);

} // namespace magsq
