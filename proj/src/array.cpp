#include "magsq/array.hpp"

#include <algorithm>

namespace magsq {

GroupArray::GroupArray(GroupPtr group, std::size_t rows, std::size_t cols,
                       std::vector<GroupElement> cells)
    : group_(std::move(group)), rows_(rows), cols_(cols), cells_(std::move(cells)) {
    if (rows_ == 0 || cols_ == 0) throw invalid_input("array dimensions must be positive");
    if (cells_.size() != rows_ * cols_)
        throw invalid_input("cell count does not match array dimensions");
    for (const GroupElement& e : cells_)
        if (!e.group()->same_presentation(*group_))
            throw mismatched_presentation("array entry from a different presentation");
}

bool GroupArray::operator==(const GroupArray& rhs) const {
    if (!group_->same_presentation(*rhs.group_) || rows_ != rhs.rows_ || cols_ != rhs.cols_)
        return false;
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if (cells_[i].coords() != rhs.cells_[i].coords()) return false;
    return true;
}

GroupArray array_from_coords(const GroupPtr& g, std::size_t rows, std::size_t cols,
                             const std::vector<std::vector<i64>>& coords) {
    std::vector<GroupElement> cells;
    cells.reserve(coords.size());
    for (const auto& c : coords) cells.emplace_back(g, c);
    return GroupArray(g, rows, cols, std::move(cells));
}

GroupArray map_array(const GroupArray& a, const Isomorphism& iso) {
    std::vector<GroupElement> cells;
    cells.reserve(a.cells().size());
    for (const GroupElement& e : a.cells()) cells.push_back(iso.forward(e));
    return GroupArray(iso.target(), a.rows(), a.cols(), std::move(cells));
}

std::string to_string(Classification c) {
    switch (c) {
        case Classification::magic_square: return "magic-square";
        case Classification::magic_rectangle: return "magic-rectangle";
        case Classification::semi_magic: return "semi-magic";
        case Classification::not_magic: return "not-magic";
    }
    return "not-magic";
}

VerificationReport verify(const GroupArray& a) {
    const std::size_t m = a.rows(), n = a.cols();
    const GroupPtr& g = a.group();
    VerificationReport rep;

    for (std::size_t i = 0; i < m; ++i) {
        GroupElement s = zero_element(g);
        for (std::size_t j = 0; j < n; ++j) s = s + a.at(i, j);
        rep.row_sums.push_back(s);
    }
    for (std::size_t j = 0; j < n; ++j) {
        GroupElement s = zero_element(g);
        for (std::size_t i = 0; i < m; ++i) s = s + a.at(i, j);
        rep.col_sums.push_back(s);
    }
    if (m == n) {
        GroupElement d = zero_element(g), e = zero_element(g);
        for (std::size_t i = 0; i < n; ++i) {
            d = d + a.at(i, i);
            e = e + a.at(i, n - 1 - i);
        }
        rep.diag_sum = d;
        rep.anti_diag_sum = e;
    }

    // bijectivity: right count and pairwise-distinct canonical coordinates
    rep.bijective = false;
    if (static_cast<i64>(m) * static_cast<i64>(n) == g->order()) {
        std::vector<i64> ranks;
        ranks.reserve(m * n);
        for (const GroupElement& c : a.cells()) ranks.push_back(c.rank());
        std::sort(ranks.begin(), ranks.end());
        rep.bijective = std::adjacent_find(ranks.begin(), ranks.end()) == ranks.end();
    }

    auto all_equal = [](const std::vector<GroupElement>& v) {
        return std::all_of(v.begin(), v.end(), [&](const GroupElement& e) { return e == v[0]; });
    };
    const bool rows_const = all_equal(rep.row_sums);
    const bool cols_const = all_equal(rep.col_sums);

    rep.classification = Classification::not_magic;
    if (rep.bijective && rows_const && cols_const) {
        const GroupElement& rho = rep.row_sums[0];
        const GroupElement& sigma = rep.col_sums[0];
        if (m == n && rho == sigma) {
            if (*rep.diag_sum == rho && *rep.anti_diag_sum == rho) {
                rep.classification = Classification::magic_square;
                rep.magic_sum = rho;
            } else {
                rep.classification = Classification::semi_magic;
            }
        } else {
            rep.classification = Classification::magic_rectangle;
        }
    }
    return rep;
}

} // namespace magsq
