#pragma once

#include <cstdint>
#include <optional>

#include "magsq/array.hpp"

namespace magsq {

struct SearchConfig {
    GroupPtr group;
    int side = 0;
    enum class Mode { find_one, count_all, count_orbits } mode = Mode::find_one;
    std::uint64_t node_budget = 10'000'000;
    std::uint64_t seed = 0;  // candidate-order tie-breaking for find_one
};

struct SearchResult {
    std::optional<GroupArray> square;        // find_one hit
    std::optional<std::uint64_t> count;      // squares or orbits, exact; absent if aborted
    bool budget_exhausted = false;           // result is indeterminate when set
    std::uint64_t nodes = 0;
};

/**
 * Cell-by-cell exhaustive search with line-sum pruning: the magic sum is
 * pinned by the first completed row, and any line whose completed sum
 * cannot match it is abandoned immediately. count_all is the exact
 * number of magic squares and count_orbits the number of their dihedral
 * orbits, both within side <= 4; find_one allows side <= 5 under the
 * node budget.
 */
SearchResult backtrack_search(const SearchConfig& cfg);

/// Dihedral image of a square: rot quarter-turns then optional transpose.
GroupArray dihedral_transform(const GroupArray& a, int rot, bool transpose);

/// Lexicographically least of the 8 dihedral images; equal canonical
/// forms characterize one orbit.
GroupArray orbit_canonical(const GroupArray& a);

/**
 * Full enumeration of all 4! side-2 placements of an order-4 group:
 * exact magic-square count (always 0), the dihedral orbit census with
 * each orbit's classification, and the magic-rectangle orbits.
 */
struct Side2Census {
    std::uint64_t magic_square_count = 0;
    std::vector<GroupArray> orbit_reps;           // canonical, deterministic order
    std::vector<Classification> orbit_class;      // parallel to orbit_reps
    std::vector<GroupArray> rectangle_orbits;     // the magic-rectangle subset
};

Side2Census exhaustive_side2(const GroupPtr& g);

} // namespace magsq
