#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "magsq/error.hpp"

namespace magsq {

using i64 = std::int64_t;

class AbelianGroup;
using GroupPtr = std::shared_ptr<const AbelianGroup>;

/// Largest group order enumerate_elements() will materialize.
inline constexpr i64 kEnumerationLimit = i64{1} << 20;

/**
 * A finite Abelian group given as a direct sum of cyclic factors
 * Z_{m_1} + ... + Z_{m_t} (the user's presentation), together with its
 * primary decomposition into prime-power cyclic factors. The empty
 * modulus list denotes the trivial group.
 *
 * Immutable; shared via GroupPtr. Two GroupPtr values with equal modulus
 * lists are the same presentation for arithmetic purposes.
 */
class AbelianGroup {
public:
    explicit AbelianGroup(std::vector<i64> moduli);

    const std::vector<i64>& moduli() const { return moduli_; }
    /// Prime powers p^s, sorted by (prime, exponent).
    const std::vector<i64>& primary_moduli() const { return primary_; }
    /// (prime, exponent) pairs parallel to primary_moduli().
    const std::vector<std::pair<i64, int>>& primary_factors() const { return factors_; }

    i64 order() const { return order_; }
    std::size_t arity() const { return moduli_.size(); }
    bool is_trivial() const { return moduli_.empty(); }
    /// One primary factor per prime.
    bool is_cyclic() const;
    /// Odd order, or more than one involution (>= 2 even primary factors).
    bool in_class_g() const;
    /// Number of even primary moduli; the involution count is 2^z - 1.
    int even_primary_count() const;

    bool same_presentation(const AbelianGroup& other) const { return moduli_ == other.moduli_; }

private:
    std::vector<i64> moduli_;
    std::vector<i64> primary_;
    std::vector<std::pair<i64, int>> factors_;
    i64 order_;
};

/// Build a group from its modulus list. Every modulus must be >= 2.
GroupPtr make_group(std::vector<i64> moduli);

/// Group whose moduli are the concatenation a ++ b.
GroupPtr direct_sum(const GroupPtr& a, const GroupPtr& b);

/**
 * An element of a specific group presentation: a residue tuple with
 * coords[i] in [0, m_i). Arithmetic between elements of different
 * presentations throws mismatched_presentation.
 */
class GroupElement {
public:
    GroupElement(GroupPtr group, std::vector<i64> coords);

    const GroupPtr& group() const { return group_; }
    const std::vector<i64>& coords() const { return coords_; }

    GroupElement operator+(const GroupElement& rhs) const;
    GroupElement operator-(const GroupElement& rhs) const;
    GroupElement operator-() const;
    /// n-fold sum (n may be negative or zero).
    GroupElement times(i64 n) const;

    bool is_zero() const;
    bool operator==(const GroupElement& rhs) const;
    /// Lexicographic coordinate order within one presentation.
    bool operator<(const GroupElement& rhs) const;

    /// Rank in the lexicographic enumeration (mixed-radix value).
    i64 rank() const;

private:
    GroupPtr group_;
    std::vector<i64> coords_;
};

GroupElement zero_element(const GroupPtr& g);
GroupElement make_element(const GroupPtr& g, std::vector<i64> coords);
/// Element with the given lexicographic rank.
GroupElement element_of_rank(const GroupPtr& g, i64 rank);
/// Concatenate coordinates into the direct-sum presentation.
GroupElement concat_elements(const GroupPtr& sum, const GroupElement& a, const GroupElement& b);

/// All elements in lexicographic coordinate order; first element is 0.
std::vector<GroupElement> enumerate_elements(const GroupPtr& g);

/**
 * An explicit isomorphism between two presentations of the same group,
 * realized through the shared primary decomposition (CRT on each
 * coordinate). forward/backward are mutually inverse additive bijections.
 */
class Isomorphism {
public:
    Isomorphism(GroupPtr source, GroupPtr target);

    const GroupPtr& source() const { return source_; }
    const GroupPtr& target() const { return target_; }

    GroupElement forward(const GroupElement& x) const;
    GroupElement backward(const GroupElement& y) const;

private:
    struct Slot {
        i64 modulus;          // p^s
        std::size_t src_coord;
        std::size_t dst_coord;
        i64 crt_weight;       // (N/p^s) * ((N/p^s)^-1 mod p^s) mod N, N = dst coord modulus
        i64 crt_weight_back;  // same, for the backward direction
    };
    GroupPtr source_;
    GroupPtr target_;
    std::vector<Slot> slots_;

    GroupElement apply(const GroupElement& x, bool forwards) const;
};

/// Isomorphism between presentations with identical primary decompositions.
/// Throws invalid_input when the groups are not isomorphic.
Isomorphism crt_isomorphism(const GroupPtr& src, const GroupPtr& dst);

/// Primary-decomposition presentation (moduli = primary_moduli of g).
GroupPtr primary_presentation(const GroupPtr& g);

/// All Abelian groups of a given order, each as a primary modulus list
/// (one entry per isomorphism class, deterministic order).
std::vector<std::vector<i64>> abelian_groups_of_order(i64 n);

} // namespace magsq
