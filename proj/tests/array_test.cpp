#include <doctest.h>

#include <random>

#include "golden.hpp"
#include "magsq/array.hpp"
#include "magsq/oracle.hpp"

using namespace magsq;

TEST_CASE("verify the published reference arrays") {
    SUBCASE("2x2 rectangle over Z_4") {
        GroupArray a = array_from_coords(make_group({4}), 2, 2, golden::kRectZ4);
        VerificationReport r = verify(a);
        CHECK(r.classification == Classification::magic_rectangle);
        CHECK(r.row_sums[0].coords() == std::vector<i64>{1});
        CHECK(r.col_sums[0].coords() == std::vector<i64>{3});
        CHECK_FALSE(r.magic_sum.has_value());
    }
    SUBCASE("side-3 square over Z_3 + Z_3") {
        GroupArray a = array_from_coords(make_group({3, 3}), 3, 3, golden::kZ3Z3);
        VerificationReport r = verify(a);
        CHECK(r.classification == Classification::magic_square);
        CHECK(r.magic_sum->coords() == std::vector<i64>{0, 0});
    }
    SUBCASE("4x4 rectangle over Z_16") {
        GroupArray a = array_from_coords(make_group({16}), 4, 4, golden::kRectZ16);
        VerificationReport r = verify(a);
        CHECK(r.classification == Classification::magic_rectangle);
        CHECK(r.bijective);
        CHECK(r.row_sums[0].coords() == std::vector<i64>{6});
        CHECK(r.col_sums[0].coords() == std::vector<i64>{14});
    }
}

TEST_CASE("classification edge cases") {
    SUBCASE("semi-magic: equal row and column sums, bad diagonal") {
        GroupArray a = array_from_coords(make_group({9}), 3, 3,
                                         {{0}, {1}, {2}, {5}, {3}, {4}, {7}, {8}, {6}});
        VerificationReport r = verify(a);
        CHECK(r.bijective);
        CHECK(r.classification == Classification::semi_magic);
    }
    SUBCASE("not magic: unequal column sums") {
        GroupArray a = array_from_coords(make_group({4}), 2, 2, {{0}, {1}, {2}, {3}});
        CHECK(verify(a).classification == Classification::not_magic);
    }
    SUBCASE("repeated entries are not bijective") {
        GroupArray a = array_from_coords(make_group({4}), 2, 2, {{0}, {0}, {3}, {3}});
        VerificationReport r = verify(a);
        CHECK_FALSE(r.bijective);
        CHECK(r.classification == Classification::not_magic);
    }
    SUBCASE("non-square gets no diagonal sums") {
        GroupArray a = array_from_coords(make_group({6}), 2, 3,
                                         {{0}, {1}, {2}, {3}, {4}, {5}});
        VerificationReport r = verify(a);
        CHECK_FALSE(r.diag_sum.has_value());
        CHECK_FALSE(r.anti_diag_sum.has_value());
    }
}

TEST_CASE("verification is dihedral-invariant") {
    GroupArray a = array_from_coords(make_group({3, 3}), 3, 3, golden::kZ3Z3);
    GroupArray b = array_from_coords(make_group({16}), 4, 4, golden::kRectZ16);
    auto sorted_ranks = [](const std::vector<GroupElement>& v) {
        std::vector<i64> r;
        for (const auto& e : v) r.push_back(e.rank());
        std::sort(r.begin(), r.end());
        return r;
    };
    for (const GroupArray* sq : {&a, &b}) {
        VerificationReport base = verify(*sq);
        for (int rot = 0; rot < 4; ++rot)
            for (int t = 0; t < 2; ++t) {
                VerificationReport r = verify(dihedral_transform(*sq, rot, t == 1));
                CHECK(r.classification == base.classification);
                CHECK(r.bijective == base.bijective);
                // line sums survive as permuted multisets; diagonals at most swap
                std::vector<i64> lines = sorted_ranks(base.row_sums);
                for (i64 x : sorted_ranks(base.col_sums)) lines.push_back(x);
                std::sort(lines.begin(), lines.end());
                std::vector<i64> tlines = sorted_ranks(r.row_sums);
                for (i64 x : sorted_ranks(r.col_sums)) tlines.push_back(x);
                std::sort(tlines.begin(), tlines.end());
                CHECK(lines == tlines);
                std::vector<i64> diags{base.diag_sum->rank(), base.anti_diag_sum->rank()};
                std::vector<i64> tdiags{r.diag_sum->rank(), r.anti_diag_sum->rank()};
                std::sort(diags.begin(), diags.end());
                std::sort(tdiags.begin(), tdiags.end());
                CHECK(diags == tdiags);
            }
    }
}

TEST_CASE("adding a constant shifts sums by side * c") {
    GroupPtr g = make_group({3, 3});
    GroupArray a = array_from_coords(g, 3, 3, golden::kZ3Z3);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<i64> coord(0, 2);
    for (int trial = 0; trial < 20; ++trial) {
        GroupElement c = make_element(g, {coord(rng), coord(rng)});
        std::vector<GroupElement> cells;
        for (const auto& e : a.cells()) cells.push_back(e + c);
        GroupArray shifted(g, 3, 3, std::move(cells));
        VerificationReport r0 = verify(a), r1 = verify(shifted);
        GroupElement shift = c.times(3);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(r1.row_sums[i] == (r0.row_sums[i] + shift));
            CHECK(r1.col_sums[i] == (r0.col_sums[i] + shift));
        }
        CHECK(r1.classification == Classification::magic_square);
    }
}

TEST_CASE("entries must match the array presentation") {
    GroupPtr g = make_group({4});
    GroupPtr other = make_group({2, 2});
    std::vector<GroupElement> cells{zero_element(g), zero_element(g), zero_element(g),
                                    zero_element(other)};
    CHECK_THROWS_AS(GroupArray(g, 2, 2, std::move(cells)), mismatched_presentation);
}
