#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "golden.hpp"
#include "magsq/classical.hpp"

using namespace magsq;

namespace {

// independent line-sum check, no shared code with the verifier
bool all_lines_magic(const IntSquare& sq) {
    const int n = sq.side;
    const i64 target = sq.magic_constant();
    std::vector<i64> sorted = sq.cells;
    std::sort(sorted.begin(), sorted.end());
    for (i64 v = 0; v < static_cast<i64>(n) * n; ++v)
        if (sorted[v] != v) return false;
    i64 d = 0, e = 0;
    for (int i = 0; i < n; ++i) {
        i64 r = 0, c = 0;
        for (int j = 0; j < n; ++j) {
            r += sq.at(i, j);
            c += sq.at(j, i);
        }
        if (r != target || c != target) return false;
        d += sq.at(i, i);
        e += sq.at(i, n - 1 - i);
    }
    return d == target && e == target;
}

} // namespace

TEST_CASE("integer magic squares") {
    CHECK(int_magic_square(3).magic_constant() == 12);
    CHECK(int_magic_square(4).magic_constant() == 30);

    SUBCASE("n=6 has all 14 line sums equal to 105") {
        IntSquare sq = int_magic_square(6);
        CHECK(sq.magic_constant() == 105);
        CHECK(all_lines_magic(sq));
    }
    SUBCASE("all three methods across 3..32") {
        for (int n = 3; n <= 32; ++n) {
            CAPTURE(n);
            CHECK(all_lines_magic(int_magic_square(n)));
        }
    }
    SUBCASE("side 3 matches the classical base square") {
        IntSquare sq = int_magic_square(3);
        std::vector<i64> expect{7, 0, 5, 2, 4, 6, 3, 8, 1};
        CHECK(sq.cells == expect);
    }
    CHECK_THROWS_AS(int_magic_square(2), nonexistence);
    CHECK_THROWS_AS(int_magic_square(1), nonexistence);
}

TEST_CASE("cyclic magic squares") {
    GroupArray a = cyclic_magic_square(3);
    VerificationReport r = verify(a);
    CHECK(r.classification == Classification::magic_square);
    CHECK(r.magic_sum->coords() == std::vector<i64>{3});  // 12 mod 9
    CHECK(a == array_from_coords(make_group({9}), 3, 3, golden::kZ9));

    CHECK(verify(cyclic_magic_square(4)).magic_sum->coords() == std::vector<i64>{14});
    CHECK(verify(cyclic_magic_square(6)).classification == Classification::magic_square);
    CHECK_THROWS_AS(cyclic_magic_square(2), nonexistence);
}

TEST_CASE("integer Kotzig arrays") {
    SUBCASE("j=2 k=4 pair construction") {
        IntKotzigArray ka = int_kotzig(2, 4);
        std::vector<int> expect{1, 2, 3, 4, 4, 3, 2, 1};
        CHECK(ka.cells == expect);
    }
    SUBCASE("j=3 k=3 columns sum to 6") {
        IntKotzigArray ka = int_kotzig(3, 3);
        for (int c = 0; c < 3; ++c)
            CHECK(ka.at(0, c) + ka.at(1, c) + ka.at(2, c) == 6);
    }
    SUBCASE("j=5 k=7 column sums 20 and permutation rows") {
        IntKotzigArray ka = int_kotzig(5, 7);
        for (int c = 0; c < 7; ++c) {
            int s = 0;
            for (int r = 0; r < 5; ++r) s += ka.at(r, c);
            CHECK(s == 20);
        }
        for (int r = 0; r < 5; ++r) {
            std::vector<int> row(ka.cells.begin() + r * 7, ka.cells.begin() + (r + 1) * 7);
            std::sort(row.begin(), row.end());
            CHECK(row == std::vector<int>{1, 2, 3, 4, 5, 6, 7});
        }
    }
    SUBCASE("full validity sweep j<=9 k<=15") {
        for (int j = 2; j <= 9; ++j)
            for (int k = 1; k <= 15; ++k) {
                CAPTURE(j);
                CAPTURE(k);
                if (j * (k - 1) % 2 != 0) {
                    CHECK_THROWS_AS(int_kotzig(j, k), nonexistence);
                    continue;
                }
                IntKotzigArray ka = int_kotzig(j, k);
                const int target = j * (k + 1) / 2;
                for (int c = 0; c < k; ++c) {
                    int s = 0;
                    for (int r = 0; r < j; ++r) s += ka.at(r, c);
                    CHECK(s == target);
                }
                for (int r = 0; r < j; ++r) {
                    std::vector<int> row(ka.cells.begin() + r * k,
                                         ka.cells.begin() + (r + 1) * k);
                    std::sort(row.begin(), row.end());
                    for (int v = 1; v <= k; ++v) CHECK(row[v - 1] == v);
                }
            }
    }
    CHECK_THROWS_AS(int_kotzig(1, 5), nonexistence);
    CHECK_THROWS_AS(int_kotzig(3, 4), nonexistence);
}
