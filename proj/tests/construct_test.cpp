#include <doctest.h>

#include <algorithm>

#include "golden.hpp"
#include "magsq/classical.hpp"
#include "magsq/construct.hpp"
#include "magsq/latin.hpp"

using namespace magsq;

namespace {

GroupElement mu_of(const GroupArray& a) { return *verify(a).magic_sum; }

bool is_magic(const GroupArray& a) {
    return verify(a).classification == Classification::magic_square;
}

} // namespace

TEST_CASE("composition with a Kotzig array") {
    SUBCASE("base 3x3 with a 3x4 array gives a verified side-6 square") {
        GroupArray sq = znzn_square(3);
        KotzigArrayG ka = kotzig_gamma(3, make_group({2, 2}));
        GroupArray out = kotzig_extend(sq, ka);
        CHECK(out.rows() == 6);
        CHECK(out.group()->moduli() == std::vector<i64>{3, 3, 2, 2});
        CHECK(mu_of(out).coords() == std::vector<i64>{0, 0, 0, 0});
        // the published side-6 square verifies with the same magic sum
        GroupArray figure =
            array_from_coords(make_group({3, 3, 2, 2}), 6, 6, golden::kSide6Composite);
        CHECK(is_magic(figure));
        CHECK(mu_of(figure).coords() == std::vector<i64>{0, 0, 0, 0});
    }
    SUBCASE("cyclic side-3 base with a 3x9 array over Z_9") {
        GroupArray out = kotzig_extend(cyclic_magic_square(3), kotzig_gamma(3, make_group({9})));
        CHECK(out.rows() == 9);
        CHECK(mu_of(out).coords() == std::vector<i64>{0, 0});  // 3*3 mod 9, 0
    }
    SUBCASE("magic-sum law (k*delta, 0) on a parameter grid") {
        struct Case {
            GroupArray base;
            std::vector<i64> h;
        };
        std::vector<Case> cases;
        cases.push_back({znzn_square(3), {2, 2}});
        cases.push_back({cyclic_magic_square(4), {3, 3}});
        cases.push_back({cyclic_magic_square(5), {9}});
        cases.push_back({znzn_square(4), {2, 2}});
        cases.push_back({cyclic_magic_square(3), {5, 5}});
        cases.push_back({znzn_square(5), {4, 4}});
        for (auto& c : cases) {
            GroupPtr h = make_group(c.h);
            i64 k = 1;
            while (k * k < h->order()) ++k;
            KotzigArrayG ka = kotzig_gamma(static_cast<int>(c.base.rows()), h);
            GroupArray out = kotzig_extend(c.base, ka);
            GroupElement delta = mu_of(c.base);
            std::vector<i64> expect = delta.times(k).coords();
            for (std::size_t i = 0; i < c.h.size(); ++i) expect.push_back(0);
            CHECK(mu_of(out).coords() == expect);
        }
    }
    SUBCASE("input validation") {
        GroupArray sq = znzn_square(3);
        CHECK_THROWS_AS(kotzig_extend(sq, kotzig_gamma(4, make_group({2, 2}))), invalid_input);
        GroupArray rect = array_from_coords(make_group({16}), 4, 4, golden::kRectZ16);
        CHECK_THROWS_AS(kotzig_extend(rect, kotzig_gamma(4, make_group({2, 2}))),
                        invalid_input);
    }
}

TEST_CASE("residual block properties") {
    SUBCASE("circulants from Kotzig columns: zero lines, distinct layers") {
        for (auto h_moduli : {std::vector<i64>{2, 2}, {9}, {4, 4}}) {
            GroupPtr h = make_group(h_moduli);
            for (int m : {3, 4, 5, 6}) {
                if (m % 2 == 1 && !h->in_class_g()) continue;
                KotzigArrayG ka = kotzig_gamma(m, h);
                auto res = [&](i64 s, int i, int j) { return ka.at((i + j) % m, s); };
                for (i64 s = 0; s < h->order(); ++s) {
                    for (int i = 0; i < m; ++i) {
                        GroupElement row = zero_element(h), col = zero_element(h);
                        for (int j = 0; j < m; ++j) {
                            row = row + res(s, i, j);
                            col = col + res(s, j, i);
                        }
                        CHECK(row.is_zero());
                        CHECK(col.is_zero());
                    }
                }
                // distinct layers: for a fixed cell the blocks carry distinct values
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) {
                        std::vector<i64> vals;
                        for (i64 s = 0; s < h->order(); ++s) vals.push_back(res(s, i, j).rank());
                        std::sort(vals.begin(), vals.end());
                        CHECK(std::adjacent_find(vals.begin(), vals.end()) == vals.end());
                    }
            }
        }
    }
    SUBCASE("integer checkerboard blocks: line constants and diagonal residuals") {
        for (i64 n : {3, 5}) {
            for (i64 m : {3, 9}) {  // block side 2m
                const i64 n2 = n * n;
                for (i64 s = 1; s <= n2; ++s) {
                    auto res = [&](i64 i, i64 j) { return (i + j) % 2 == 0 ? s - 1 : n2 - s; };
                    i64 diag = 0, anti = 0;
                    for (i64 i = 0; i < 2 * m; ++i) {
                        i64 row = 0, col = 0;
                        for (i64 j = 0; j < 2 * m; ++j) {
                            row += res(i, j);
                            col += res(j, i);
                        }
                        // every row and column sums to m(n^2 - 1)
                        CHECK(row == m * (n2 - 1));
                        CHECK(col == m * (n2 - 1));
                        diag += res(i, i);
                        anti += res(i, 2 * m - 1 - i);
                    }
                    CHECK(diag == 2 * m * (s - 1));
                    CHECK(anti == 2 * m * (n2 - s));
                }
            }
        }
    }
}

TEST_CASE("squares over Z_2 + Z_2^(2a-1)") {
    SUBCASE("a=3 equals the published side-8 square") {
        GroupArray a = ms_z2_2pow(3);
        CHECK(a == array_from_coords(make_group({2, 32}), 8, 8, golden::kZ2Z32));
        CHECK(mu_of(a).coords() == std::vector<i64>{0, 28});
    }
    SUBCASE("a=2 equals the published side-4 square") {
        GroupArray a = ms_z2_2pow(2);
        CHECK(a == array_from_coords(make_group({2, 8}), 4, 4, golden::kZ2Z8));
        CHECK(mu_of(a).coords() == std::vector<i64>{0, 6});
    }
    SUBCASE("row 0 second coordinates sum to 28 for a=3") {
        GroupArray a = ms_z2_2pow(3);
        i64 s = 0;
        for (std::size_t j = 0; j < 8; ++j) s += a.at(0, j).coords()[1];
        CHECK(s == 28);
    }
    SUBCASE("magic-sum law (0, -2^(a-1))") {
        for (int a = 2; a <= 6; ++a) {
            GroupArray sq = ms_z2_2pow(a);
            i64 m2 = i64{1} << (2 * a - 1);
            CHECK(mu_of(sq).coords() == std::vector<i64>{0, m2 - (i64{1} << (a - 1))});
        }
    }
    CHECK_THROWS_AS(ms_z2_2pow(1), invalid_input);
}

TEST_CASE("squares over Z_2^(2d+1) + Z_2^(2d+3)") {
    SUBCASE("d=0 is the side-4 base over Z_2 + Z_8") {
        GroupArray a = ms_2pow_pair(0);
        CHECK(a.group()->moduli() == std::vector<i64>{2, 8});
        CHECK(mu_of(a).coords() == std::vector<i64>{0, 6});
    }
    SUBCASE("d=1 doubles the embedded magic sum") {
        GroupArray a = ms_2pow_pair(1);
        CHECK(a.rows() == 16);
        CHECK(a.group()->moduli() == std::vector<i64>{8, 32});
        CHECK(is_magic(a));
        // mu = 2 * (0,28) in Z_8 + Z_32
        CHECK(mu_of(a).coords() == std::vector<i64>{0, 24});
    }
    SUBCASE("d=2 passes the verifier at side 64") {
        GroupArray a = ms_2pow_pair(2);
        CHECK(a.rows() == 64);
        CHECK(a.group()->moduli() == std::vector<i64>{32, 128});
        CHECK(is_magic(a));
    }
    CHECK_THROWS_AS(ms_2pow_pair(-1), invalid_input);
}

TEST_CASE("Kronecker squares over Z_(k^2 m) + Z_m") {
    SUBCASE("k=3 m=3 equals the published side-9 square") {
        GroupArray a = ms_k2m_m(3, 3);
        CHECK(a == array_from_coords(make_group({27, 3}), 9, 9, golden::kZ27Z3));
        CHECK(mu_of(a).coords() == std::vector<i64>{9, 0});
        CHECK(a.at(3, 0).coords() == std::vector<i64>{16, 0});
    }
    SUBCASE("k=4 m=5 verifies with the stated law") {
        GroupArray a = ms_k2m_m(4, 5);
        CHECK(a.rows() == 20);
        CHECK(is_magic(a));
        // law: (k^3 muB1 + m muA, k muB2); muB = (0,0) for odd m, muA = 30
        CHECK(mu_of(a).coords() == std::vector<i64>{150 % 80, 0});
    }
    SUBCASE("even m uses muB = (m/2, m/2)") {
        GroupArray a = ms_k2m_m(3, 4);
        // k=3, m=4: mu = (27*2 + 4*12, 3*2) = (102 mod 36, 6 mod 4)
        CHECK(mu_of(a).coords() == std::vector<i64>{102 % 36, 6 % 4});
    }
    CHECK_THROWS_AS(ms_k2m_m(2, 3), invalid_input);
    CHECK_THROWS_AS(ms_k2m_m(3, 6), unsupported_base);
}

TEST_CASE("squares over Z_4 + Z_2^(2c)") {
    SUBCASE("c=2: side 8, doubled cyclic constant, corner tags") {
        GroupArray a = ms_z4_2pow(2);
        CHECK(a.rows() == 8);
        // each line crosses two copies of a cyclic line, so mu = (0, 2*muA)
        i64 mu_a = verify(cyclic_magic_square(4)).magic_sum->coords()[0];
        CHECK(mu_of(a).coords() == std::vector<i64>{0, 2 * mu_a % 16});
        CHECK(mu_of(a).coords() == std::vector<i64>{0, 12});
        CHECK(a.at(0, 0).coords()[0] == 0);
        CHECK(a.at(0, 4).coords()[0] == 1);
        CHECK(a.at(4, 0).coords()[0] == 2);
        CHECK(a.at(4, 4).coords()[0] == 3);
    }
    SUBCASE("c=3 verifies at side 16") {
        GroupArray a = ms_z4_2pow(3);
        CHECK(a.rows() == 16);
        CHECK(is_magic(a));
    }
    CHECK_THROWS_AS(ms_z4_2pow(1), invalid_input);
}

TEST_CASE("prime-pair squares") {
    SUBCASE("(3,1,3) routes through the Kronecker square") {
        GroupArray a = ms_prime_pair(3, 1, 3);
        CHECK(a.group()->moduli() == std::vector<i64>{3, 27});
        CHECK(a.rows() == 9);
        CHECK(is_magic(a));
    }
    SUBCASE("(2,1,3) is the Z_2 + Z_8 square") {
        GroupArray a = ms_prime_pair(2, 1, 3);
        CHECK(a == ms_z2_2pow(2));
    }
    SUBCASE("(3,3,3) uses the side-27 diagonal Latin pair") {
        GroupArray a = ms_prime_pair(3, 3, 3);
        CHECK(a.rows() == 27);
        CHECK(mu_of(a).coords() == std::vector<i64>{0, 0});
    }
    SUBCASE("(2,2,2) is the explicit Z_4 + Z_4 base") {
        GroupArray a = ms_prime_pair(2, 2, 2);
        CHECK(a == array_from_coords(make_group({4, 4}), 4, 4, golden::kZ4Z4));
    }
    SUBCASE("even-exponent pairs route through composition") {
        CHECK(is_magic(ms_prime_pair(3, 2, 2)));
        CHECK(is_magic(ms_prime_pair(3, 2, 4)));
        CHECK(is_magic(ms_prime_pair(2, 4, 4)));
        CHECK(is_magic(ms_prime_pair(2, 2, 4)));  // Z_4 + Z_16 corner square
        CHECK(is_magic(ms_prime_pair(2, 3, 5)));  // Z_8 + Z_32 pair square
        CHECK(is_magic(ms_prime_pair(2, 1, 5)));
        CHECK(is_magic(ms_prime_pair(5, 1, 3)));
    }
    CHECK_THROWS_AS(ms_prime_pair(2, 1, 1), invalid_input);   // order 4
    CHECK_THROWS_AS(ms_prime_pair(3, 1, 2), invalid_input);   // odd sum
    CHECK_THROWS_AS(ms_prime_pair(6, 1, 1), invalid_input);   // not prime
}

TEST_CASE("squares over Z_4n + Z_n") {
    SUBCASE("n=3 equals the published side-6 square, swapped cells included") {
        GroupArray a = ms_z4n_zn(3);
        CHECK(a == array_from_coords(make_group({12, 3}), 6, 6, golden::kZ12Z3));
        CHECK(mu_of(a).coords() == std::vector<i64>{9, 0});
        // the four exchanged cells (1-based rows 2 and 4)
        CHECK(a.at(1, 1).coords() == std::vector<i64>{4, 1});
        CHECK(a.at(1, 4).coords() == std::vector<i64>{1, 1});
        CHECK(a.at(3, 1).coords() == std::vector<i64>{7, 0});
        CHECK(a.at(3, 4).coords() == std::vector<i64>{10, 0});
    }
    SUBCASE("second base row before the lift") {
        GroupArray a = ms_z4n_zn(3);
        std::vector<i64> row;
        for (std::size_t j = 0; j < 6; ++j) row.push_back(a.at(4, j).coords()[0]);
        // an unswapped lower-half row carries the exchanged base row
        CHECK(row == std::vector<i64>{11, 10, 9, 3, 7, 5});
    }
    SUBCASE("magic sum (3n,0) for n = 5,7,9 and 25") {
        for (i64 n : {5, 7, 9, 25}) {
            GroupArray a = ms_z4n_zn(n);
            CHECK(a.rows() == static_cast<std::size_t>(2 * n));
            CHECK(mu_of(a).coords() == std::vector<i64>{3 * n, 0});
        }
    }
    CHECK_THROWS_AS(ms_z4n_zn(4), invalid_input);
    CHECK_THROWS_AS(ms_z4n_zn(1), invalid_input);
}

TEST_CASE("squares over Z_4n^a + Z_n^b") {
    SUBCASE("(3,1,1) matches the direct construction") {
        CHECK(ms_z4na_znb(3, 1, 1) == ms_z4n_zn(3));
    }
    SUBCASE("(3,1,3) verifies at side 18") {
        GroupArray a = ms_z4na_znb(3, 1, 3);
        CHECK(a.rows() == 18);
        CHECK(a.group()->moduli() == std::vector<i64>{12, 27});
        CHECK(is_magic(a));
    }
    SUBCASE("(5,2,2) routes through the direct construction for n=25") {
        GroupArray a = ms_z4na_znb(5, 2, 2);
        CHECK(mu_of(a).coords() == std::vector<i64>{75, 0});
    }
    SUBCASE("(3,2,4) and (3,1,5) verify") {
        CHECK(is_magic(ms_z4na_znb(3, 2, 4)));
        CHECK(is_magic(ms_z4na_znb(3, 1, 5)));
    }
    CHECK_THROWS_AS(ms_z4na_znb(2, 1, 1), invalid_input);
    CHECK_THROWS_AS(ms_z4na_znb(3, 2, 1), invalid_input);
}

TEST_CASE("2-group squares") {
    SUBCASE("order-16 bases") {
        GroupArray z44 = ms_two_power_group(make_group({4, 4}));
        CHECK(z44 == array_from_coords(make_group({4, 4}), 4, 4, golden::kZ4Z4));
        GroupArray z224 = ms_two_power_group(make_group({2, 2, 4}));
        CHECK(z224 == array_from_coords(make_group({2, 2, 4}), 4, 4, golden::kZ2Z2Z4));
        GroupArray z2222 = ms_two_power_group(make_group({2, 2, 2, 2}));
        CHECK(z2222 == array_from_coords(make_group({2, 2, 2, 2}), 4, 4, golden::kZ2222));
        CHECK(mu_of(z2222).coords() == std::vector<i64>{0, 0, 0, 0});
        GroupArray z28 = ms_two_power_group(make_group({2, 8}));
        CHECK(z28 == ms_z2_2pow(2));
        CHECK(mu_of(ms_two_power_group(make_group({16}))).coords() == std::vector<i64>{14});
    }
    SUBCASE("order 64 via the order-4 peel") {
        GroupArray a = ms_two_power_group(make_group({2, 2, 16}));
        CHECK(a.rows() == 8);
        CHECK(is_magic(a));
    }
    SUBCASE("every 2-group with side 4, 8, 16") {
        for (int a = 2; a <= 4; ++a) {
            for (const auto& moduli : abelian_groups_of_order(i64{1} << (2 * a))) {
                CAPTURE(moduli);
                GroupArray sq = ms_two_power_group(make_group(moduli));
                CHECK(sq.rows() == (std::size_t{1} << a));
                CHECK(is_magic(sq));
            }
        }
    }
    CHECK_THROWS_AS(ms_two_power_group(make_group({2, 2})), nonexistence);
    CHECK_THROWS_AS(ms_two_power_group(make_group({8})), invalid_input);  // order 8
}

TEST_CASE("odd-order squares") {
    SUBCASE("cyclic route") {
        GroupArray a = ms_odd_group(make_group({9}));
        CHECK(mu_of(a).coords() == std::vector<i64>{3});
    }
    SUBCASE("base route") {
        GroupArray a = ms_odd_group(make_group({3, 3}));
        CHECK(a == znzn_square(3));
    }
    SUBCASE("order 2025 composite route") {
        GroupArray a = ms_odd_group(make_group({3, 27, 25}));
        CHECK(a.rows() == 45);
        CHECK(is_magic(a));
    }
    SUBCASE("trivial group gives the 1x1 square") {
        GroupArray a = ms_odd_group(make_group({}));
        CHECK(a.rows() == 1);
        CHECK(is_magic(a));
    }
    SUBCASE("every odd group with side 3..15") {
        for (i64 n : {3, 5, 7, 9, 11, 13, 15}) {
            for (const auto& moduli : abelian_groups_of_order(n * n)) {
                CAPTURE(moduli);
                GroupArray sq = ms_odd_group(make_group(moduli));
                CHECK(sq.rows() == static_cast<std::size_t>(n));
                CHECK(is_magic(sq));
            }
        }
    }
}

TEST_CASE("the master constructor") {
    SUBCASE("side-2 orders do not admit squares") {
        CHECK_THROWS_AS(construct(make_group({4})), nonexistence);
        CHECK_THROWS_AS(construct(make_group({2, 2})), nonexistence);
    }
    SUBCASE("non-square order is invalid") {
        CHECK_THROWS_AS(construct(make_group({8})), invalid_input);
    }
    SUBCASE("Z_6 + Z_6 goes through the side-3 base and a 3x4 array") {
        ConstructResult res = construct_traced(make_group({6, 6}));
        CHECK(res.square.group()->moduli() == std::vector<i64>{6, 6});
        CHECK(mu_of(res.square).coords() == std::vector<i64>{0, 0});
        CHECK(res.route.find("znzn(3)") != std::string::npos);
        CHECK(res.route.find("ka(j=3,[2,2])") != std::string::npos);
    }
    SUBCASE("the result arrives in the caller's presentation") {
        GroupArray a = construct(make_group({12, 3}));
        CHECK(a.group()->moduli() == std::vector<i64>{12, 3});
        CHECK(mu_of(a).coords() == std::vector<i64>{9, 0});
        CHECK(a == ms_z4n_zn(3));

        GroupArray b = construct(make_group({36}));
        CHECK(b.group()->moduli() == std::vector<i64>{36});
        CHECK(is_magic(b));

        // a presentation whose factor order differs from the primary one
        GroupArray c = construct(make_group({3, 3, 4}));
        CHECK(c.group()->moduli() == std::vector<i64>{3, 3, 4});
        CHECK(is_magic(c));
    }
    SUBCASE("every group with side 3..12") {
        for (i64 n = 3; n <= 12; ++n) {
            for (const auto& moduli : abelian_groups_of_order(n * n)) {
                CAPTURE(moduli);
                GroupArray sq = construct(make_group(moduli));
                CHECK(sq.rows() == static_cast<std::size_t>(n));
                CHECK(is_magic(sq));
            }
        }
    }
    SUBCASE("large parameters across every dispatch branch") {
        struct Case {
            std::vector<i64> moduli;
            i64 side;
        };
        for (const Case& c : {
                 Case{{27, 243}, 81},         // odd prime pair, Kronecker route
                 Case{{4, 2500}, 100},        // 2-power base extended by Z_625
                 Case{{2, 2, 2, 8, 1225}, 280},  // deep 2-group peel + odd part
                 Case{{4, 121, 121}, 242},    // Z_4 branch, equal even pair
                 Case{{108, 243}, 162},       // Z_4 branch, odd-pair recursion
                 Case{{2, 128, 81}, 144},     // odd-exponent 2-pair + odd extend
                 Case{{65536}, 256},          // large cyclic
                 Case{{128, 128}, 128},       // diagonal Latin pair over GF(128)
                 Case{{256, 256}, 256},       // even-exponent cyclic peel
             }) {
            CAPTURE(c.moduli);
            GroupArray sq = construct(make_group(c.moduli));
            CHECK(sq.rows() == static_cast<std::size_t>(c.side));
            CHECK(is_magic(sq));
        }
    }
}
