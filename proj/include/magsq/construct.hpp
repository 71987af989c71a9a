#pragma once

#include <string>

#include "magsq/array.hpp"
#include "magsq/kotzig.hpp"

namespace magsq {

/**
 * Compose a magic square over G0 (side m, magic sum delta) with a Kotzig
 * array over H (m rows, |H| = k^2, column sums 0) into a magic square
 * over G0 + H of side m*k with magic sum (k*delta, 0).
 *
 * Internally builds k^2 circulant residual blocks from the Kotzig
 * columns, computes each block's two diagonal residual sums explicitly,
 * and assigns blocks to the k x k grid so both global diagonals cancel
 * (even m pairs complementary blocks; odd m column-reverses the last k
 * blocks and keeps them on the back diagonal). Output is verifier-gated.
 */
GroupArray kotzig_extend(const GroupArray& sq, const KotzigArrayG& ka);

/// Magic square over Z_2 + Z_{2^{2a-1}} of side 2^a (a >= 2) by direct
/// formula; magic sum (0, -2^{a-1}).
GroupArray ms_z2_2pow(int a);

/// Magic square over Z_{2^{2d+1}} + Z_{2^{2d+3}} of side 2^{2d+2} (d >= 0).
GroupArray ms_2pow_pair(int d);

/// Magic square over Z_{k^2 m} + Z_m of side k*m for k >= 3 and m = 3 or a
/// prime power >= 4; magic sum (k^3 muB1 + m*muA, k*muB2).
GroupArray ms_k2m_m(i64 k, i64 m);

/// Magic square over Z_4 + Z_{2^{2c}} of side 2^{c+1} (c >= 2) from four
/// shifted copies of the cyclic square; magic sum (0, 2*muA).
GroupArray ms_z4_2pow(int c);

/// Magic square over Z_{p^b} + Z_{p^c} of side p^{(b+c)/2}, for
/// 1 <= b <= c, b+c even, p^{b+c} > 4 (p prime).
GroupArray ms_prime_pair(i64 p, int b, int c);

/// Magic square over Z_{4n} + Z_n of side 2n for odd n >= 3; magic sum (3n, 0).
GroupArray ms_z4n_zn(i64 n);

/// Magic square over Z_{4n^a} + Z_{n^b} of side 2n^{(a+b)/2} for odd
/// n > 1, a <= b, a+b even.
GroupArray ms_z4na_znb(i64 n, int a, int b);

/// Magic square for any Abelian 2-group of order 2^{2a}, a >= 2, in the
/// caller's presentation.
GroupArray ms_two_power_group(const GroupPtr& g);

/// Magic square for any Abelian group of odd square order, in the
/// caller's presentation. The trivial group yields the 1x1 square.
GroupArray ms_odd_group(const GroupPtr& g);

struct ConstructResult {
    GroupArray square;
    std::string route;  // which construction chain fired, innermost first
};

/**
 * Magic square for any Abelian group of order n^2, n > 2, in the
 * caller's presentation; verifier-gated. Throws nonexistence for
 * n <= 2 and invalid_input for non-square orders.
 */
ConstructResult construct_traced(const GroupPtr& g);
GroupArray construct(const GroupPtr& g);

} // namespace magsq
