#include "magsq/construct.hpp"

#include <algorithm>
#include <cmath>

#include "magsq/classical.hpp"
#include "magsq/finite_field.hpp"
#include "magsq/io.hpp"
#include "magsq/latin.hpp"

namespace magsq {

namespace {

i64 isqrt(i64 n) {
    i64 r = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(n))));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

GroupArray gate(GroupArray a, const std::string& what) {
    if (verify(a).classification != Classification::magic_square)
        throw construction_failure(what + ": output failed the magic-square verifier");
    return a;
}

GroupArray gate_mu(GroupArray a, const std::vector<i64>& mu, const std::string& what) {
    VerificationReport r = verify(a);
    if (r.classification != Classification::magic_square)
        throw construction_failure(what + ": output failed the magic-square verifier");
    if (r.magic_sum->coords() != mu)
        throw construction_failure(what + ": output violated its magic-sum law");
    return a;
}

struct Built {
    GroupArray sq;
    std::string route;
};

std::string ka_label(const KotzigArrayG& ka) {
    return "ka(j=" + std::to_string(ka.rows) + ",[" + group_literal(*ka.group) + "])";
}

} // namespace

GroupArray kotzig_extend(const GroupArray& sq, const KotzigArrayG& ka) {
    if (!sq.is_square()) throw invalid_input("base array must be square");
    const i64 m = static_cast<i64>(sq.rows());
    if (m <= 1) throw invalid_input("base square side must exceed 1");
    VerificationReport base = verify(sq);
    if (base.classification != Classification::magic_square)
        throw invalid_input("base array is not a magic square");
    const GroupElement delta = *base.magic_sum;

    if (ka.rows != m) throw invalid_input("Kotzig array must have one row per base square row");
    if (!is_valid_kotzig(ka) || !ka.column_sum().is_zero())
        throw invalid_input("composition needs a Kotzig array with zero column sums");
    const i64 h_order = ka.group->order();
    const i64 k = isqrt(h_order);
    if (k * k != h_order)
        throw invalid_input("Kotzig group order must be a perfect square");
    if (m % 2 == 0) {
        for (int r = 0; r < ka.rows; ++r)
            for (i64 c = 0; c < h_order; ++c) {
                GroupElement want = r % 2 == 0 ? ka.at(0, c) : -ka.at(0, c);
                if (!(ka.at(r, c) == want))
                    throw invalid_input(
                        "even-side composition needs the alternating Kotzig row structure");
            }
    }

    const i64 blocks = h_order;  // k^2
    // residual circulant of block s: r^s(i,j) = ka((i+j) mod m, s)
    auto residual = [&](i64 s, i64 i, i64 j) -> const GroupElement& {
        return ka.at(static_cast<int>((i + j) % m), s);
    };
    std::vector<bool> rev(blocks, false);
    if (m % 2 == 1)
        for (i64 s = blocks - k; s < blocks; ++s) rev[s] = true;

    // both diagonal residual sums per block, reversal included
    std::vector<GroupElement> main_res, anti_res;
    main_res.reserve(blocks);
    anti_res.reserve(blocks);
    for (i64 s = 0; s < blocks; ++s) {
        GroupElement d = zero_element(ka.group), e = zero_element(ka.group);
        for (i64 i = 0; i < m; ++i) {
            i64 jd = rev[s] ? m - 1 - i : i;
            i64 je = rev[s] ? i : m - 1 - i;
            d = d + residual(s, i, jd);
            e = e + residual(s, i, je);
        }
        main_res.push_back(d);
        anti_res.push_back(e);
    }

    // grid assignment: both global diagonals must have vanishing residual sums
    std::vector<i64> grid(static_cast<std::size_t>(k) * k, -1);
    std::vector<bool> used(blocks, false);
    auto place = [&](i64 u, i64 v, i64 s) {
        grid[static_cast<std::size_t>(u) * k + v] = s;
        used[s] = true;
    };

    if (k == 1) {
        place(0, 0, 0);
    } else {
        const i64 c = (k - 1) / 2;
        if (k % 2 == 1) {
            i64 center = -1;
            for (i64 s = 0; s < blocks; ++s)
                if (main_res[s].is_zero() && anti_res[s].is_zero()) {
                    center = s;
                    break;
                }
            if (center < 0) throw construction_failure("no doubly-zero center block");
            place(c, c, center);
        }
        if (m % 2 == 1) {
            // unreversed blocks carry zero main residual, reversed blocks zero
            // back residual; keep them on the matching diagonal
            for (i64 t = 0; t < k; ++t) {
                if (grid[static_cast<std::size_t>(t) * k + t] >= 0) continue;
                i64 pick = -1;
                for (i64 s = 0; s < blocks; ++s)
                    if (!used[s] && !rev[s] && main_res[s].is_zero()) {
                        pick = s;
                        break;
                    }
                if (pick < 0) throw construction_failure("no block for the main diagonal");
                place(t, t, pick);
            }
            for (i64 t = 0; t < k; ++t) {
                if (grid[static_cast<std::size_t>(t) * k + (k - 1 - t)] >= 0) continue;
                i64 pick = -1;
                for (i64 s = 0; s < blocks; ++s)
                    if (!used[s] && rev[s] && anti_res[s].is_zero()) {
                        pick = s;
                        break;
                    }
                if (pick < 0) throw construction_failure("no block for the back diagonal");
                place(t, k - 1 - t, pick);
            }
        } else {
            // complementary pairs first, zero-residual blocks as filler
            auto fill = [&](bool main_diag) {
                std::vector<std::pair<i64, i64>> cells;
                for (i64 t = 0; t < k; ++t) {
                    i64 v = main_diag ? t : k - 1 - t;
                    if (grid[static_cast<std::size_t>(t) * k + v] < 0) cells.emplace_back(t, v);
                }
                const auto& res = main_diag ? main_res : anti_res;
                std::size_t ci = 0;
                std::vector<bool> matched(blocks, false);
                for (i64 s = 0; s < blocks && cells.size() - ci >= 2; ++s) {
                    if (used[s] || matched[s] || res[s].is_zero()) continue;
                    for (i64 t = s + 1; t < blocks; ++t) {
                        if (used[t] || matched[t]) continue;
                        if (res[t] == -res[s]) {
                            matched[s] = matched[t] = true;
                            place(cells[ci].first, cells[ci].second, s);
                            ++ci;
                            place(cells[ci].first, cells[ci].second, t);
                            ++ci;
                            break;
                        }
                    }
                }
                for (i64 s = 0; s < blocks && ci < cells.size(); ++s) {
                    if (used[s] || !res[s].is_zero()) continue;
                    place(cells[ci].first, cells[ci].second, s);
                    ++ci;
                }
                if (ci != cells.size())
                    throw construction_failure("no feasible block placement");
            };
            fill(true);
            fill(false);
        }
    }
    {
        i64 next = 0;
        for (i64 u = 0; u < k; ++u)
            for (i64 v = 0; v < k; ++v) {
                if (grid[static_cast<std::size_t>(u) * k + v] >= 0) continue;
                while (used[next]) ++next;
                place(u, v, next);
            }
    }

    const GroupPtr sum = direct_sum(sq.group(), ka.group);
    const i64 side = m * k;
    std::vector<GroupElement> cells;
    cells.reserve(static_cast<std::size_t>(side) * side);
    for (i64 gi = 0; gi < side; ++gi)
        for (i64 gj = 0; gj < side; ++gj) {
            i64 u = gi / m, v = gj / m, i = gi % m, j = gj % m;
            i64 s = grid[static_cast<std::size_t>(u) * k + v];
            i64 jj = rev[s] ? m - 1 - j : j;
            cells.push_back(concat_elements(sum, sq.at(i, jj), residual(s, i, jj)));
        }

    GroupElement mu = concat_elements(sum, delta.times(k), zero_element(ka.group));
    return gate_mu(GroupArray(sum, side, side, std::move(cells)), mu.coords(), "kotzig_extend");
}

GroupArray ms_z2_2pow(int a) {
    if (a < 2) throw invalid_input("ms_z2_2pow needs parameter >= 2");
    const i64 side = i64{1} << a;
    const i64 m2 = i64{1} << (2 * a - 1);
    GroupPtr g = make_group({2, m2});
    const i64 half = side / 2;
    std::vector<std::vector<i64>> coords(static_cast<std::size_t>(side) * side);

    for (i64 j = 0; j < side; ++j) {
        i64 v;
        if (j < half)
            v = j;
        else
            v = j % 2 == 0 ? j + 1 : j - 1;
        coords[j] = {0, v};
    }
    for (i64 j = 0; j < side; ++j)
        coords[side + j] = {0, ((i64{1} << (a + 1)) - 1 - coords[j][1]) % m2};
    for (i64 i = 2; i < half; ++i)
        for (i64 j = 0; j < side; ++j)
            coords[i * side + j] = {0, (coords[(i - 2) * side + j][1] + (i64{1} << (a + 1))) % m2};
    for (i64 i = half; i < side; ++i)
        for (i64 j = 0; j < side; ++j)
            coords[i * side + j] = {1, coords[(i - half) * side + j][1]};

    i64 mu2 = (m2 - (i64{1} << (a - 1))) % m2;
    return gate_mu(array_from_coords(g, side, side, coords), {0, mu2}, "ms_z2_2pow");
}

GroupArray ms_2pow_pair(int d) {
    if (d < 0) throw invalid_input("ms_2pow_pair needs parameter >= 0");
    if (d == 0) return ms_z2_2pow(2);

    if (d == 1) {
        GroupArray a = ms_z2_2pow(3);  // 8x8 over Z_2 + Z_32
        GroupPtr g = make_group({8, 32});
        const i64 side = 16;
        std::vector<std::vector<i64>> coords(side * side);
        for (i64 u = 0; u < side; ++u)
            for (i64 v = 0; v < side; ++v) {
                i64 s = u / 8, t = v / 8;
                const auto& e = a.at(static_cast<std::size_t>(u % 8), static_cast<std::size_t>(v % 8));
                // Z_2 embedded as <4> in Z_8, corner shift 2s+t
                coords[u * side + v] = {(4 * e.coords()[0] + 2 * s + t) % 8, e.coords()[1]};
            }
        GroupArray out = array_from_coords(g, side, side, coords);
        VerificationReport rep = verify(out);
        // each sub-block stays magic under its shift (8g = 0 in Z_8), so the
        // full square doubles the embedded base constant (0,28)
        GroupElement mu_a = make_element(g, {0, 28});
        if (rep.classification != Classification::magic_square ||
            !(*rep.magic_sum == mu_a.times(2)))
            throw construction_failure("ms_2pow_pair: doubled magic-sum law violated");
        return out;
    }

    IntSquare a = int_magic_square(1 << d);
    GroupArray b = ms_z2_2pow(d + 2);  // side 2^{d+2} over Z_2 + Z_{2^{2d+3}}
    const i64 m1 = i64{1} << (2 * d + 1), m2 = i64{1} << (2 * d + 3);
    GroupPtr g = make_group({m1, m2});
    const i64 inner = i64{1} << (d + 2);
    const i64 side = i64{1} << (2 * d + 2);
    std::vector<std::vector<i64>> coords(static_cast<std::size_t>(side) * side);
    for (i64 u = 0; u < side; ++u)
        for (i64 v = 0; v < side; ++v) {
            i64 i = u / inner, s = u % inner, j = v / inner, t = v % inner;
            const auto& e = b.at(static_cast<std::size_t>(s), static_cast<std::size_t>(t));
            coords[u * side + v] = {((i64{1} << (2 * d)) * e.coords()[0] +
                                     a.at(static_cast<int>(i), static_cast<int>(j))) %
                                        m1,
                                    e.coords()[1]};
        }
    return gate(array_from_coords(g, side, side, coords), "ms_2pow_pair");
}

GroupArray ms_k2m_m(i64 k, i64 m) {
    if (k < 3) throw invalid_input("ms_k2m_m needs k >= 3");
    {
        i64 p;
        int t;
        if (!(m == 3 || (m >= 4 && prime_power(m, p, t))))
            throw unsupported_base("ms_k2m_m base side must be 3 or a prime power >= 4");
    }
    IntSquare a = int_magic_square(static_cast<int>(k));
    GroupArray b = znzn_square(m);
    const i64 mod1 = k * k * m;
    GroupPtr g = make_group({mod1, m});
    const i64 side = k * m;
    std::vector<std::vector<i64>> coords(static_cast<std::size_t>(side) * side);
    for (i64 u = 0; u < side; ++u)
        for (i64 v = 0; v < side; ++v) {
            i64 q1 = u / k, r1 = u % k, q2 = v / k, r2 = v % k;
            const auto& e = b.at(static_cast<std::size_t>(q1), static_cast<std::size_t>(q2));
            coords[u * side + v] = {
                (k * k * e.coords()[0] + a.at(static_cast<int>(r1), static_cast<int>(r2))) % mod1,
                e.coords()[1]};
        }
    const auto mu_b = verify(b).magic_sum->coords();
    const i64 mu_a = a.magic_constant();
    std::vector<i64> mu = {(k * k * k % mod1 * (mu_b[0] % mod1) + m * mu_a) % mod1,
                           k * mu_b[1] % m};
    return gate_mu(array_from_coords(g, side, side, coords), mu, "ms_k2m_m");
}

GroupArray ms_z4_2pow(int c) {
    if (c < 2) throw invalid_input("ms_z4_2pow needs parameter >= 2");
    const i64 q = i64{1} << c;           // quadrant side
    const i64 m2 = i64{1} << (2 * c);    // cyclic modulus
    GroupArray a = cyclic_magic_square(q);
    GroupPtr g = make_group({4, m2});
    const i64 side = 2 * q;
    std::vector<std::vector<i64>> coords(static_cast<std::size_t>(side) * side);
    for (i64 u = 0; u < side; ++u)
        for (i64 v = 0; v < side; ++v) {
            i64 s = u / q, t = v / q;
            const auto& e = a.at(static_cast<std::size_t>(u % q), static_cast<std::size_t>(v % q));
            coords[u * side + v] = {2 * s + t, e.coords()[0]};
        }
    i64 mu_a = verify(a).magic_sum->coords()[0];
    return gate_mu(array_from_coords(g, side, side, coords), {0, 2 * mu_a % m2}, "ms_z4_2pow");
}

GroupArray ms_z4n_zn(i64 n) {
    if (n < 3 || n % 2 == 0) throw invalid_input("ms_z4n_zn needs odd n >= 3");
    GroupPtr g = make_group({4 * n, n});
    const i64 side = 2 * n;

    // two rows over Z_{4n} with column sums 4n-1, then the two exchanges
    std::vector<i64> row1(side), row2(side);
    for (i64 j = 0; j < side; ++j) {
        row1[j] = j;
        row2[j] = 4 * n - 1 - j;
    }
    std::swap(row1[n], row2[n]);                  // n <-> 3n-1
    std::swap(row1[2 * n - 1], row2[2 * n - 1]);  // 2n-1 <-> 2n

    std::vector<std::vector<i64>> coords(static_cast<std::size_t>(side) * side);
    for (i64 i = 0; i < side; ++i)
        for (i64 j = 0; j < side; ++j)
            coords[i * side + j] =
                i < n ? std::vector<i64>{row1[j], i} : std::vector<i64>{row2[j], i - n};

    auto swap_cells = [&](i64 r, i64 c1, i64 c2) {
        std::swap(coords[r * side + c1], coords[r * side + c2]);
    };
    const i64 h = (n - 1) / 2;
    if (n % 4 == 1) {
        swap_cells(n, n - 1, n);
        swap_cells(0, n - 1, n);
    }
    swap_cells(h, h, (3 * n - 1) / 2);
    swap_cells(n, h, (3 * n - 1) / 2);

    return gate_mu(array_from_coords(g, side, side, coords), {3 * n % (4 * n), 0}, "ms_z4n_zn");
}

namespace {

Built build_z4na_znb(i64 n, int a, int b);
Built build_prime_pair(i64 p, int beta, int gamma);
Built build_odd(const GroupPtr& prim);
Built build_2power(const GroupPtr& prim);

GroupArray to_presentation(const GroupArray& sq, const GroupPtr& target) {
    if (sq.group()->same_presentation(*target)) return sq;
    return map_array(sq, crt_isomorphism(sq.group(), target));
}

Built build_z4na_znb(i64 n, int a, int b) {
    if (n <= 1 || n % 2 == 0) throw invalid_input("ms_z4na_znb needs odd n > 1");
    if (a < 1 || b < a || (a + b) % 2 != 0)
        throw invalid_input("ms_z4na_znb needs 1 <= a <= b with a+b even");
    const std::string label =
        "z4na_znb(" + std::to_string(n) + "," + std::to_string(a) + "," + std::to_string(b) + ")";

    if (a == b)
        return {ms_z4n_zn(ipow(n, a)), "z4n_zn(" + std::to_string(ipow(n, a)) + ")"};

    if (a % 2 == 0) {
        GroupArray base = cyclic_magic_square(2 * ipow(n, a / 2));
        KotzigArrayG ka = kotzig_gamma(static_cast<int>(2 * ipow(n, a / 2)),
                                       make_group({ipow(n, b)}));
        return {kotzig_extend(base, ka),
                label + "=extend(cyclic(" + std::to_string(2 * ipow(n, a / 2)) + ")," +
                    ka_label(ka) + ")"};
    }

    // odd a < b: extend the square for Z_{4n^a} + Z_{n^{b-2}} by n^2 integer
    // residual blocks placed in complementary pairs on the diagonals
    Built inner = build_z4na_znb(n, a, b - 2);
    GroupArray y = to_presentation(inner.sq, make_group({4 * ipow(n, a), ipow(n, b - 2)}));
    const i64 n2 = n * n;
    const i64 bs = static_cast<i64>(y.rows());  // block side 2m
    GroupPtr g = make_group({4 * ipow(n, a), ipow(n, b)});
    const i64 side = bs * n;

    // block s (1-based) holds s-1 on equal parities, n^2-s elsewhere
    auto res = [&](i64 s, i64 i, i64 j) { return (i + j) % 2 == 0 ? s - 1 : n2 - s; };

    // grid: center block (n^2+1)/2; complementary pairs (q, n^2+1-q) share a
    // diagonal; everything else row-major
    std::vector<i64> grid(static_cast<std::size_t>(n) * n, -1);
    std::vector<bool> used(static_cast<std::size_t>(n2) + 1, false);
    auto place = [&](i64 u, i64 v, i64 s) {
        grid[static_cast<std::size_t>(u) * n + v] = s;
        used[s] = true;
    };
    const i64 c = (n - 1) / 2;
    place(c, c, (n2 + 1) / 2);
    i64 q = 1;
    for (i64 t = 0; t < n; ++t) {
        if (t == c) continue;
        place(t, t, q % 2 == 1 ? (q + 1) / 2 : n2 + 1 - q / 2);
        ++q;
    }
    for (i64 t = 0; t < n; ++t) {
        if (t == c) continue;
        place(t, n - 1 - t, q % 2 == 1 ? (q + 1) / 2 : n2 + 1 - q / 2);
        ++q;
    }
    {
        i64 next = 1;
        for (i64 u = 0; u < n; ++u)
            for (i64 v = 0; v < n; ++v) {
                if (grid[static_cast<std::size_t>(u) * n + v] >= 0) continue;
                while (used[next]) ++next;
                place(u, v, next);
            }
    }

    const i64 mod2 = ipow(n, b);
    std::vector<std::vector<i64>> coords(static_cast<std::size_t>(side) * side);
    for (i64 gi = 0; gi < side; ++gi)
        for (i64 gj = 0; gj < side; ++gj) {
            i64 u = gi / bs, v = gj / bs, i = gi % bs, j = gj % bs;
            i64 s = grid[static_cast<std::size_t>(u) * n + v];
            const auto& e = y.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            coords[gi * side + gj] = {e.coords()[0], (n2 * e.coords()[1] + res(s, i, j)) % mod2};
        }
    return {gate(array_from_coords(g, side, side, coords), "ms_z4na_znb"),
            label + "=blocks(" + inner.route + ")"};
}

Built build_prime_pair(i64 p, int beta, int gamma) {
    {
        i64 pp;
        int pt;
        if (!prime_power(p, pp, pt) || pt != 1)
            throw invalid_input("ms_prime_pair needs a prime p");
    }
    if (beta < 1 || gamma < beta || (beta + gamma) % 2 != 0)
        throw invalid_input("ms_prime_pair needs 1 <= b <= c with b+c even");
    if (ipow(p, beta + gamma) <= 4)
        throw invalid_input("ms_prime_pair needs group order > 4");
    const std::string label = "prime_pair(" + std::to_string(p) + "," + std::to_string(beta) +
                              "," + std::to_string(gamma) + ")";
    GroupPtr target = make_group({ipow(p, beta), ipow(p, gamma)});

    auto finish = [&](GroupArray sq, const std::string& sub) -> Built {
        return {to_presentation(sq, target), label + "=" + sub};
    };

    if (beta % 2 == 0) {
        if (p == 2 && beta == 2) {
            if (gamma == 2) {
                // explicit Z_4 + Z_4 base
                return finish(array_from_coords(make_group({4, 4}), 4, 4,
                                                {{1, 1}, {0, 2}, {3, 3}, {2, 0},
                                                 {0, 3}, {1, 0}, {2, 1}, {3, 2},
                                                 {2, 2}, {3, 1}, {0, 0}, {1, 3},
                                                 {3, 0}, {2, 3}, {1, 2}, {0, 1}}),
                              "base(4,4)");
            }
            return finish(ms_z4_2pow(gamma / 2), "z4_2pow(" + std::to_string(gamma / 2) + ")");
        }
        GroupArray base = cyclic_magic_square(ipow(p, beta / 2));
        KotzigArrayG ka =
            kotzig_gamma(static_cast<int>(ipow(p, beta / 2)), make_group({ipow(p, gamma)}));
        return finish(kotzig_extend(base, ka),
                      "extend(cyclic(" + std::to_string(ipow(p, beta / 2)) + ")," + ka_label(ka) +
                          ")");
    }

    // beta odd
    if (beta == gamma)
        return finish(znzn_square(ipow(p, beta)), "znzn(" + std::to_string(ipow(p, beta)) + ")");
    if (beta == 1) {
        if (p == 2) return finish(ms_z2_2pow((gamma + 1) / 2),
                                  "z2_2pow(" + std::to_string((gamma + 1) / 2) + ")");
        return finish(ms_k2m_m(ipow(p, (gamma - 1) / 2), p),
                      "k2m_m(" + std::to_string(ipow(p, (gamma - 1) / 2)) + "," +
                          std::to_string(p) + ")");
    }
    const int kappa = (gamma - beta) / 2;
    if (p == 2 && kappa == 1)
        return finish(ms_2pow_pair((beta - 1) / 2),
                      "2pow_pair(" + std::to_string((beta - 1) / 2) + ")");
    return finish(ms_k2m_m(ipow(p, kappa), ipow(p, beta)),
                  "k2m_m(" + std::to_string(ipow(p, kappa)) + "," +
                      std::to_string(ipow(p, beta)) + ")");
}

Built build_odd(const GroupPtr& prim) {
    if (prim->order() % 2 == 0) throw invalid_input("ms_odd_group needs odd order");
    if (prim->is_trivial())
        return {GroupArray(prim, 1, 1, {zero_element(prim)}), "trivial"};
    const i64 n = isqrt(prim->order());
    if (n * n != prim->order()) throw invalid_input("group order is not a perfect square");

    if (prim->is_cyclic())
        return {to_presentation(cyclic_magic_square(n), prim), "cyclic(" + std::to_string(n) + ")"};

    // smallest prime; one even-exponent factor if present, else the two
    // smallest odd-exponent factors
    const auto& fac = prim->primary_factors();
    i64 p = fac[0].first;
    std::vector<std::size_t> mine;
    for (std::size_t i = 0; i < fac.size(); ++i)
        if (fac[i].first == p) mine.push_back(i);
    std::vector<std::size_t> chosen;
    for (std::size_t i : mine)
        if (fac[i].second % 2 == 0) {
            chosen = {i};
            break;
        }
    if (chosen.empty()) {
        for (std::size_t i : mine) {
            if (fac[i].second % 2 == 1) chosen.push_back(i);
            if (chosen.size() == 2) break;
        }
        if (chosen.size() != 2)
            throw construction_failure("no even-exponent-sum factor pair");
    }

    Built h = chosen.size() == 1
                  ? Built{cyclic_magic_square(ipow(p, fac[chosen[0]].second / 2)),
                          "cyclic(" + std::to_string(ipow(p, fac[chosen[0]].second / 2)) + ")"}
                  : build_prime_pair(p, fac[chosen[0]].second, fac[chosen[1]].second);
    GroupPtr h_group = chosen.size() == 1
                           ? make_group({ipow(p, fac[chosen[0]].second)})
                           : make_group({ipow(p, fac[chosen[0]].second),
                                         ipow(p, fac[chosen[1]].second)});
    GroupArray h_sq = to_presentation(h.sq, h_group);

    std::vector<i64> rest;
    for (std::size_t i = 0; i < fac.size(); ++i)
        if (std::find(chosen.begin(), chosen.end(), i) == chosen.end())
            rest.push_back(prim->primary_moduli()[i]);
    if (rest.empty()) return {to_presentation(h_sq, prim), h.route};

    KotzigArrayG ka = kotzig_gamma(static_cast<int>(h_sq.rows()), make_group(rest));
    GroupArray out = kotzig_extend(h_sq, ka);
    return {to_presentation(out, prim), "extend(" + h.route + "," + ka_label(ka) + ")"};
}

Built build_2power(const GroupPtr& prim) {
    const i64 order = prim->order();
    i64 n = isqrt(order);
    if (n * n != order) throw invalid_input("group order is not a perfect square");
    if (n <= 2) throw nonexistence("no magic square of side " + std::to_string(n));

    if (prim->is_cyclic())
        return {to_presentation(cyclic_magic_square(n), prim), "cyclic(" + std::to_string(n) + ")"};

    std::vector<int> exps;
    for (auto [p, e] : prim->primary_factors()) {
        if (p != 2) throw invalid_input("ms_two_power_group needs a 2-group");
        exps.push_back(e);
    }

    if (n == 4) {
        // explicit order-16 bases
        if (exps == std::vector<int>{1, 3})
            return {to_presentation(ms_z2_2pow(2), prim), "base(2,8)"};
        if (exps == std::vector<int>{2, 2}) return build_prime_pair(2, 2, 2);
        if (exps == std::vector<int>{1, 1, 2})
            return {gate(array_from_coords(make_group({2, 2, 4}), 4, 4,
                                           {{0, 0, 3}, {0, 0, 2}, {0, 1, 3}, {0, 1, 2},
                                            {0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1},
                                            {1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1},
                                            {1, 0, 3}, {1, 0, 2}, {1, 1, 3}, {1, 1, 2}}),
                         "base(2,2,4)"),
                    "base(2,2,4)"};
        return {gate(array_from_coords(
                         make_group({2, 2, 2, 2}), 4, 4,
                         {{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 1, 0, 1},
                          {1, 1, 0, 0}, {1, 0, 0, 0}, {1, 1, 0, 1}, {1, 0, 0, 1},
                          {0, 0, 1, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}, {0, 1, 1, 1},
                          {1, 1, 1, 0}, {1, 0, 1, 0}, {1, 1, 1, 1}, {1, 0, 1, 1}}),
                     "base(2,2,2,2)"),
                "base(2,2,2,2)"};
    }

    // induction: peel an order-4 summand, a cyclic even-exponent factor, or
    // an odd-exponent pair
    auto extend_with = [&](Built base, const GroupPtr& base_group,
                           const std::vector<i64>& rest) -> Built {
        GroupArray base_sq = to_presentation(base.sq, base_group);
        KotzigArrayG ka = kotzig_gamma(static_cast<int>(base_sq.rows()), make_group(rest));
        return {kotzig_extend(base_sq, ka),
                "extend(" + base.route + "," + ka_label(ka) + ")"};
    };

    const std::vector<i64>& pm = prim->primary_moduli();
    const bool two_ones = exps.size() >= 2 && exps[0] == 1 && exps[1] == 1;
    auto it2 = std::find(exps.begin(), exps.end(), 2);
    if (two_ones || it2 != exps.end()) {
        std::vector<i64> rest;
        std::vector<i64> hmod;
        if (two_ones) {
            hmod = {2, 2};
            rest.assign(pm.begin() + 2, pm.end());
        } else {
            hmod = {4};
            std::size_t drop = static_cast<std::size_t>(it2 - exps.begin());
            for (std::size_t i = 0; i < pm.size(); ++i)
                if (i != drop) rest.push_back(pm[i]);
        }
        Built k_built = build_2power(make_group(rest));
        Built out = extend_with(std::move(k_built), make_group(rest), hmod);
        return out;
    }
    if (exps[0] % 2 == 0) {
        Built base{cyclic_magic_square(i64{1} << (exps[0] / 2)),
                   "cyclic(" + std::to_string(i64{1} << (exps[0] / 2)) + ")"};
        return extend_with(std::move(base), make_group({pm[0]}),
                           std::vector<i64>(pm.begin() + 1, pm.end()));
    }
    // exps[0] odd: another odd exponent > 1 must exist
    std::size_t mate = 0;
    for (std::size_t i = 1; i < exps.size(); ++i)
        if (exps[i] % 2 == 1) {
            mate = i;
            break;
        }
    if (mate == 0) throw construction_failure("no odd-exponent partner");
    Built k_built = build_prime_pair(2, exps[0], exps[mate]);
    std::vector<i64> rest;
    for (std::size_t i = 0; i < pm.size(); ++i)
        if (i != 0 && i != mate) rest.push_back(pm[i]);
    if (rest.empty()) return k_built;
    return extend_with(std::move(k_built), make_group({pm[0], pm[mate]}), rest);
}

Built build_any(const GroupPtr& g) {
    const i64 order = g->order();
    const i64 n = isqrt(order);
    if (n * n != order) throw invalid_input("group order is not a perfect square");
    if (n <= 2)
        throw nonexistence("no magic square of side " + std::to_string(n) +
                           ": side-2 squares exist over no group of order 4");

    GroupPtr prim = primary_presentation(g);
    int beta = 0;
    i64 k = n;
    while (k % 2 == 0) {
        k /= 2;
        ++beta;
    }

    if (beta == 0) return build_odd(prim);
    if (k == 1) return build_2power(prim);

    std::vector<i64> two_part, odd_part;
    for (i64 q : prim->primary_moduli())
        (q % 2 == 0 ? two_part : odd_part).push_back(q);

    if (beta == 1) {
        if (two_part == std::vector<i64>{2, 2}) {
            Built base = build_odd(make_group(odd_part));
            GroupArray base_sq = to_presentation(base.sq, make_group(odd_part));
            KotzigArrayG ka = kotzig_gamma(static_cast<int>(k), make_group({2, 2}));
            return {kotzig_extend(base_sq, ka),
                    "extend(" + base.route + "," + ka_label(ka) + ")"};
        }
        // Sylow-2 part is Z_4
        if (prim->is_cyclic())
            return {cyclic_magic_square(n), "cyclic(" + std::to_string(n) + ")"};

        // an odd prime with two factors of even exponent sum always exists
        const auto& fac = prim->primary_factors();
        i64 p = 0;
        std::vector<std::size_t> pair;
        for (std::size_t i = 0; i < fac.size(); ++i) {
            if (fac[i].first == 2) continue;
            std::vector<std::size_t> mine;
            for (std::size_t j = i; j < fac.size(); ++j)
                if (fac[j].first == fac[i].first) mine.push_back(j);
            if (mine.size() < 2) continue;
            std::vector<std::size_t> odd_e, even_e;
            for (std::size_t j : mine)
                (fac[j].second % 2 == 1 ? odd_e : even_e).push_back(j);
            // the odd-exponent count per prime is even, so one side has >= 2
            if (odd_e.size() < 2 && even_e.size() < 2)
                throw construction_failure("no even-exponent-sum factor pair");
            p = fac[i].first;
            if (odd_e.size() >= 2)
                pair = {odd_e[0], odd_e[1]};
            else
                pair = {even_e[0], even_e[1]};
            break;
        }
        if (p == 0) throw construction_failure("odd part unexpectedly cyclic");
        int ga = fac[pair[0]].second, de = fac[pair[1]].second;
        Built core = build_z4na_znb(p, std::min(ga, de), std::max(ga, de));
        GroupPtr core_group =
            make_group({4 * ipow(p, std::min(ga, de)), ipow(p, std::max(ga, de))});
        GroupArray core_sq = to_presentation(core.sq, core_group);
        std::vector<i64> rest;
        for (std::size_t i = 0; i < fac.size(); ++i) {
            if (fac[i].first == 2 || i == pair[0] || i == pair[1]) continue;
            rest.push_back(prim->primary_moduli()[i]);
        }
        if (rest.empty()) return {core_sq, core.route};
        KotzigArrayG ka = kotzig_gamma(static_cast<int>(core_sq.rows()), make_group(rest));
        return {kotzig_extend(core_sq, ka), "extend(" + core.route + "," + ka_label(ka) + ")"};
    }

    // beta >= 2: extend the Sylow-2 square by the odd part
    Built base = build_2power(make_group(two_part));
    GroupArray base_sq = to_presentation(base.sq, make_group(two_part));
    KotzigArrayG ka = kotzig_gamma(static_cast<int>(i64{1} << beta), make_group(odd_part));
    return {kotzig_extend(base_sq, ka), "extend(" + base.route + "," + ka_label(ka) + ")"};
}

} // namespace

GroupArray ms_prime_pair(i64 p, int b, int c) {
    Built built = build_prime_pair(p, b, c);
    return gate(to_presentation(built.sq, make_group({ipow(p, b), ipow(p, c)})),
                "ms_prime_pair");
}

GroupArray ms_z4na_znb(i64 n, int a, int b) {
    Built built = build_z4na_znb(n, a, b);
    return gate(to_presentation(built.sq, make_group({4 * ipow(n, a), ipow(n, b)})),
                "ms_z4na_znb");
}

GroupArray ms_two_power_group(const GroupPtr& g) {
    const i64 order = g->order();
    const i64 n = isqrt(order);
    if (n * n != order || (n & (n - 1)) != 0)
        throw invalid_input("ms_two_power_group needs order 2^(2a)");
    if (n <= 2) throw nonexistence("no magic square of side " + std::to_string(n));
    Built built = build_2power(primary_presentation(g));
    return gate(to_presentation(built.sq, g), "ms_two_power_group");
}

GroupArray ms_odd_group(const GroupPtr& g) {
    Built built = build_odd(primary_presentation(g));
    return gate(to_presentation(built.sq, g), "ms_odd_group");
}

ConstructResult construct_traced(const GroupPtr& g) {
    Built built = build_any(g);
    GroupArray out = gate(to_presentation(built.sq, g), "construct");
    return {std::move(out), std::move(built.route)};
}

GroupArray construct(const GroupPtr& g) { return construct_traced(g).square; }

} // namespace magsq
