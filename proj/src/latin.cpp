#include "magsq/latin.hpp"

#include <algorithm>
#include <numeric>

namespace magsq {

bool is_latin(const std::vector<int>& grid, int side) {
    std::vector<bool> seen(side);
    for (int i = 0; i < side; ++i) {
        std::fill(seen.begin(), seen.end(), false);
        for (int j = 0; j < side; ++j) {
            int v = grid[static_cast<std::size_t>(i) * side + j];
            if (v < 0 || v >= side || seen[v]) return false;
            seen[v] = true;
        }
    }
    for (int j = 0; j < side; ++j) {
        std::fill(seen.begin(), seen.end(), false);
        for (int i = 0; i < side; ++i) {
            int v = grid[static_cast<std::size_t>(i) * side + j];
            if (seen[v]) return false;
            seen[v] = true;
        }
    }
    return true;
}

bool is_doubly_diagonal(const std::vector<int>& grid, int side) {
    std::vector<bool> seen(side, false);
    for (int i = 0; i < side; ++i) {
        int v = grid[static_cast<std::size_t>(i) * side + i];
        if (v < 0 || v >= side || seen[v]) return false;
        seen[v] = true;
    }
    std::fill(seen.begin(), seen.end(), false);
    for (int i = 0; i < side; ++i) {
        int v = grid[static_cast<std::size_t>(i) * side + (side - 1 - i)];
        if (seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

bool are_orthogonal(const std::vector<int>& a, const std::vector<int>& b, int side) {
    std::vector<bool> seen(static_cast<std::size_t>(side) * side, false);
    for (std::size_t k = 0; k < a.size(); ++k) {
        std::size_t pair = static_cast<std::size_t>(a[k]) * side + b[k];
        if (seen[pair]) return false;
        seen[pair] = true;
    }
    return true;
}

bool is_valid_latin_pair(const LatinPair& lp) {
    return is_latin(lp.a, lp.side) && is_latin(lp.b, lp.side) &&
           is_doubly_diagonal(lp.a, lp.side) && is_doubly_diagonal(lp.b, lp.side) &&
           are_orthogonal(lp.a, lp.b, lp.side);
}

std::vector<i64> symmetric_ordering(const FiniteField& f) {
    const i64 q = f.q();
    if (q < 4) throw nonexistence("no symmetric ordering for field order " + std::to_string(q));
    std::vector<i64> e(q);
    if (f.p() == 2) {
        // pair z with z + 1; first half lists pair minima, second half mirrors
        std::vector<bool> taken(q, false);
        i64 pos = 0;
        for (i64 z = 0; z < q; ++z) {
            if (taken[z]) continue;
            i64 w = f.add(z, f.one());
            taken[z] = taken[w] = true;
            e[pos] = z;
            e[q - 1 - pos] = w;
            ++pos;
        }
    } else {
        // pair z with -z around a central 0
        std::vector<bool> taken(q, false);
        taken[0] = true;
        e[(q - 1) / 2] = 0;
        i64 pos = 0;
        for (i64 z = 1; z < q; ++z) {
            if (taken[z]) continue;
            i64 w = f.neg(z);
            taken[z] = taken[w] = true;
            e[pos] = z;
            e[q - 1 - pos] = w;
            ++pos;
        }
    }
    return e;
}

LatinPair ddmols_prime_power(i64 q) {
    if (q == 2 || q == 3)
        throw nonexistence("no doubly diagonal orthogonal pair of side " + std::to_string(q));
    i64 p = 0;
    int t = 0;
    if (!prime_power(q, p, t))
        throw invalid_input("side " + std::to_string(q) + " is not a prime power");
    FiniteField f(p, t);
    std::vector<i64> e = symmetric_ordering(f);
    std::vector<i64> index_of_elem(q);
    for (i64 k = 0; k < q; ++k) index_of_elem[e[k]] = k;

    // smallest admissible multipliers: a, b outside {0, 1} and, for odd p,
    // outside {-1}; a != b
    auto admissible = [&](i64 x) {
        if (x == 0 || x == f.one()) return false;
        if (p != 2 && x == f.neg(f.one())) return false;
        return true;
    };
    i64 a = -1, b = -1;
    for (i64 x = 0; x < q; ++x)
        if (admissible(x)) {
            if (a < 0)
                a = x;
            else {
                b = x;
                break;
            }
        }
    if (a < 0 || b < 0)
        throw nonexistence("no admissible multiplier pair in GF(" + std::to_string(q) + ")");

    LatinPair lp;
    lp.side = static_cast<int>(q);
    lp.a.resize(static_cast<std::size_t>(q) * q);
    lp.b.resize(static_cast<std::size_t>(q) * q);
    for (i64 i = 0; i < q; ++i)
        for (i64 j = 0; j < q; ++j) {
            lp.a[static_cast<std::size_t>(i) * q + j] =
                static_cast<int>(index_of_elem[f.add(f.mul(a, e[i]), e[j])]);
            lp.b[static_cast<std::size_t>(i) * q + j] =
                static_cast<int>(index_of_elem[f.add(f.mul(b, e[i]), e[j])]);
        }
    if (!is_valid_latin_pair(lp))
        throw construction_failure("constructed pair failed its invariants");
    return lp;
}

LatinPair kronecker_product(const LatinPair& x, const LatinPair& y) {
    const int m = x.side, n = y.side;
    LatinPair lp;
    lp.side = m * n;
    lp.a.resize(static_cast<std::size_t>(lp.side) * lp.side);
    lp.b.resize(lp.a.size());
    for (int i1 = 0; i1 < m; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            for (int j1 = 0; j1 < m; ++j1)
                for (int j2 = 0; j2 < n; ++j2) {
                    std::size_t idx = (static_cast<std::size_t>(i1) * n + i2) * lp.side +
                                      static_cast<std::size_t>(j1) * n + j2;
                    lp.a[idx] = x.at_a(i1, j1) * n + y.at_a(i2, j2);
                    lp.b[idx] = x.at_b(i1, j1) * n + y.at_b(i2, j2);
                }
    return lp;
}

GroupArray znzn_square(i64 n) {
    if (n == 2) throw nonexistence("no magic square of side 2");
    if (n < 2) throw invalid_input("side must be >= 3");
    GroupPtr g = make_group({n, n});
    if (n == 3) {
        // explicit base: cell (i,j) holds (i,j)
        std::vector<GroupElement> cells;
        for (i64 i = 0; i < 3; ++i)
            for (i64 j = 0; j < 3; ++j) cells.push_back(make_element(g, {i, j}));
        return GroupArray(g, 3, 3, std::move(cells));
    }
    i64 p = 0;
    int t = 0;
    if (!prime_power(n, p, t))
        throw unsupported_base("side " + std::to_string(n) +
                               " is not a prime power; use the general constructor");
    LatinPair lp = ddmols_prime_power(n);
    std::vector<GroupElement> cells;
    cells.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < lp.side; ++i)
        for (int j = 0; j < lp.side; ++j)
            cells.push_back(make_element(g, {lp.at_a(i, j), lp.at_b(i, j)}));
    return GroupArray(g, static_cast<std::size_t>(n), static_cast<std::size_t>(n),
                      std::move(cells));
}

} // namespace magsq
