#include "magsq/classical.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <numeric>

namespace magsq {

namespace {

IntSquare siamese(int n) {
    IntSquare sq{n, std::vector<i64>(static_cast<std::size_t>(n) * n, -1)};
    int i = 0, j = n / 2;
    for (i64 v = 0; v < static_cast<i64>(n) * n; ++v) {
        sq.cells[static_cast<std::size_t>(i) * n + j] = v;
        int ni = (i - 1 + n) % n, nj = (j + 1) % n;
        if (sq.at(ni, nj) >= 0) {
            ni = (i + 1) % n;
            nj = j;
        }
        i = ni;
        j = nj;
    }
    return sq;
}

// doubly even: complement the block-diagonal pattern of each 4x4 tile
IntSquare complement_method(int n) {
    IntSquare sq{n, std::vector<i64>(static_cast<std::size_t>(n) * n)};
    const i64 top = static_cast<i64>(n) * n - 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            i64 v = static_cast<i64>(i) * n + j;
            bool ci = i % 4 == 0 || i % 4 == 3;
            bool cj = j % 4 == 0 || j % 4 == 3;
            sq.cells[v] = (ci == cj) ? top - v : v;
        }
    return sq;
}

// singly even: LUX method over a Siamese square of side m = n/2
IntSquare lux_method(int n) {
    const int k = (n - 2) / 4;
    const int m = 2 * k + 1;
    IntSquare s = siamese(m);
    std::vector<char> letter(static_cast<std::size_t>(m) * m, 'X');
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j < m; ++j) letter[static_cast<std::size_t>(i) * m + j] = 'L';
    for (int j = 0; j < m; ++j) letter[static_cast<std::size_t>(k + 1) * m + j] = 'U';
    letter[static_cast<std::size_t>(k) * m + k] = 'U';
    letter[static_cast<std::size_t>(k + 1) * m + k] = 'L';

    // 2x2 block fillings by letter, offsets applied to 4*base
    auto block = [](char c) -> std::array<int, 4> {
        switch (c) {
            case 'L': return {3, 0, 1, 2};
            case 'U': return {0, 3, 1, 2};
            default: return {0, 3, 2, 1};  // X
        }
    };

    IntSquare sq{n, std::vector<i64>(static_cast<std::size_t>(n) * n)};
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const i64 base = 4 * s.at(i, j);
            const auto off = block(letter[static_cast<std::size_t>(i) * m + j]);
            sq.cells[static_cast<std::size_t>(2 * i) * n + 2 * j] = base + off[0];
            sq.cells[static_cast<std::size_t>(2 * i) * n + 2 * j + 1] = base + off[1];
            sq.cells[static_cast<std::size_t>(2 * i + 1) * n + 2 * j] = base + off[2];
            sq.cells[static_cast<std::size_t>(2 * i + 1) * n + 2 * j + 1] = base + off[3];
        }
    return sq;
}

// 3 x k Kotzig base for odd k: first row 1..k, second row backtracked,
// third row forced by the column sum 3(k+1)/2.
std::vector<int> kotzig_base3(int k) {
    const int target = 3 * (k + 1) / 2;
    std::vector<int> row2(k, 0);
    std::vector<bool> used2(k + 1, false), used3(k + 1, false);

    auto rec = [&](auto&& self, int col) -> bool {
        if (col == k) return true;
        for (int v = 1; v <= k; ++v) {
            if (used2[v]) continue;
            int w = target - (col + 1) - v;
            if (w < 1 || w > k || used3[w]) continue;
            used2[v] = true;
            used3[w] = true;
            row2[col] = v;
            if (self(self, col + 1)) return true;
            used2[v] = false;
            used3[w] = false;
        }
        return false;
    };
    if (!rec(rec, 0))
        throw construction_failure("no 3 x " + std::to_string(k) + " Kotzig base found");

    std::vector<int> cells;
    cells.reserve(3 * k);
    for (int c = 0; c < k; ++c) cells.push_back(c + 1);
    for (int c = 0; c < k; ++c) cells.push_back(row2[c]);
    for (int c = 0; c < k; ++c) cells.push_back(target - (c + 1) - row2[c]);
    return cells;
}

} // namespace

IntSquare int_magic_square(int n) {
    if (n <= 2) throw nonexistence("no integer magic square of side " + std::to_string(n));
    if (n % 2 == 1) return siamese(n);
    if (n % 4 == 0) return complement_method(n);
    return lux_method(n);
}

GroupArray cyclic_magic_square(i64 n) {
    if (n <= 2) throw nonexistence("no cyclic magic square of side " + std::to_string(n));
    IntSquare sq = int_magic_square(static_cast<int>(n));
    GroupPtr g = make_group({n * n});
    std::vector<GroupElement> cells;
    cells.reserve(sq.cells.size());
    for (i64 v : sq.cells) cells.push_back(make_element(g, {v}));
    return GroupArray(g, static_cast<std::size_t>(n), static_cast<std::size_t>(n),
                      std::move(cells));
}

IntKotzigArray int_kotzig(int j, int k) {
    if (j <= 1 || (static_cast<i64>(j) * (k - 1)) % 2 != 0 || k < 1)
        throw nonexistence("no " + std::to_string(j) + " x " + std::to_string(k) +
                           " Kotzig array");
    IntKotzigArray ka{j, k, {}};
    ka.cells.reserve(static_cast<std::size_t>(j) * k);

    int remaining = j;
    if (j % 2 == 1) {
        static std::mutex mtx;
        static std::map<int, std::vector<int>> cache;
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(k);
        if (it == cache.end()) it = cache.emplace(k, kotzig_base3(k)).first;
        ka.cells = it->second;
        remaining -= 3;
    }
    for (int pair = 0; pair < remaining / 2; ++pair) {
        for (int c = 1; c <= k; ++c) ka.cells.push_back(c);
        for (int c = k; c >= 1; --c) ka.cells.push_back(c);
    }
    return ka;
}

} // namespace magsq
