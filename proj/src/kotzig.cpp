#include "magsq/kotzig.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace magsq {

namespace {

constexpr i64 kMappingLimit = 1 << 12;
constexpr i64 kBacktrackLimit = 16;  // lex-first search stays cheap up to here

// Lex-first complete mapping by backtracking: assign sigma on elements in
// enumeration order, keeping both sigma and x + sigma(x) injective.
std::vector<i64> backtrack_mapping(const GroupPtr& g) {
    const i64 n = g->order();
    std::vector<GroupElement> elems = enumerate_elements(g);
    std::vector<i64> image(n, -1);
    std::vector<bool> used(n, false), sum_used(n, false);

    auto rec = [&](auto&& self, i64 x) -> bool {
        if (x == n) return true;
        for (i64 y = 0; y < n; ++y) {
            if (used[y]) continue;
            i64 s = (elems[x] + elems[y]).rank();
            if (sum_used[s]) continue;
            used[y] = sum_used[s] = true;
            image[x] = y;
            if (self(self, x + 1)) return true;
            used[y] = sum_used[s] = false;
        }
        return false;
    };
    if (!rec(rec, 0)) return {};
    return image;
}

// Explicit complete mapping on a non-cyclic 2-group given by its factor
// exponents (sigma as rank -> rank over the lexicographic enumeration).
//
//   - all exponents 1: the linear shift-register map
//       (v_0..v_{t-1}) -> (v_1..v_{t-1}, v_0 + v_1),
//     whose characteristic polynomial x^t + x + 1 has neither 0 nor 1 as
//     a root, so both the map and map+id are invertible;
//   - Z_m x Z_m: (x, y) -> (y, x + y); both [[0,1],[1,1]] and
//     [[1,1],[1,2]] have odd determinant;
//   - Z_2 x Z_n, n = 2^m >= 4: on the lower half of y both images land
//     in sheet 0 as (0, 2y + e), on the upper half (y = n/2 + s) in
//     sheet 1 as (1, 2s + 1 - e). Images tile each sheet, and the sums
//     split as 3L u (3L + n/2) and its +1 shift, which tile Z_n because
//     3 is a unit;
//   - otherwise: decrement the two largest exponents, recurse on that
//     subgroup N, and extend through G/N = Z_2 x Z_2 with the Fibonacci
//     map on the top bits. A fixed coset transversal keeps both
//     bijectivity conditions intact.
std::vector<i64> explicit_two_group_mapping(const std::vector<int>& exps) {
    const std::size_t t = exps.size();
    std::vector<i64> mod(t);
    i64 order = 1;
    for (std::size_t i = 0; i < t; ++i) {
        mod[i] = i64{1} << exps[i];
        order *= mod[i];
    }
    auto coords_of = [&](i64 rank) {
        std::vector<i64> v(t);
        for (std::size_t i = t; i-- > 0;) {
            v[i] = rank % mod[i];
            rank /= mod[i];
        }
        return v;
    };
    auto rank_of = [&](const std::vector<i64>& v) {
        i64 r = 0;
        for (std::size_t i = 0; i < t; ++i) r = r * mod[i] + v[i];
        return r;
    };

    std::vector<i64> image(order);
    const bool elementary =
        std::all_of(exps.begin(), exps.end(), [](int e) { return e == 1; });

    if (elementary) {
        for (i64 r = 0; r < order; ++r) {
            std::vector<i64> v = coords_of(r), w(t);
            for (std::size_t i = 0; i + 1 < t; ++i) w[i] = v[i + 1];
            w[t - 1] = (v[0] + v[1]) & 1;
            image[r] = rank_of(w);
        }
        return image;
    }
    if (t == 2 && exps[0] == exps[1]) {
        for (i64 r = 0; r < order; ++r) {
            std::vector<i64> v = coords_of(r);
            image[r] = rank_of({v[1], (v[0] + v[1]) % mod[0]});
        }
        return image;
    }
    if (t == 2 && std::min(exps[0], exps[1]) == 1) {
        const std::size_t je = exps[0] == 1 ? 0 : 1;  // sheet coordinate
        const std::size_t jy = 1 - je;
        const i64 n = mod[jy], half = n / 2;
        for (i64 r = 0; r < order; ++r) {
            std::vector<i64> v = coords_of(r), w(2);
            i64 e = v[je], y = v[jy];
            if (y < half) {
                w[je] = 0;
                w[jy] = (2 * y + e) % n;
            } else {
                w[je] = 1;
                w[jy] = (2 * (y - half) + 1 - e + n) % n;
            }
            image[r] = rank_of(w);
        }
        return image;
    }

    // decrement the two largest exponents
    std::size_t j1 = 0, j2 = 1;
    {
        std::vector<std::size_t> idx(t);
        for (std::size_t i = 0; i < t; ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return exps[a] > exps[b]; });
        j1 = std::min(idx[0], idx[1]);
        j2 = std::max(idx[0], idx[1]);
    }
    std::vector<int> n_exps;
    std::vector<std::size_t> keep;  // original coordinate of each N coordinate
    for (std::size_t i = 0; i < t; ++i) {
        int e = exps[i] - (i == j1 || i == j2 ? 1 : 0);
        if (e > 0) {
            n_exps.push_back(e);
            keep.push_back(i);
        }
    }
    std::vector<i64> sub = explicit_two_group_mapping(n_exps);

    std::vector<i64> n_mod(n_exps.size());
    for (std::size_t i = 0; i < n_exps.size(); ++i) n_mod[i] = i64{1} << n_exps[i];
    auto n_rank = [&](const std::vector<i64>& v) {
        i64 r = 0;
        for (std::size_t i = 0; i < v.size(); ++i) r = r * n_mod[i] + v[i];
        return r;
    };
    auto n_coords = [&](i64 rank) {
        std::vector<i64> v(n_mod.size());
        for (std::size_t i = n_mod.size(); i-- > 0;) {
            v[i] = rank % n_mod[i];
            rank /= n_mod[i];
        }
        return v;
    };

    for (i64 r = 0; r < order; ++r) {
        std::vector<i64> v = coords_of(r);
        const i64 c1 = v[j1] & 1, c2 = v[j2] & 1;
        std::vector<i64> n_v;
        n_v.reserve(keep.size());
        for (std::size_t i : keep) {
            i64 x = v[i];
            if (i == j1) x = (x - c1) / 2;
            if (i == j2) x = (x - c2) / 2;
            n_v.push_back(x);
        }
        std::vector<i64> m_v = n_coords(sub[n_rank(n_v)]);
        std::vector<i64> w(t, 0);
        for (std::size_t k = 0; k < keep.size(); ++k) {
            std::size_t i = keep[k];
            w[i] = (i == j1 || i == j2) ? 2 * m_v[k] : m_v[k];
        }
        w[j1] += c2;             // Fibonacci on the quotient bits
        w[j2] += (c1 + c2) & 1;
        image[r] = rank_of(w);
    }
    return image;
}

} // namespace

CompleteMapping complete_mapping(const GroupPtr& g) {
    if (!g->in_class_g())
        throw nonexistence("no complete mapping: group has a unique involution");
    if (g->order() > kMappingLimit)
        throw resource_limit("complete mapping search bound exceeded");

    std::vector<GroupElement> elems = enumerate_elements(g);
    CompleteMapping cm{g, {}};
    cm.image.reserve(static_cast<std::size_t>(g->order()));

    if (g->order() % 2 == 1) {
        for (const auto& e : elems) cm.image.push_back(e);  // identity
        return cm;
    }

    // split the presentation into 2-part and odd-part coordinates of the
    // primary presentation, solve the 2-part by cached backtracking
    GroupPtr prim = primary_presentation(g);
    std::vector<i64> two, odd;
    std::vector<std::size_t> two_pos, odd_pos;
    for (std::size_t i = 0; i < prim->moduli().size(); ++i) {
        if (prim->moduli()[i] % 2 == 0) {
            two.push_back(prim->moduli()[i]);
            two_pos.push_back(i);
        } else {
            odd.push_back(prim->moduli()[i]);
            odd_pos.push_back(i);
        }
    }
    GroupPtr g2 = make_group(two);

    static std::mutex mtx;
    static std::map<std::vector<i64>, std::vector<i64>> cache;
    std::vector<i64> img2;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(two);
        if (it == cache.end()) {
            if (g2->order() <= kBacktrackLimit) {
                img2 = backtrack_mapping(g2);
            } else {
                std::vector<int> exps;
                for (auto [p, e] : g2->primary_factors()) exps.push_back(e);
                img2 = explicit_two_group_mapping(exps);
            }
            if (img2.empty())
                throw construction_failure("no complete mapping found on the 2-part");
            cache.emplace(two, img2);
        } else {
            img2 = it->second;
        }
    }

    Isomorphism iso = crt_isomorphism(g, prim);
    for (const auto& e : elems) {
        GroupElement pe = iso.forward(e);
        // 2-part through the backtracked mapping, odd part through identity
        std::vector<i64> c2;
        for (std::size_t k : two_pos) c2.push_back(pe.coords()[k]);
        GroupElement mapped2 = element_of_rank(g2, img2[make_element(g2, c2).rank()]);
        std::vector<i64> out(prim->arity());
        for (std::size_t k = 0; k < two_pos.size(); ++k) out[two_pos[k]] = mapped2.coords()[k];
        for (std::size_t k : odd_pos) out[k] = pe.coords()[k];
        cm.image.push_back(iso.backward(make_element(prim, out)));
    }
    return cm;
}

GroupElement KotzigArrayG::column_sum() const {
    GroupElement s = zero_element(group);
    for (int r = 0; r < rows; ++r) s = s + at(r, 0);
    return s;
}

bool is_valid_kotzig(const KotzigArrayG& ka) {
    const i64 n = ka.group->order();
    if (ka.rows < 1 || ka.cells.size() != static_cast<std::size_t>(ka.rows) * n) return false;
    std::vector<bool> seen(n);
    for (int r = 0; r < ka.rows; ++r) {
        std::fill(seen.begin(), seen.end(), false);
        for (i64 c = 0; c < n; ++c) {
            i64 k = ka.at(r, c).rank();
            if (seen[k]) return false;
            seen[k] = true;
        }
    }
    GroupElement first = zero_element(ka.group);
    for (i64 c = 0; c < n; ++c) {
        GroupElement s = zero_element(ka.group);
        for (int r = 0; r < ka.rows; ++r) s = s + ka.at(r, c);
        if (c == 0)
            first = s;
        else if (!(s == first))
            return false;
    }
    return true;
}

KotzigArrayG kotzig_gamma(int j, const GroupPtr& g) {
    if (j <= 1 || (j % 2 == 1 && !g->in_class_g()))
        throw nonexistence("no " + std::to_string(j) + "-row Kotzig array over this group");

    std::vector<GroupElement> e = enumerate_elements(g);
    const i64 n = g->order();
    KotzigArrayG ka{g, j, {}};
    ka.cells.reserve(static_cast<std::size_t>(j) * n);

    int remaining = j;
    if (j % 2 == 1) {
        CompleteMapping cm = complete_mapping(g);
        for (const auto& x : e) ka.cells.push_back(x);
        for (const auto& x : e) ka.cells.push_back(cm.apply(x));
        for (const auto& x : e) ka.cells.push_back(-(x + cm.apply(x)));
        remaining -= 3;
    }
    for (int pair = 0; pair < remaining / 2; ++pair) {
        for (const auto& x : e) ka.cells.push_back(x);
        for (const auto& x : e) ka.cells.push_back(-x);
    }
    return ka;
}

KotzigArrayG normalize_rows(const KotzigArrayG& ka) {
    KotzigArrayG out{ka.group, ka.rows, {}};
    out.cells.reserve(ka.cells.size());
    const i64 n = ka.group->order();
    for (int r = 0; r < ka.rows; ++r) {
        GroupElement shift = -ka.at(r, 0);
        for (i64 c = 0; c < n; ++c) out.cells.push_back(ka.at(r, c) + shift);
    }
    return out;
}

KotzigArrayG permute_columns(const KotzigArrayG& ka, std::span<const i64> perm) {
    const i64 n = ka.group->order();
    if (static_cast<i64>(perm.size()) != n)
        throw invalid_input("column permutation has wrong length");
    std::vector<bool> seen(n, false);
    for (i64 p : perm) {
        if (p < 0 || p >= n || seen[p]) throw invalid_input("not a column permutation");
        seen[p] = true;
    }
    KotzigArrayG out{ka.group, ka.rows, {}};
    out.cells.reserve(ka.cells.size());
    for (int r = 0; r < ka.rows; ++r)
        for (i64 c = 0; c < n; ++c) out.cells.push_back(ka.at(r, perm[c]));
    return out;
}

KotzigArrayG translate_row(const KotzigArrayG& ka, int row, const GroupElement& c) {
    if (row < 0 || row >= ka.rows) throw invalid_input("row index out of range");
    KotzigArrayG out = ka;
    const i64 n = ka.group->order();
    for (i64 k = 0; k < n; ++k) {
        auto& cell = out.cells[static_cast<std::size_t>(row) * n + k];
        cell = cell + c;
    }
    return out;
}

} // namespace magsq
