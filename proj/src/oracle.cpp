#include "magsq/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace magsq {

namespace {

struct Searcher {
    const GroupPtr& g;
    int n;
    SearchConfig::Mode mode;
    std::uint64_t budget;
    std::vector<GroupElement> elems;     // candidate order
    std::vector<int> cell_elem;          // chosen candidate index per cell
    std::vector<bool> used;
    std::vector<GroupElement> row_sum, col_sum;
    GroupElement diag_sum, anti_sum;
    std::optional<GroupElement> mu;
    std::uint64_t nodes = 0, found = 0;
    bool aborted = false;
    std::optional<GroupArray> hit;
    std::set<std::vector<i64>> orbit_keys;

    Searcher(const GroupPtr& g_, int n_, SearchConfig::Mode m, std::uint64_t b)
        : g(g_), n(n_), mode(m), budget(b),
          row_sum(n_, zero_element(g_)), col_sum(n_, zero_element(g_)),
          diag_sum(zero_element(g_)), anti_sum(zero_element(g_)) {
        cell_elem.assign(static_cast<std::size_t>(n) * n, -1);
        used.assign(static_cast<std::size_t>(g->order()), false);
    }

    void emit() {
        ++found;
        if (mode == SearchConfig::Mode::count_all) return;
        std::vector<GroupElement> cells;
        cells.reserve(cell_elem.size());
        for (int idx : cell_elem) cells.push_back(elems[idx]);
        GroupArray square(g, n, n, std::move(cells));
        if (mode == SearchConfig::Mode::find_one) {
            if (!hit) hit = std::move(square);
            return;
        }
        GroupArray canon = orbit_canonical(square);
        std::vector<i64> key;
        key.reserve(canon.cells().size());
        for (const auto& e : canon.cells()) key.push_back(e.rank());
        orbit_keys.insert(std::move(key));
    }

    bool done() const {
        return aborted || (mode == SearchConfig::Mode::find_one && hit.has_value());
    }

    void fill(int cell) {
        if (done()) return;
        if (cell == n * n) {
            emit();
            return;
        }
        const int r = cell / n, c = cell % n;
        for (std::size_t cand = 0; cand < elems.size(); ++cand) {
            if (used[elems[cand].rank()]) continue;
            if (++nodes > budget) {
                aborted = true;
                return;
            }
            const GroupElement& e = elems[cand];
            GroupElement nrow = row_sum[r] + e;
            // a completed line must hit the magic sum pinned by row 0
            if (c == n - 1 && mu && !(nrow == *mu)) continue;
            GroupElement ncol = col_sum[c] + e;
            if (r == n - 1 && mu && !(ncol == *mu)) continue;
            const bool on_diag = r == c, on_anti = c == n - 1 - r;
            GroupElement ndiag = on_diag ? diag_sum + e : diag_sum;
            if (on_diag && r == n - 1 && mu && !(ndiag == *mu)) continue;
            GroupElement nanti = on_anti ? anti_sum + e : anti_sum;
            if (on_anti && r == n - 1 && mu && !(nanti == *mu)) continue;

            bool set_mu = false;
            if (c == n - 1 && !mu) {
                mu = nrow;
                set_mu = true;
            }
            GroupElement orow = row_sum[r], ocol = col_sum[c];
            GroupElement odiag = diag_sum, oanti = anti_sum;
            row_sum[r] = nrow;
            col_sum[c] = ncol;
            diag_sum = ndiag;
            anti_sum = nanti;
            used[e.rank()] = true;
            cell_elem[cell] = static_cast<int>(cand);

            fill(cell + 1);

            used[e.rank()] = false;
            row_sum[r] = orow;
            col_sum[c] = ocol;
            diag_sum = odiag;
            anti_sum = oanti;
            if (set_mu) mu.reset();
            if (done()) return;
        }
    }
};

} // namespace

SearchResult backtrack_search(const SearchConfig& cfg) {
    if (!cfg.group) throw invalid_input("search needs a group");
    const i64 order = cfg.group->order();
    if (static_cast<i64>(cfg.side) * cfg.side != order)
        throw invalid_input("side^2 must equal the group order");
    if (cfg.node_budget == 0) throw invalid_input("node budget must be positive");
    const int limit = cfg.mode == SearchConfig::Mode::find_one ? 5 : 4;
    if (cfg.side > limit)
        throw invalid_input("side exceeds the exhaustive-search bound");

    Searcher s(cfg.group, cfg.side, cfg.mode, cfg.node_budget);
    s.elems = enumerate_elements(cfg.group);
    if (cfg.mode == SearchConfig::Mode::find_one && cfg.seed != 0) {
        // hand-rolled Fisher-Yates: mt19937_64 is fully specified, so the
        // candidate order is identical across platforms
        std::mt19937_64 rng(cfg.seed);
        for (std::size_t i = s.elems.size(); i > 1; --i)
            std::swap(s.elems[i - 1], s.elems[static_cast<std::size_t>(rng() % i)]);
    }
    s.fill(0);

    SearchResult res;
    res.nodes = s.nodes;
    res.budget_exhausted = s.aborted;
    if (cfg.mode == SearchConfig::Mode::find_one) {
        res.square = s.hit;
    } else if (!s.aborted) {
        res.count = cfg.mode == SearchConfig::Mode::count_all
                        ? s.found
                        : static_cast<std::uint64_t>(s.orbit_keys.size());
    }
    return res;
}

GroupArray dihedral_transform(const GroupArray& a, int rot, bool transpose) {
    const std::size_t n = a.rows();
    if (!a.is_square()) throw invalid_input("dihedral transforms need a square array");
    auto src = [&](std::size_t i, std::size_t j) {
        if (transpose) std::swap(i, j);
        switch (rot & 3) {
            case 0: return std::pair{i, j};
            case 1: return std::pair{n - 1 - j, i};          // quarter turn
            case 2: return std::pair{n - 1 - i, n - 1 - j};  // half turn
            default: return std::pair{j, n - 1 - i};
        }
    };
    std::vector<GroupElement> cells;
    cells.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto [si, sj] = src(i, j);
            cells.push_back(a.at(si, sj));
        }
    return GroupArray(a.group(), n, n, std::move(cells));
}

GroupArray orbit_canonical(const GroupArray& a) {
    std::optional<GroupArray> best;
    auto flat_less = [](const GroupArray& x, const GroupArray& y) {
        for (std::size_t i = 0; i < x.cells().size(); ++i) {
            if (x.cells()[i].coords() != y.cells()[i].coords())
                return x.cells()[i].coords() < y.cells()[i].coords();
        }
        return false;
    };
    for (int rot = 0; rot < 4; ++rot)
        for (int t = 0; t < 2; ++t) {
            GroupArray img = dihedral_transform(a, rot, t == 1);
            if (!best || flat_less(img, *best)) best = std::move(img);
        }
    return *best;
}

Side2Census exhaustive_side2(const GroupPtr& g) {
    if (g->order() != 4) throw invalid_input("side-2 census needs a group of order 4");
    std::vector<GroupElement> elems = enumerate_elements(g);
    std::vector<int> perm{0, 1, 2, 3};

    Side2Census out;
    std::vector<std::vector<std::vector<i64>>> seen_canon;  // flattened canonical coords
    do {
        std::vector<GroupElement> cells{elems[perm[0]], elems[perm[1]], elems[perm[2]],
                                        elems[perm[3]]};
        GroupArray a(g, 2, 2, std::move(cells));
        VerificationReport rep = verify(a);
        if (rep.classification == Classification::magic_square) ++out.magic_square_count;

        GroupArray canon = orbit_canonical(a);
        std::vector<std::vector<i64>> key;
        for (const auto& e : canon.cells()) key.push_back(e.coords());
        if (std::find(seen_canon.begin(), seen_canon.end(), key) == seen_canon.end()) {
            seen_canon.push_back(key);
            Classification cls = verify(canon).classification;
            out.orbit_reps.push_back(canon);
            out.orbit_class.push_back(cls);
            // constant rows and columns over a bijective grid (diagonals ignored)
            if (cls != Classification::not_magic) out.rectangle_orbits.push_back(canon);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace magsq
