#include "magsq/group.hpp"

#include <algorithm>
#include <numeric>

namespace magsq {

namespace {

// Trial-division factorization; orders are desk scale.
std::vector<std::pair<i64, int>> factorize(i64 n) {
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

i64 mod_inverse(i64 a, i64 m) {
    // extended Euclid; gcd(a, m) == 1 by construction
    i64 old_r = a % m, r = m, old_s = 1, s = 0;
    while (r != 0) {
        i64 q = old_r / r;
        i64 t = old_r - q * r; old_r = r; r = t;
        t = old_s - q * s; old_s = s; s = t;
    }
    return ((old_s % m) + m) % m;
}

} // namespace

AbelianGroup::AbelianGroup(std::vector<i64> moduli) : moduli_(std::move(moduli)) {
    order_ = 1;
    // slot = (prime, exponent, source coordinate); sorted by (p, e), stable in
    // the source order so pairings between isomorphic presentations line up.
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        i64 m = moduli_[i];
        if (m < 2) throw invalid_input("group modulus must be >= 2, got " + std::to_string(m));
        order_ *= m;
        for (auto [p, e] : factorize(m)) factors_.emplace_back(p, e);
    }
    std::stable_sort(factors_.begin(), factors_.end());
    primary_.reserve(factors_.size());
    for (auto [p, e] : factors_) primary_.push_back(ipow(p, e));
}

bool AbelianGroup::is_cyclic() const {
    for (std::size_t i = 1; i < factors_.size(); ++i)
        if (factors_[i].first == factors_[i - 1].first) return false;
    return true;
}

int AbelianGroup::even_primary_count() const {
    int z = 0;
    for (i64 q : primary_)
        if (q % 2 == 0) ++z;
    return z;
}

bool AbelianGroup::in_class_g() const {
    return order_ % 2 == 1 || even_primary_count() >= 2;
}

GroupPtr make_group(std::vector<i64> moduli) {
    return std::make_shared<AbelianGroup>(std::move(moduli));
}

GroupPtr direct_sum(const GroupPtr& a, const GroupPtr& b) {
    std::vector<i64> m = a->moduli();
    m.insert(m.end(), b->moduli().begin(), b->moduli().end());
    return make_group(std::move(m));
}

GroupElement::GroupElement(GroupPtr group, std::vector<i64> coords)
    : group_(std::move(group)), coords_(std::move(coords)) {
    const auto& m = group_->moduli();
    if (coords_.size() != m.size())
        throw invalid_input("element arity does not match group presentation");
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        coords_[i] %= m[i];
        if (coords_[i] < 0) coords_[i] += m[i];
    }
}

namespace {
void check_same(const GroupElement& a, const GroupElement& b) {
    if (a.group().get() != b.group().get() &&
        !a.group()->same_presentation(*b.group()))
        throw mismatched_presentation("arithmetic across different group presentations");
}
} // namespace

GroupElement GroupElement::operator+(const GroupElement& rhs) const {
    check_same(*this, rhs);
    std::vector<i64> c(coords_.size());
    const auto& m = group_->moduli();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (coords_[i] + rhs.coords_[i]) % m[i];
    return GroupElement(group_, std::move(c));
}

GroupElement GroupElement::operator-(const GroupElement& rhs) const {
    return *this + (-rhs);
}

GroupElement GroupElement::operator-() const {
    std::vector<i64> c(coords_.size());
    const auto& m = group_->moduli();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] == 0 ? 0 : m[i] - coords_[i];
    return GroupElement(group_, std::move(c));
}

GroupElement GroupElement::times(i64 n) const {
    std::vector<i64> c(coords_.size());
    const auto& m = group_->moduli();
    for (std::size_t i = 0; i < c.size(); ++i) {
        i64 v = (coords_[i] % m[i]) * (n % m[i]) % m[i];
        c[i] = v < 0 ? v + m[i] : v;
    }
    return GroupElement(group_, std::move(c));
}

bool GroupElement::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](i64 c) { return c == 0; });
}

bool GroupElement::operator==(const GroupElement& rhs) const {
    check_same(*this, rhs);
    return coords_ == rhs.coords_;
}

bool GroupElement::operator<(const GroupElement& rhs) const {
    check_same(*this, rhs);
    return coords_ < rhs.coords_;
}

i64 GroupElement::rank() const {
    i64 r = 0;
    const auto& m = group_->moduli();
    for (std::size_t i = 0; i < coords_.size(); ++i) r = r * m[i] + coords_[i];
    return r;
}

GroupElement zero_element(const GroupPtr& g) {
    return GroupElement(g, std::vector<i64>(g->arity(), 0));
}

GroupElement make_element(const GroupPtr& g, std::vector<i64> coords) {
    return GroupElement(g, std::move(coords));
}

GroupElement element_of_rank(const GroupPtr& g, i64 rank) {
    const auto& m = g->moduli();
    std::vector<i64> c(m.size());
    for (std::size_t i = m.size(); i-- > 0;) {
        c[i] = rank % m[i];
        rank /= m[i];
    }
    return GroupElement(g, std::move(c));
}

GroupElement concat_elements(const GroupPtr& sum, const GroupElement& a, const GroupElement& b) {
    std::vector<i64> c = a.coords();
    c.insert(c.end(), b.coords().begin(), b.coords().end());
    return GroupElement(sum, std::move(c));
}

std::vector<GroupElement> enumerate_elements(const GroupPtr& g) {
    if (g->order() > kEnumerationLimit)
        throw resource_limit("group order " + std::to_string(g->order()) +
                             " exceeds the enumeration limit");
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(g->order()));
    for (i64 r = 0; r < g->order(); ++r) out.push_back(element_of_rank(g, r));
    return out;
}

Isomorphism::Isomorphism(GroupPtr source, GroupPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
    if (source_->primary_moduli() != target_->primary_moduli())
        throw invalid_input("groups are not isomorphic: primary decompositions differ");

    // (p, e, owning coordinate) slots for one presentation, sorted by (p, e)
    // with the source coordinate as a stable tiebreak.
    auto slots_of = [](const AbelianGroup& g) {
        std::vector<std::pair<std::pair<i64, int>, std::size_t>> s;
        for (std::size_t i = 0; i < g.moduli().size(); ++i)
            for (auto pe : factorize(g.moduli()[i])) s.push_back({pe, i});
        std::stable_sort(s.begin(), s.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        return s;
    };

    auto ss = slots_of(*source_);
    auto ts = slots_of(*target_);
    auto crt_weight = [](i64 q, i64 coord_mod) {
        i64 m = coord_mod / q;              // coprime to q
        return m % coord_mod * mod_inverse(m % q, q) % coord_mod;
    };
    slots_.reserve(ss.size());
    for (std::size_t k = 0; k < ss.size(); ++k) {
        i64 q = 1;
        for (int e = 0; e < ss[k].first.second; ++e) q *= ss[k].first.first;
        Slot slot;
        slot.modulus = q;
        slot.src_coord = ss[k].second;
        slot.dst_coord = ts[k].second;
        slot.crt_weight = crt_weight(q, target_->moduli()[slot.dst_coord]);
        slot.crt_weight_back = crt_weight(q, source_->moduli()[slot.src_coord]);
        slots_.push_back(slot);
    }
}

GroupElement Isomorphism::apply(const GroupElement& x, bool forwards) const {
    const GroupPtr& from = forwards ? source_ : target_;
    const GroupPtr& to = forwards ? target_ : source_;
    if (!x.group()->same_presentation(*from))
        throw mismatched_presentation("element does not belong to this isomorphism's domain");
    std::vector<i64> y(to->arity(), 0);
    for (const Slot& s : slots_) {
        std::size_t in = forwards ? s.src_coord : s.dst_coord;
        std::size_t out = forwards ? s.dst_coord : s.src_coord;
        i64 w = forwards ? s.crt_weight : s.crt_weight_back;
        i64 mod = to->moduli()[out];
        i64 residue = x.coords()[in] % s.modulus;
        y[out] = (y[out] + static_cast<i64>(static_cast<__int128>(residue) * w % mod)) % mod;
    }
    return GroupElement(to, std::move(y));
}

GroupElement Isomorphism::forward(const GroupElement& x) const { return apply(x, true); }
GroupElement Isomorphism::backward(const GroupElement& y) const { return apply(y, false); }

Isomorphism crt_isomorphism(const GroupPtr& src, const GroupPtr& dst) {
    return Isomorphism(src, dst);
}

GroupPtr primary_presentation(const GroupPtr& g) {
    return make_group(g->primary_moduli());
}

namespace {
void partitions_of(int n, int max_part, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = std::min(n, max_part); k >= 1; --k) {
        cur.push_back(k);
        partitions_of(n - k, k, cur, out);
        cur.pop_back();
    }
}
} // namespace

std::vector<std::vector<i64>> abelian_groups_of_order(i64 n) {
    if (n <= 0) throw invalid_input("order must be positive");
    if (n == 1) return {{}};
    std::vector<std::pair<i64, int>> fac;
    {
        i64 m = n;
        for (i64 p = 2; p * p <= m; ++p)
            if (m % p == 0) {
                int e = 0;
                while (m % p == 0) { m /= p; ++e; }
                fac.emplace_back(p, e);
            }
        if (m > 1) fac.emplace_back(m, 1);
    }
    std::vector<std::vector<i64>> groups{{}};
    for (auto [p, e] : fac) {
        std::vector<std::vector<int>> parts;
        std::vector<int> cur;
        partitions_of(e, e, cur, parts);
        std::vector<std::vector<i64>> next;
        for (const auto& g : groups)
            for (const auto& part : parts) {
                std::vector<i64> ext = g;
                // ascending exponent order within the prime
                for (auto it = part.rbegin(); it != part.rend(); ++it) ext.push_back(ipow(p, *it));
                next.push_back(std::move(ext));
            }
        groups = std::move(next);
    }
    return groups;
}

} // namespace magsq
