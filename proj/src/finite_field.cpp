#include "magsq/finite_field.hpp"

#include <algorithm>

namespace magsq {

namespace {

constexpr i64 kFieldLimit = 1 << 16;

bool is_prime(i64 p) {
    if (p < 2) return false;
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// polynomials as coefficient vectors, index = degree, normalized (no
// leading zeros); arithmetic over Z_p
using Poly = std::vector<i64>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, i64 p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    trim(c);
    return c;
}

// remainder of a by monic b
Poly poly_mod(Poly a, const Poly& b, i64 p) {
    trim(a);
    while (a.size() >= b.size()) {
        i64 lead = a.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[shift + i] = (a[shift + i] - lead * b[i]) % p;
            if (a[shift + i] < 0) a[shift + i] += p;
        }
        trim(a);
    }
    return a;
}

// monic poly of degree t from the search index: digits of n base p are
// the coefficients c_0..c_{t-1}
Poly monic_from_index(i64 n, int t, i64 p) {
    Poly f(t + 1, 0);
    for (int i = 0; i < t; ++i) {
        f[i] = n % p;
        n /= p;
    }
    f[t] = 1;
    return f;
}

bool is_irreducible(const Poly& f, i64 p) {
    const int t = static_cast<int>(f.size()) - 1;
    if (t == 1) return true;
    // trial division by all monic polynomials of degree 1..t/2
    for (int d = 1; 2 * d <= t; ++d) {
        i64 count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (i64 n = 0; n < count; ++n) {
            Poly g = monic_from_index(n, d, p);
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

} // namespace

FiniteField::FiniteField(i64 p, int degree) : p_(p), degree_(degree) {
    if (!is_prime(p)) throw invalid_input("field characteristic must be prime");
    if (degree < 1) throw invalid_input("field degree must be >= 1");
    q_ = 1;
    for (int i = 0; i < degree; ++i) {
        q_ *= p;
        if (q_ > kFieldLimit) throw resource_limit("field order exceeds the configured bound");
    }
    i64 count = q_;
    for (i64 n = 0; n < count; ++n) {
        Poly f = monic_from_index(n, degree, p);
        if (is_irreducible(f, p)) {
            modulus_.assign(f.begin(), f.end() - 1);
            return;
        }
    }
    throw construction_failure("no irreducible modulus found");  // unreachable
}

std::vector<i64> FiniteField::coeffs_of(i64 index) const {
    std::vector<i64> c(degree_);
    for (int i = 0; i < degree_; ++i) {
        c[i] = index % p_;
        index /= p_;
    }
    return c;
}

i64 FiniteField::index_of(const std::vector<i64>& coeffs) const {
    i64 idx = 0;
    for (int i = degree_ - 1; i >= 0; --i) {
        i64 c = i < static_cast<int>(coeffs.size()) ? coeffs[i] % p_ : 0;
        if (c < 0) c += p_;
        idx = idx * p_ + c;
    }
    return idx;
}

i64 FiniteField::add(i64 a, i64 b) const {
    auto ca = coeffs_of(a), cb = coeffs_of(b);
    for (int i = 0; i < degree_; ++i) ca[i] = (ca[i] + cb[i]) % p_;
    return index_of(ca);
}

i64 FiniteField::sub(i64 a, i64 b) const { return add(a, neg(b)); }

i64 FiniteField::neg(i64 a) const {
    auto c = coeffs_of(a);
    for (auto& x : c) x = x == 0 ? 0 : p_ - x;
    return index_of(c);
}

i64 FiniteField::mul(i64 a, i64 b) const {
    Poly pa = coeffs_of(a), pb = coeffs_of(b);
    trim(pa);
    trim(pb);
    Poly prod = poly_mul(pa, pb, p_);
    Poly mod(modulus_);
    mod.push_back(1);
    Poly r = poly_mod(std::move(prod), mod, p_);
    return index_of(r);
}

FiniteField gf_make(i64 p, int degree) { return FiniteField(p, degree); }

bool prime_power(i64 n, i64& p, int& t) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            p = d;
            t = 0;
            while (n % d == 0) {
                n /= d;
                ++t;
            }
            return n == 1;
        }
    }
    p = n;
    t = 1;
    return true;
}

} // namespace magsq
