#pragma once

#include <vector>

#include "magsq/group.hpp"

namespace magsq {

/**
 * GF(p^t) with elements indexed 0..q-1; index digits base p are the
 * coefficients of the residue polynomial (least significant digit =
 * constant term). The modulus is the lexicographically smallest monic
 * irreducible of degree t, found by exhaustive search.
 */
class FiniteField {
public:
    FiniteField(i64 p, int degree);

    i64 p() const { return p_; }
    int degree() const { return degree_; }
    i64 q() const { return q_; }
    /// Coefficients c_0..c_{t-1} of the modulus x^t + c_{t-1} x^{t-1} + ... + c_0.
    const std::vector<i64>& modulus() const { return modulus_; }

    i64 add(i64 a, i64 b) const;
    i64 sub(i64 a, i64 b) const;
    i64 neg(i64 a) const;
    i64 mul(i64 a, i64 b) const;
    i64 one() const { return 1 % q_; }

    std::vector<i64> coeffs_of(i64 index) const;
    i64 index_of(const std::vector<i64>& coeffs) const;

private:
    i64 p_;
    int degree_;
    i64 q_;
    std::vector<i64> modulus_;
};

/// Field of order p^t; p must be prime and p^t within desk-scale bounds.
FiniteField gf_make(i64 p, int degree);

/// True when n = p^t for a prime p; on success reports p and t.
bool prime_power(i64 n, i64& p, int& t);

} // namespace magsq
