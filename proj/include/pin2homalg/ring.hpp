#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pin2homalg/gf2.hpp"

namespace pin2 {

/* V-adic truncation order: V^p = 0. */
struct Precision {
    int p = 4;
    explicit Precision(int p_) : p(p_) {
        if (p < 1) throw std::invalid_argument("Precision: p >= 1 required");
    }
    Precision() = default;
    bool operator==(const Precision& o) const { return p == o.p; }
};

/* Monomial V^v Q^q of the ring F[[V]][Q]/(Q^3), deg V = -4, deg Q = -1. */
struct Monomial {
    int v = 0, q = 0;
    int degree() const { return -4 * v - q; }
    bool is_unit() const { return v == 0 && q == 0; }
    std::string str() const;  // "V^i*Q^j"
    bool operator==(const Monomial& o) const { return v == o.v && q == o.q; }
    bool operator<(const Monomial& o) const { return v != o.v ? v < o.v : q < o.q; }
};

/* Product in R; nullopt when it truncates to zero (Q^3 = 0 or V^p = 0). */
std::optional<Monomial> mul_monomial(const Monomial& a, const Monomial& b, Precision p);

std::optional<Monomial> parse_monomial(const std::string& s);

/* Element of R_p = F[V]/(V^p)[Q]/(Q^3); coefficient bits indexed by (v, q). */
struct RingElement {
    Precision prec;
    std::vector<uint8_t> coeff;  // size 3p, index 3*v + q

    explicit RingElement(Precision p) : prec(p), coeff(size_t(3) * p.p, 0) {}
    static RingElement zero(Precision p) { return RingElement(p); }
    static RingElement one(Precision p);
    static RingElement from_monomial(const Monomial& m, Precision p);

    bool get(int v, int q) const { return coeff[size_t(3) * v + q]; }
    void flip(int v, int q) { coeff[size_t(3) * v + q] ^= 1; }
    bool is_zero() const;
    bool is_homogeneous(int* degree_out = nullptr) const;
    std::vector<Monomial> monomials() const;
    std::string str() const;

    RingElement operator+(const RingElement& o) const;
    bool operator==(const RingElement& o) const { return coeff == o.coeff; }
};

/* Truncated product; throws on precision mismatch. */
RingElement mul(const RingElement& a, const RingElement& b);

/* Monomials V^i Q^j with -4i - j = d, i < p, j <= 2 (at most one for any d). */
std::vector<Monomial> basis_in_degree(int d, Precision p);

/* Same in the augmentation ideal R-bar (non-unit monomials).  d must be
** negative: 0 is rejected, positive d would be vacuous. */
std::vector<Monomial> augmentation_ideal_basis(int d, Precision p);

}  // namespace pin2
