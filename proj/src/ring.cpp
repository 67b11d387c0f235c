#include "pin2homalg/ring.hpp"

#include <sstream>

namespace pin2 {

std::string Monomial::str() const {
    std::ostringstream os;
    os << "V^" << v << "*Q^" << q;
    return os.str();
}

std::optional<Monomial> mul_monomial(const Monomial& a, const Monomial& b, Precision p) {
    Monomial m{a.v + b.v, a.q + b.q};
    if (m.q >= 3 || m.v >= p.p) return std::nullopt;
    return m;
}

std::optional<Monomial> parse_monomial(const std::string& s) {
    /* accepts "V^i*Q^j" and the short forms "1", "Q", "Q2", "V", "VQ", "VQ2", "V2Q", ... */
    int v = 0, q = 0;
    if (s == "1") return Monomial{0, 0};
    if (s.find('^') != std::string::npos) {
        if (sscanf(s.c_str(), "V^%d*Q^%d", &v, &q) == 2 && v >= 0 && q >= 0 && q <= 2)
            return Monomial{v, q};
        return std::nullopt;
    }
    size_t i = 0;
    if (i < s.size() && s[i] == 'V') {
        ++i;
        if (i < s.size() && isdigit(s[i])) {
            v = 0;
            while (i < s.size() && isdigit(s[i])) v = v * 10 + (s[i++] - '0');
        } else
            v = 1;
    }
    if (i < s.size() && s[i] == 'Q') {
        ++i;
        if (i < s.size() && isdigit(s[i])) {
            q = 0;
            while (i < s.size() && isdigit(s[i])) q = q * 10 + (s[i++] - '0');
        } else
            q = 1;
    }
    if (i != s.size() || q > 2) return std::nullopt;
    return Monomial{v, q};
}

RingElement RingElement::one(Precision p) {
    RingElement e(p);
    e.flip(0, 0);
    return e;
}

RingElement RingElement::from_monomial(const Monomial& m, Precision p) {
    RingElement e(p);
    if (m.v < p.p && m.q <= 2) e.flip(m.v, m.q);
    return e;
}

bool RingElement::is_zero() const {
    for (uint8_t c : coeff)
        if (c) return false;
    return true;
}

bool RingElement::is_homogeneous(int* degree_out) const {
    std::optional<int> d;
    for (int v = 0; v < prec.p; ++v)
        for (int q = 0; q < 3; ++q)
            if (get(v, q)) {
                int dd = -4 * v - q;
                if (d && *d != dd) return false;
                d = dd;
            }
    if (d && degree_out) *degree_out = *d;
    return true;
}

std::vector<Monomial> RingElement::monomials() const {
    std::vector<Monomial> out;
    for (int v = 0; v < prec.p; ++v)
        for (int q = 0; q < 3; ++q)
            if (get(v, q)) out.push_back({v, q});
    return out;
}

std::string RingElement::str() const {
    auto ms = monomials();
    if (ms.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < ms.size(); ++i) {
        if (i) s += " + ";
        s += ms[i].str();
    }
    return s;
}

RingElement RingElement::operator+(const RingElement& o) const {
    if (!(prec == o.prec)) throw std::invalid_argument("RingElement +: precision mismatch");
    RingElement e = *this;
    for (size_t i = 0; i < coeff.size(); ++i) e.coeff[i] ^= o.coeff[i];
    return e;
}

RingElement mul(const RingElement& a, const RingElement& b) {
    if (!(a.prec == b.prec))
        throw std::invalid_argument("ring mul: precision mismatch");
    RingElement out(a.prec);
    for (int v1 = 0; v1 < a.prec.p; ++v1)
        for (int q1 = 0; q1 < 3; ++q1) {
            if (!a.get(v1, q1)) continue;
            for (int v2 = 0; v2 + v1 < a.prec.p; ++v2)
                for (int q2 = 0; q2 + q1 < 3; ++q2)
                    if (b.get(v2, q2)) out.flip(v1 + v2, q1 + q2);
        }
    return out;
}

std::vector<Monomial> basis_in_degree(int d, Precision p) {
    std::vector<Monomial> out;
    if (d > 0) return out;
    int q = (-d) % 4;
    if (q <= 2) {
        int v = (-d - q) / 4;
        if (0 <= v && v < p.p) out.push_back({v, q});
    }
    return out;
}

std::vector<Monomial> augmentation_ideal_basis(int d, Precision p) {
    if (d == 0)
        throw std::invalid_argument("augmentation_ideal_basis: degree 0 rejected");
    return basis_in_degree(d, p);  // nonzero d excludes the unit automatically
}

}  // namespace pin2
