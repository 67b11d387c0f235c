#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pin2homalg/ring.hpp"

using namespace pin2;

TEST_CASE("monomial products and truncation") {
    Precision p(4);
    auto E = [&](const char* s) { return RingElement::from_monomial(*parse_monomial(s), p); };
    CHECK(mul(E("Q"), E("Q2")).is_zero());          // Q^3 = 0
    CHECK(mul(E("V"), E("Q")) == E("VQ"));          // degree -5
    CHECK(mul(E("V3"), E("V")).is_zero());          // V^p = 0
    CHECK(mul(E("V2Q"), E("VQ")) == E("V3Q2"));
    int d;
    RingElement vq = mul(E("V"), E("Q"));
    CHECK(vq.is_homogeneous(&d));
    CHECK(d == -5);
}

TEST_CASE("basis in degree") {
    Precision p(4);
    auto names = [&](int d) {
        std::string s;
        for (auto& m : basis_in_degree(d, p)) s += m.str();
        return s;
    };
    CHECK(names(0) == "V^0*Q^0");
    CHECK(names(-4) == "V^1*Q^0");
    CHECK(names(-1) == "V^0*Q^1");
    CHECK(names(-5) == "V^1*Q^1");
    CHECK(names(-6) == "V^1*Q^2");
    CHECK(names(-3) == "");
    CHECK(names(1) == "");
    CHECK(basis_in_degree(-16, p).empty());
}

TEST_CASE("augmentation ideal basis") {
    Precision p(3);
    CHECK(augmentation_ideal_basis(-1, p).size() == 1);
    CHECK(augmentation_ideal_basis(-2, p).size() == 1);
    CHECK(augmentation_ideal_basis(-8, p).size() == 1);  // V^2, present since p >= 3
    CHECK(augmentation_ideal_basis(-8, Precision(2)).empty());
    CHECK_THROWS_AS(augmentation_ideal_basis(0, p), std::invalid_argument);
}

TEST_CASE("associativity and commutativity on all monomial triples, p <= 6") {
    for (int pp = 1; pp <= 6; ++pp) {
        Precision p(pp);
        std::vector<Monomial> mons;
        for (int v = 0; v < pp; ++v)
            for (int q = 0; q < 3; ++q) mons.push_back({v, q});
        for (auto& a : mons)
            for (auto& b : mons) {
                RingElement ab = mul(RingElement::from_monomial(a, p),
                                     RingElement::from_monomial(b, p));
                RingElement ba = mul(RingElement::from_monomial(b, p),
                                     RingElement::from_monomial(a, p));
                CHECK(ab == ba);
                if (!ab.is_zero()) {
                    int d;
                    CHECK(ab.is_homogeneous(&d));
                    CHECK(d == a.degree() + b.degree());
                }
                for (auto& c : mons) {
                    RingElement left = mul(ab, RingElement::from_monomial(c, p));
                    RingElement right = mul(RingElement::from_monomial(a, p),
                                            mul(RingElement::from_monomial(b, p),
                                                RingElement::from_monomial(c, p)));
                    CHECK(left == right);
                }
            }
    }
}

TEST_CASE("R_p has total dimension 3p") {
    for (int pp = 1; pp <= 8; ++pp) {
        int total = 0;
        for (int d = 0; d >= -4 * pp - 2; --d) total += (int)basis_in_degree(d, Precision(pp)).size();
        CHECK(total == 3 * pp);
    }
}

TEST_CASE("monomial serialization round trip") {
    auto m = parse_monomial("V^2*Q^1");
    REQUIRE(m.has_value());
    CHECK(m->v == 2);
    CHECK(m->q == 1);
    CHECK(parse_monomial(m->str())->v == 2);
    CHECK(parse_monomial("VQ2")->q == 2);
    CHECK(parse_monomial("1")->is_unit());
    CHECK(!parse_monomial("Q3").has_value());
}
