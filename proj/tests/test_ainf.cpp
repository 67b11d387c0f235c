#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pin2homalg/ainf.hpp"

using namespace pin2;

namespace {

BasisRef br(int d, int i) { return BasisRef{d, i}; }

/* 11-dimensional DGA with a forced nonzero triple Massey product <x,y,z>:
** basis 1(0); x,y,z,p,q(-1); v1,v2,w1,w2(-2); th(-3), with
** dp = v1 = xy, dq = v2 = yz, dw1 = dw2 = th, pz = w1, xq = w2,
** v1 z = x v2 = th.  <x,y,z> = [pz + xq] = [w1 + w2] != 0. */
AInfAlgebra massey_dga() {
    AInfAlgebra a;
    a.space.lo = -3;
    a.space.hi = 0;
    a.space.dims[0] = 1;
    a.space.labels[0] = {"1"};
    a.space.dims[-1] = 5;
    a.space.labels[-1] = {"x", "y", "z", "p", "q"};
    a.space.dims[-2] = 4;
    a.space.labels[-2] = {"v1", "v2", "w1", "w2"};
    a.space.dims[-3] = 1;
    a.space.labels[-3] = {"th"};
    const BasisRef one = br(0, 0);
    const BasisRef x = br(-1, 0), y = br(-1, 1), z = br(-1, 2), p = br(-1, 3), q = br(-1, 4);
    const BasisRef v1 = br(-2, 0), v2 = br(-2, 1), w1 = br(-2, 2), w2 = br(-2, 3);
    const BasisRef th = br(-3, 0);
    OpTable mu1;
    mu1.entries[{p}] = {v1};
    mu1.entries[{q}] = {v2};
    mu1.entries[{w1}] = {th};
    mu1.entries[{w2}] = {th};
    a.mu[1] = mu1;
    OpTable mu2;
    for (auto& b : {one, x, y, z, p, q, v1, v2, w1, w2, th}) {
        mu2.entries[{one, b}] = {b};
        if (!(b == one)) mu2.entries[{b, one}] = {b};
    }
    mu2.entries[{x, y}] = {v1};
    mu2.entries[{y, z}] = {v2};
    mu2.entries[{p, z}] = {w1};
    mu2.entries[{x, q}] = {w2};
    mu2.entries[{v1, z}] = {th};
    mu2.entries[{x, v2}] = {th};
    a.mu[2] = mu2;
    a.i_max = 2;
    return a;
}

/* toy right module with a single nonzero m3: M = <xm(0), xm'(-1)>,
** A = <1(0), a(-1)> square-zero, m3(xm, a, a) = xm' */
std::pair<std::shared_ptr<AInfAlgebra>, AInfModule> toy_m3_module() {
    auto A = std::make_shared<AInfAlgebra>();
    A->space.lo = -6;
    A->space.hi = 0;
    A->space.dims[0] = 1;
    A->space.labels[0] = {"1"};
    A->space.dims[-1] = 1;
    A->space.labels[-1] = {"a"};
    OpTable mu2;
    mu2.entries[{br(0, 0), br(0, 0)}] = {br(0, 0)};
    mu2.entries[{br(0, 0), br(-1, 0)}] = {br(-1, 0)};
    mu2.entries[{br(-1, 0), br(0, 0)}] = {br(-1, 0)};
    A->mu[2] = mu2;
    A->i_max = 3;

    AInfModule M;
    M.side = Side::right;
    M.algebra = A;
    M.space.lo = -6;
    M.space.hi = 0;
    M.space.dims[0] = 1;
    M.space.labels[0] = {"xm"};
    M.space.dims[-1] = 1;
    M.space.labels[-1] = {"xm'"};
    OpTable m2;
    m2.entries[{br(0, 0), br(0, 0)}] = {br(0, 0)};
    m2.entries[{br(-1, 0), br(0, 0)}] = {br(-1, 0)};
    M.m[2] = m2;
    OpTable m3;
    m3.entries[{br(0, 0), br(-1, 0), br(-1, 0)}] = {br(-1, 0)};
    M.m[3] = m3;
    return {A, M};
}

}  // namespace

TEST_CASE("strict structures pass the relation checkers") {
    AInfAlgebra dga = massey_dga();
    CHECK(validate(dga).pass);
    CheckReport r = check_algebra_relations(dga, 4);
    INFO(r.message);
    CHECK(r.pass);

    AInfAlgebra rp = strict_model_R(Precision(3), -14, 0);
    CHECK(check_algebra_relations(rp, 4).pass);

    auto model = std::make_shared<AInfAlgebra>(rp);
    AInfModule self;
    self.side = Side::right;
    self.algebra = model;
    self.space = rp.space;
    self.m[2] = rp.mu.at(2);
    CheckReport mr = check_module_relations(self, 4);
    INFO(mr.message);
    CHECK(mr.pass);

    GradedModule N = catalogue("N_2311", Precision(3), -14, 0).module;
    AInfModule nm = strict_module(model, N, Side::right);
    CHECK(check_module_relations(nm, 3).pass);
    AInfModule nl = strict_module(model, N, Side::left);
    CHECK(check_module_relations(nl, 3).pass);
}

TEST_CASE("mutations are caught with located counterexamples") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        AInfAlgebra dga = massey_dga();
        std::string what = mutate_algebra(dga, seed);
        CheckReport r = check_algebra_relations(dga, 4);
        INFO("seed " << seed << ": " << what);
        CHECK(!r.pass);
        CHECK(!r.tuple.empty());
    }
    /* module side: a rich strict action structure is broken by any single
    ** degree-consistent flip */
    Precision p(3);
    auto model = std::make_shared<AInfAlgebra>(strict_model_R(p, -14, 0));
    GradedModule N = catalogue("N_2311", p, -14, 0).module;
    AInfModule nm = strict_module(model, N, Side::right);
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        AInfModule mm = nm;
        std::string what = mutate_module(mm, seed);
        CheckReport r = check_module_relations(mm, 3);
        INFO("seed " << seed << ": " << what);
        CHECK(!r.pass);
    }
}

TEST_CASE("bimodule checker") {
    Precision p(3);
    AInfAlgebra rp = strict_model_R(p, -14, 0);
    auto model = std::make_shared<AInfAlgebra>(rp);
    AInfModule bi;
    bi.side = Side::bimodule;
    bi.algebra = model;
    bi.space = rp.space;
    bi.mij[{1, 2}] = rp.mu.at(2);
    bi.mij[{2, 1}] = rp.mu.at(2);
    CheckReport r = check_bimodule_relations(bi, 4);
    INFO(r.message);
    CHECK(r.pass);

    SUBCASE("mutated bimodule fails") {
        bi.mij[{2, 2}].entries[{br(-1, 0), br(0, 0), br(-1, 0)}] = {br(-4, 0)};
        CHECK(!check_bimodule_relations(bi, 4).pass);
    }
}

TEST_CASE("opposite") {
    auto [A, M] = toy_m3_module();
    AInfModule op = opposite(M);
    CHECK(op.side == Side::left);
    AInfModule back = opposite(op);
    CHECK(back.side == Side::right);
    for (auto& [i, t] : M.m) {
        REQUIRE(back.m.count(i));
        CHECK(back.m.at(i).entries == t.entries);
    }
    CHECK(check_module_relations(M, 5).pass);
    CHECK(check_module_relations(op, 5).pass);
    AInfModule bad = M;
    mutate_module(bad, 7);
    AInfModule bad_op = opposite(bad);
    CHECK(check_module_relations(bad, 5).pass == check_module_relations(bad_op, 5).pass);
}

TEST_CASE("morphisms") {
    Precision p(2);
    AInfAlgebra rp = strict_model_R(p, -10, 0);
    auto model = std::make_shared<AInfAlgebra>(rp);
    GradedModule R = catalogue("free_R", p, -10, 0).module;
    AInfModule mr = strict_module(model, R, Side::right);

    AInfMorphism id = identity_morphism(mr);
    CHECK(check_morphism(id, 3).pass);

    /* multiplication by Q: a strict chain map of degree -1 */
    AInfMorphism mulq = zero_morphism(mr, mr);
    OpTable f1;
    for (auto& [d, n] : mr.space.dims) {
        (void)n;
        auto mons = basis_in_degree(d, p);
        if (mons.empty()) continue;
        auto out = mul_monomial(mons[0], Monomial{0, 1}, p);
        if (out && mr.space.dim(d - 1)) f1.entries[{br(d, 0)}] = {br(d - 1, 0)};
    }
    mulq.f[1] = f1;
    CHECK(check_morphism(mulq, 3).pass);

    AInfMorphism c = compose(id, mulq);
    for (auto& [i, t] : mulq.f) {
        REQUIRE(c.f.count(i));
        CHECK(c.f.at(i).entries == t.entries);
    }
    AInfMorphism c2 = compose(mulq, id);
    CHECK(c2.f.at(1).entries == mulq.f.at(1).entries);

    AInfMorphism bad = mulq;
    bad.f[1].entries.erase({br(0, 0)});  // drop one value: no longer commutes
    CHECK(!check_morphism(bad, 3).pass);
}

TEST_CASE("homology and the induced algebra") {
    AInfAlgebra dga = massey_dga();
    HomologyData h = homology(dga.mu1_map());
    CHECK(h.H.dim(0) == 1);
    CHECK(h.H.dim(-1) == 3);
    CHECK(h.H.dim(-2) == 1);
    CHECK(h.H.dim(-3) == 0);
    AInfAlgebra ha = homology_algebra(dga);
    CHECK(check_algebra_relations(ha, 3).pass);
}

TEST_CASE("massey3") {
    SUBCASE("strict R model with vanishing products gives zero") {
        AInfAlgebra rp = strict_model_R(Precision(2), -10, 0);
        Chain q2 = monomial_chain(rp, {0, 2});
        Chain q = monomial_chain(rp, {0, 1});
        MasseyResult r = massey3(rp, q2, q, q2);
        REQUIRE(r.defined);
        CHECK(r.class_is_zero_mod_indeterminacy());
    }
    SUBCASE("the 11-dimensional DGA has <x,y,z> nonzero with zero indeterminacy") {
        AInfAlgebra dga = massey_dga();
        Chain x = {br(-1, 0)}, y = {br(-1, 1)}, z = {br(-1, 2)};
        MasseyResult r = massey3(dga, x, y, z);
        REQUIRE(r.defined);
        CHECK(r.degree == -2);
        CHECK(!r.class_is_zero_mod_indeterminacy());
        CHECK(r.indeterminacy.cols() == 0);
    }
    SUBCASE("coset independent of pivot randomization, 10 trials") {
        AInfAlgebra dga = massey_dga();
        Chain x = {br(-1, 0)}, y = {br(-1, 1)}, z = {br(-1, 2)};
        MasseyResult base = massey3(dga, x, y, z, 0);
        for (uint64_t seed = 1; seed <= 10; ++seed) {
            MasseyResult r = massey3(dga, x, y, z, seed);
            REQUIRE(r.defined);
            CHECK(base.same_coset(r));
        }
    }
    SUBCASE("an obstructed product reports undefined") {
        /* free_R over itself: [Q][Q] = Q^2 != 0 in homology (mu1 = 0) */
        AInfAlgebra rp = strict_model_R(Precision(2), -10, 0);
        Chain q = monomial_chain(rp, {0, 1});
        MasseyResult r = massey3(rp, q, q, q);
        CHECK(!r.defined);
        CHECK(!r.obstruction.empty());
    }
}

TEST_CASE("the candidate A-infinity structure on R_p") {
    SUBCASE("relations hold through n = 7 (all higher vanish structurally)") {
        AInfAlgebra a = candidate_ainf_R(Precision(2), -12, 0);
        CHECK(validate(a).pass);
        CheckReport r = check_algebra_relations(a, 7);
        INFO(r.message);
        CHECK(r.pass);
    }
    SUBCASE("fourfold product <Q2, Q, Q2, Q> contains V and equals {V}") {
        AInfAlgebra a = candidate_ainf_R(Precision(3), -14, 0);
        Chain q2 = monomial_chain(a, {0, 2});
        Chain q = monomial_chain(a, {0, 1});
        Massey4Result r = massey4(a, q2, q, q2, q);
        REQUIRE(r.defined);
        CHECK(r.degree == -4);
        HomologyData h = homology(a.mu1_map());
        Chain v = monomial_chain(a, {1, 0});
        auto vcls = h.to_H(v, -4);
        CHECK(r.contains(vcls));
        CHECK(r.enumerated);
        CHECK(r.classes.size() == 1);
    }
    SUBCASE("degree bookkeeping: -2-1-2-1+2 = -4 = deg V") {
        CHECK(Monomial{1, 0}.degree() == -4);
        CHECK(-2 - 1 - 2 - 1 + 2 == Monomial{1, 0}.degree());
    }
    SUBCASE("strict model yields {0}") {
        AInfAlgebra a = strict_model_R(Precision(2), -10, 0);
        Chain q2 = monomial_chain(a, {0, 2});
        Chain q = monomial_chain(a, {0, 1});
        Massey4Result r = massey4(a, q2, q, q2, q);
        REQUIRE(r.defined);
        for (auto& c : r.classes)
            for (auto b : c) CHECK(b == 0);
    }
}

TEST_CASE("massey3_module") {
    SUBCASE("module = algebra reproduces massey3") {
        AInfAlgebra dga = massey_dga();
        auto model = std::make_shared<AInfAlgebra>(dga);
        AInfModule self;
        self.side = Side::right;
        self.algebra = model;
        self.space = dga.space;
        self.m[1] = dga.mu.at(1);
        self.m[2] = dga.mu.at(2);
        Chain x = {br(-1, 0)}, y = {br(-1, 1)}, z = {br(-1, 2)};
        MasseyResult alg = massey3(dga, x, y, z);
        MasseyResult mod = massey3_module(self, x, y, z);
        REQUIRE(mod.defined);
        CHECK(mod.degree == alg.degree);
        CHECK(mod.representative == alg.representative);
        CHECK(!mod.class_is_zero_mod_indeterminacy());
    }
    SUBCASE("toy module with one nonzero m3 gives a nonzero product") {
        auto [A, M] = toy_m3_module();
        Chain xm = {br(0, 0)};
        Chain a = {br(-1, 0)};
        MasseyResult r = massey3_module(M, xm, a, a);
        REQUIRE(r.defined);
        CHECK(!r.class_is_zero_mod_indeterminacy());
        CHECK(r.representative == Chain{br(-1, 0)});
    }
    SUBCASE("strict module with zero witnesses gives zero") {
        Precision p(2);
        AInfAlgebra rp = strict_model_R(p, -10, 0);
        auto model = std::make_shared<AInfAlgebra>(rp);
        GradedModule F = catalogue("trivial_F", p, -10, 0).module;
        AInfModule fm = strict_module(model, F, Side::right);
        Chain x = {br(0, 0)};
        Chain q = monomial_chain(rp, {0, 1});
        Chain q2 = monomial_chain(rp, {0, 2});
        MasseyResult r = massey3_module(fm, x, q, q2);  // Q.Q^2 = 0 on the nose
        REQUIRE(r.defined);
        CHECK(r.class_is_zero_mod_indeterminacy());
    }
}
