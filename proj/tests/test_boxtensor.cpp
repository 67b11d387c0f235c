#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pin2homalg/boxtensor.hpp"
#include "pin2homalg/resolve.hpp"

using namespace pin2;

namespace {

BasisRef br(int d, int i) { return BasisRef{d, i}; }

struct Setup {
    std::shared_ptr<AInfAlgebra> model;
    Precision p{2};
    int lo = -10, hi = 0;
    Setup(int prec, int lo_, int hi_) : p(prec), lo(lo_), hi(hi_) {
        model = std::make_shared<AInfAlgebra>(strict_model_R(p, lo, hi));
    }
    AInfModule right(const std::string& name) {
        return strict_module(model, catalogue(name, p, lo, hi).module, Side::right);
    }
    AInfModule left(const std::string& name) {
        return strict_module(model, catalogue(name, p, lo, hi).module, Side::left);
    }
};

}  // namespace

TEST_CASE("H(R box N) = H(N) on certified degrees") {
    Setup s(2, -10, 0);
    AInfModule R = s.right("free_R");
    AInfModule N = s.left("N_2311");
    BoxTensorComplex box = box_tensor(R, N, 4, -10, 0);
    GradedVectorSpace h = box.homology_dims_total();
    GradedModule n = catalogue("N_2311", s.p, -10, 0).module;
    for (int d = 0; d >= -6; --d) {
        if (!box.degree_certified(d) || !box.degree_certified(d + 1)) continue;
        INFO("degree " << d);
        CHECK(h.dim(d) == n.space.dim(d));
    }
}

TEST_CASE("H(F box F) equals Tor totals") {
    Setup s(3, -9, 0);
    AInfModule F = s.right("trivial_F");
    AInfModule Fl = s.left("trivial_F");
    BoxTensorComplex box = box_tensor(F, Fl, 6, -9, 0);
    GradedVectorSpace h = box.homology_dims_total();
    GradedModule Fm = catalogue("trivial_F", s.p, -9, 0).module;
    TorParams tp;
    tp.n_max = 8;
    tp.lo = -9;
    tp.hi = 0;
    BigradedTable t = tor(Fm, Fm, TorMethod::resolution, tp);
    std::map<int, int> tot;
    for (auto& [ij, n] : t.entries)
        if (t.is_certified(ij.first, ij.second)) tot[ij.first + ij.second] += n;
    for (int d = 0; d >= -3; --d) {
        if (!box.degree_certified(d) || !box.degree_certified(d + 1)) continue;
        INFO("degree " << d);
        CHECK(h.dim(d) == tot[d]);
    }
    CHECK(h.dim(0) == 2);
    CHECK(h.dim(-1) == 2);
}

TEST_CASE("left module structure on the box from a bimodule") {
    Setup s(2, -8, 0);
    AInfModule bi;
    bi.side = Side::bimodule;
    bi.algebra = s.model;
    bi.space = s.model->space;
    bi.mij[{1, 2}] = s.model->mu.at(2);
    bi.mij[{2, 1}] = s.model->mu.at(2);
    REQUIRE(check_bimodule_relations(bi, 3).pass);

    AInfModule F = s.left("trivial_F");
    BoxTensorComplex box = box_tensor(bi, F, 3, -8, 0);
    AInfModule induced = left_module_on_box(bi, F, box);
    CHECK(induced.side == Side::left);
    CheckReport rep = check_module_relations(induced, 3);
    INFO(rep.message);
    CHECK(rep.pass);

    SUBCASE("n = 1 action is the box differential") {
        GradedMap d1 = induced.m1_map();
        GradedMap dbox = box.total_differential();
        for (auto& [d, n] : box.total_space().dims) {
            (void)n;
            CHECK(d1.block(d) == dbox.block(d));
        }
    }
    SUBCASE("the induced action of Q is left multiplication on the M slot") {
        Chain q = monomial_chain(*s.model, {0, 1});
        for (auto& [deg, v] : box.stages[0]) {
            for (auto& e : v) {
                std::vector<Chain> args = {q, {br(deg, box.flat_index(e))}};
                Chain img = induced.apply_m_chains(2, args);
                auto mons = basis_in_degree(e.x.deg, s.p);
                auto prod = mul_monomial(mons[0], Monomial{0, 1}, s.p);
                if (prod && box.total_space().dim(deg - 1)) {
                    REQUIRE(img.size() == 1);
                    const BoxElement& t = box.flat_element(img[0].deg, img[0].idx);
                    CHECK(t.x.deg == e.x.deg - 1);
                } else {
                    CHECK(img.empty());
                }
            }
        }
    }
    SUBCASE("a mutated bimodule induces a failing structure") {
        AInfModule bad = bi;
        bad.mij[{2, 2}].entries[{br(-1, 0), br(0, 0), br(-1, 0)}] = {br(-1, 0)};
        AInfModule ind2 = left_module_on_box(bad, F, box);
        CHECK(!check_module_relations(ind2, 3).pass);
    }
}

TEST_CASE("mapping cones") {
    Setup s(2, -8, 0);
    AInfModule R = s.right("free_R");

    SUBCASE("cone of the identity is acyclic") {
        AInfMorphism id = identity_morphism(R);
        MappingCone c = mapping_cone(id, 3);
        CHECK(c.is_acyclic());
    }
    SUBCASE("cone of zero splits") {
        AInfMorphism z = zero_morphism(R, R);
        MappingCone c = mapping_cone(z, 3);
        HomologyData h = homology(c.module.m1_map());
        GradedModule r = catalogue("free_R", s.p, -8, 0).module;
        for (int d = 0; d >= -5; --d)
            CHECK(h.H.dim(d) == r.space.dim(d) + r.space.dim(d - 1));
    }
    SUBCASE("cone of multiplication by Q: ker/coker pattern") {
        AInfMorphism mulq = zero_morphism(R, R);
        OpTable f1;
        for (auto& [d, n] : R.space.dims) {
            (void)n;
            auto mons = basis_in_degree(d, s.p);
            if (mons.empty()) continue;
            if (mul_monomial(mons[0], Monomial{0, 1}, s.p) && R.space.dim(d - 1))
                f1.entries[{br(d, 0)}] = {br(d - 1, 0)};
        }
        mulq.f[1] = f1;
        MappingCone c = mapping_cone(mulq, 3);
        HomologyData h = homology(c.module.m1_map());
        for (int d = 0; d >= -5; --d) {
            int expect = 0;
            auto mons = basis_in_degree(d, s.p);
            if (!mons.empty() && mons[0].q == 0) expect += 1;
            auto mons2 = basis_in_degree(d - 1, s.p);
            if (!mons2.empty() && mons2[0].q == 2) expect += 1;
            INFO("degree " << d);
            CHECK(h.H.dim(d) == expect);
        }
        TriangleReport tr = cone_triangle_exact(c, mulq);
        for (auto& f : tr.failures) { INFO(f); }
        CHECK(tr.exact);
    }
    SUBCASE("triangle exactness for the inclusion N = Rbar -> R") {
        AInfModule N = s.right("N_2311");
        AInfMorphism f = zero_morphism(N, R);
        GradedModule n = catalogue("N_2311", s.p, -8, 0).module;
        GradedModule r = catalogue("free_R", s.p, -8, 0).module;
        OpTable f1;
        for (auto& [d, nn] : n.space.dims)
            for (int i = 0; i < nn; ++i)
                if (r.space.dim(d)) f1.entries[{br(d, i)}] = {br(d, 0)};
        f.f[1] = f1;
        REQUIRE(check_morphism(f, 3).pass);
        MappingCone c = mapping_cone(f, 3);
        TriangleReport tr = cone_triangle_exact(c, f);
        for (auto& fl : tr.failures) { INFO(fl); }
        CHECK(tr.exact);
    }
}

TEST_CASE("iterated cone") {
    auto A = std::make_shared<AInfAlgebra>(strict_model_R(Precision(1), -4, 1));
    auto mk = [&]() {
        AInfModule c;
        c.side = Side::right;
        c.algebra = A;
        c.space.lo = -4;
        c.space.hi = 1;
        c.space.dims[1] = 1;
        c.space.dims[0] = 1;
        OpTable m1;
        m1.entries[{br(1, 0)}] = {br(0, 0)};
        c.m[1] = m1;
        OpTable m2;
        m2.entries[{br(1, 0), br(0, 0)}] = {br(1, 0)};
        m2.entries[{br(0, 0), br(0, 0)}] = {br(0, 0)};
        c.m[2] = m2;
        return c;
    };
    AInfModule C1 = mk(), C2 = mk(), C3 = mk();
    REQUIRE(check_module_relations(C1, 3).pass);

    SUBCASE("f1 = id, f2 = 0, h = 0") {
        AInfMorphism f1 = identity_morphism(C1);
        f1.target = &C2;
        AInfMorphism f2 = zero_morphism(C2, C3);
        AInfHomotopy h;
        MappingCone c = iterated_cone(f1, f2, h, 3);
        HomologyData hh = homology(c.module.m1_map());
        CHECK(hh.H.total_dim() == 0);
    }
    SUBCASE("exact-triangle triple with a genuine homotopy is acyclic") {
        AInfMorphism f1 = identity_morphism(C1);
        f1.target = &C2;
        AInfMorphism f2 = identity_morphism(C2);
        f2.target = &C3;
        AInfHomotopy h;
        OpTable h1;
        h1.entries[{br(0, 0)}] = {br(1, 0)};
        h.h[1] = h1;
        MappingCone c = iterated_cone(f1, f2, h, 3);
        HomologyData hh = homology(c.module.m1_map());
        CHECK(hh.H.total_dim() == 0);
    }
    SUBCASE("all maps zero: homology is the direct sum") {
        AInfMorphism f1 = zero_morphism(C1, C2);
        AInfMorphism f2 = zero_morphism(C2, C3);
        AInfHomotopy h;
        MappingCone c = iterated_cone(f1, f2, h, 3);
        HomologyData hh = homology(c.module.m1_map());
        CHECK(hh.H.total_dim() == 0);
        AInfModule Z1 = C1, Z2 = C2, Z3 = C3;
        Z1.m.erase(1);
        Z2.m.erase(1);
        Z3.m.erase(1);
        AInfMorphism g1 = zero_morphism(Z1, Z2);
        AInfMorphism g2 = zero_morphism(Z2, Z3);
        MappingCone c2 = iterated_cone(g1, g2, h, 3);
        HomologyData h2 = homology(c2.module.m1_map());
        CHECK(h2.H.total_dim() == 6);
    }
    SUBCASE("a wrong homotopy is rejected") {
        AInfMorphism f1 = identity_morphism(C1);
        f1.target = &C2;
        AInfMorphism f2 = identity_morphism(C2);
        f2.target = &C3;
        AInfHomotopy h;
        CHECK_THROWS_AS(iterated_cone(f1, f2, h, 3), invariant_error);
    }
}
