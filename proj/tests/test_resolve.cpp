#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pin2homalg/resolve.hpp"

using namespace pin2;

namespace {

/* Example-FF placement: F at (0,0); (2n,-3n), (2n,-3n-2) for n >= 1;
** (2n+1,-1-3n), (2n+1,-4-3n) for n >= 0 */
int ff_expected(int i, int j) {
    if (i == 0) return j == 0 ? 1 : 0;
    if (i % 2 == 0) {
        int n = i / 2;
        return (j == -3 * n || j == -3 * n - 2) ? 1 : 0;
    }
    int n = (i - 1) / 2;
    return (j == -1 - 3 * n || j == -4 - 3 * n) ? 1 : 0;
}

}  // namespace

TEST_CASE("bar differential formulas") {
    Precision p(4);
    GradedModule F = catalogue("trivial_F", p, -12, 0).module;
    auto mono = [](const char* s) { return *parse_monomial(s); };

    SUBCASE("delta(x[Q|Q2]y) = 0 over trivial modules (a cycle)") {
        BarElement e;
        e.m_deg = 0;
        e.m_idx = 0;
        e.word = {mono("Q"), mono("Q2")};
        e.n_deg = 0;
        e.n_idx = 0;
        CHECK(bar_differential(F, F, e).empty());  // Q.Q^2 = 0, trivial end actions
    }
    SUBCASE("delta(x[Q]y) = 0 over trivial modules") {
        BarElement e;
        e.word = {mono("Q")};
        CHECK(bar_differential(F, F, e).empty());
    }
    SUBCASE("delta(x[V|Q]y + x[Q|V]y) = 0: VQ = QV cancels mod 2") {
        BarElement a, b;
        a.word = {mono("V"), mono("Q")};
        b.word = {mono("Q"), mono("V")};
        BarChain da = bar_differential(F, F, a);
        BarChain db = bar_differential(F, F, b);
        REQUIRE(da.size() == 1);  // x[VQ]y
        REQUIRE(db.size() == 1);
        CHECK(da[0] == db[0]);
    }
    SUBCASE("end actions act on a nontrivial module") {
        GradedModule R = catalogue("free_R", p, -12, 0).module;
        BarElement e;
        e.m_deg = 0;
        e.m_idx = 0;
        e.word = {mono("Q")};
        e.n_deg = 0;
        e.n_idx = 0;
        BarChain d = bar_differential(R, F, e);
        REQUIRE(d.size() == 1);  // (1.Q)[]x
        CHECK(d[0].m_deg == -1);
        CHECK(d[0].word.empty());
    }
}

TEST_CASE("bar stage dims count words of non-unit monomials") {
    Precision p(4);
    GradedModule F = catalogue("trivial_F", p, -8, 0).module;
    BarComplex bc = bar_complex(F, F, 4, -8, 0);
    /* stage 0 = F (x) F */
    CHECK(bc.stage_space(0).dim(0) == 1);
    /* stage 1 at -1: [Q]; at -2: [Q2]; at -4: [V]; at -5: [VQ] */
    CHECK(bc.stage_space(1).dim(-1) == 1);
    CHECK(bc.stage_space(1).dim(-2) == 1);
    CHECK(bc.stage_space(1).dim(-3) == 0);
    CHECK(bc.stage_space(1).dim(-4) == 1);
    /* stage 2 at -2: [Q|Q]; at -3: [Q|Q2], [Q2|Q] */
    CHECK(bc.stage_space(2).dim(-2) == 1);
    CHECK(bc.stage_space(2).dim(-3) == 2);
    /* delta^2 = 0 */
    for (int n = 2; n <= 4; ++n) {
        GradedMap dd = compose(bc.stage_differential(n - 1), bc.stage_differential(n));
        CHECK(dd.is_zero());
    }
}

TEST_CASE("tor(F,F) matches the two-periodic placement, both methods") {
    Precision p(6);
    GradedModule F = catalogue("trivial_F", p, -24, 0).module;
    TorParams tp;
    tp.n_max = 7;
    tp.lo = -24;
    tp.hi = 0;

    BigradedTable tr = tor(F, F, TorMethod::resolution, tp);
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; j >= -24; --j) {
            INFO("resolution (" << i << "," << j << ")");
            if (tr.is_certified(i, j))
                CHECK(tr.dim(i, j) == ff_expected(i, j));
            else
                CHECK(ff_expected(i, j) == 0);  // junk only where the paper grid is empty
            if (ff_expected(i, j)) CHECK(tr.is_certified(i, j));
        }
    /* total rank two on every antidiagonal that lies fully inside the
    ** computed homological range (t >= -2 for i <= 6; deeper antidiagonals
    ** pick up the (2n,-3n)-family tails beyond the display) */
    std::map<int, int> totals;
    for (auto& [ij, n] : tr.entries)
        if (tr.is_certified(ij.first, ij.second)) totals[ij.first + ij.second] += n;
    for (int t = 0; t >= -2; --t) CHECK(totals[t] == 2);

    /* at higher precision the frontier moves out and the whole window is clean */
    GradedModule F8 = catalogue("trivial_F", Precision(8), -24, 0).module;
    BigradedTable tr8 = tor(F8, F8, TorMethod::resolution, tp);
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; j >= -24; --j) {
            INFO("p=8 (" << i << "," << j << ")");
            CHECK(tr8.dim(i, j) == ff_expected(i, j));
        }

    BigradedTable tb = tor(F, F, TorMethod::bar, tp);
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; j >= -24; --j) {
            if (!tb.is_certified(i, j) && tb.dim(i, j) != 0) continue;  // uncertified junk zone
            INFO("bar (" << i << "," << j << ")");
            CHECK(tb.dim(i, j) == ff_expected(i, j));
        }
    /* the paper grid entries themselves are all certified in the bar path */
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; j >= -11; --j)
            if (ff_expected(i, j)) {
                CHECK(tb.dim(i, j) == 1);
                CHECK(tb.is_certified(i, j));
            }
}

TEST_CASE("periodic resolution of M_2311") {
    Precision p(5);
    FreeResolution r = periodic_resolution_2311(6, p, -26, 0);
    ValidationReport rep = validate(r);
    INFO((rep.failures.empty() ? std::string() : rep.failures[0]));
    CHECK(rep.pass);

    /* kernels: ker delta_{2n} ~ N<-3n>, ker delta_{2n+1} ~ M<-3-3n> as dims */
    GradedModule N = catalogue("N_2311", p, -26, 0).module;
    GradedModule M = catalogue("M_2311", p, -26, 0).module;
    for (int i = 0; i + 1 < 6; ++i) {
        GradedMap d = r.realize_diff(i);  // P_{i+1} -> P_i
        GradedModule expect = (i % 2 == 0) ? shift(M, -3 - 3 * (i / 2)) : shift(N, -3 * (i / 2 + 1));
        /* i even: delta_{i+1} out of P_{i+1} is odd-type; ker delta_{2n+1} ~ M<-3-3n> */
        GradedModule src = r.realize_stage(i + 1);
        for (int deg = 0; deg >= -14; --deg) {
            if (!src.space.dim(deg) && !expect.space.dim(deg)) continue;
            int k = src.space.dim(deg) - rank(d.block(deg));
            INFO("stage " << i + 1 << " degree " << deg);
            CHECK(k == expect.space.dim(deg));
        }
    }
}

TEST_CASE("free resolutions") {
    Precision p(5);
    SUBCASE("free module resolves in length 0") {
        GradedModule R = catalogue("free_R", p, -20, 0).module;
        FreeResolution r = free_resolution(R, 4, -20, 0);
        REQUIRE(!r.gen_degrees.empty());
        CHECK(r.gen_degrees[0] == std::vector<int>{0});
        CHECK((r.gen_degrees.size() == 1 || r.gen_degrees[1].empty()));
    }
    SUBCASE("resolution of F: generator degrees and the first syzygy") {
        GradedModule F = catalogue("trivial_F", Precision(7), -20, 0).module;
        FreeResolution r = free_resolution(F, 5, -20, 0);
        REQUIRE(r.gen_degrees.size() >= 5);
        CHECK(r.gen_degrees[0] == std::vector<int>{0});
        CHECK(r.gen_degrees[1] == std::vector<int>{-1, -4});
        CHECK(r.gen_degrees[2] == std::vector<int>{-3, -5});
        CHECK(r.gen_degrees[3] == std::vector<int>{-4, -7});
        CHECK(r.gen_degrees[4] == std::vector<int>{-6, -8});
        /* first syzygy has the graded dims of N (not N<-1>) */
        GradedModule N = catalogue("N_2311", Precision(7), -20, 0).module;
        GradedMap aug = r.augmentation;
        GradedModule p0 = r.realize_stage(0);
        for (int d = 0; d >= -12; --d) {
            int k = p0.space.dim(d) - rank(aug.block(d));
            CHECK(k == N.space.dim(d));
        }
        ValidationReport rep = validate(r);
        CHECK(rep.pass);
    }
    SUBCASE("resolution of M_2311 matches the periodic generator degrees") {
        GradedModule M = catalogue("M_2311", Precision(7), -22, 0).module;
        FreeResolution r = free_resolution(M, 4, -22, 0);
        REQUIRE(r.gen_degrees.size() >= 4);
        CHECK(r.gen_degrees[0] == std::vector<int>{0, -2});
        CHECK(r.gen_degrees[1] == std::vector<int>{-1, -4});
        CHECK(r.gen_degrees[2] == std::vector<int>{-3, -5});
        CHECK(r.gen_degrees[3] == std::vector<int>{-4, -7});
    }
}

TEST_CASE("tor basics and properties") {
    Precision p(4);
    TorParams tp;
    tp.n_max = 5;
    tp.lo = -14;
    tp.hi = 0;
    SUBCASE("tor(R, N) = N in column 0") {
        GradedModule R = catalogue("free_R", p, -14, 0).module;
        GradedModule N = catalogue("N_2311", p, -14, 0).module;
        BigradedTable t = tor(R, N, TorMethod::resolution, tp);
        for (int j = 0; j >= -10; --j) {
            CHECK(t.dim(0, j) == N.space.dim(j));
            for (int i = 1; i <= 3; ++i) CHECK(t.dim(i, j) == 0);
        }
    }
    SUBCASE("symmetry in the inputs") {
        GradedModule M = catalogue("M_2311", p, -14, 0).module;
        GradedModule N = catalogue("N_2311", p, -14, 0).module;
        BigradedTable a = tor(M, N, TorMethod::resolution, tp);
        BigradedTable b = tor(N, M, TorMethod::resolution, tp);
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; j >= -9; --j) {
                if (!a.is_certified(i, j) || !b.is_certified(i, j)) continue;
                INFO("(" << i << "," << j << ")");
                CHECK(a.dim(i, j) == b.dim(i, j));
            }
    }
    SUBCASE("shift equivariance") {
        GradedModule F = catalogue("trivial_F", p, -14, 0).module;
        GradedModule N = catalogue("N_2311", p, -14, 0).module;
        BigradedTable base = tor(F, N, TorMethod::resolution, tp);
        TorParams tp2 = tp;
        tp2.hi = 2;
        BigradedTable sh = tor(F, shift(N, 2), TorMethod::resolution, tp2);
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; j >= -8; --j)
                if (base.is_certified(i, j) && sh.is_certified(i, j + 2))
                    CHECK(sh.dim(i, j + 2) == base.dim(i, j));
    }
}

TEST_CASE("tor(N<1>, N<1>): the honest grid") {
    /* frozen from two independent computations (resolution tensor and the
    ** direct coequalizer): columns >= 1 follow Tor(F,F) shifted by <-1>,
    ** column 0 is N<1> (x)_R N<1> */
    Precision p(6);
    GradedModule N = catalogue("N_2311", p, -26, 1).module;
    GradedModule N1 = shift(N, 1);
    TorParams tp;
    tp.n_max = 6;
    tp.lo = -26;
    tp.hi = 1;
    BigradedTable t = tor(N1, N1, TorMethod::resolution, tp);
    std::map<std::pair<int, int>, int> expect = {
        {{0, 0}, 1},  {{0, -1}, 1}, {{0, -3}, 2}, {{0, -4}, 1},  {{0, -6}, 1}, {{0, -7}, 1},
        {{0, -8}, 1}, {{1, -2}, 1}, {{1, -5}, 1}, {{2, -4}, 1},  {{2, -6}, 1}, {{3, -5}, 1},
        {{3, -8}, 1}, {{4, -7}, 1}, {{4, -9}, 1}, {{5, -8}, 1},  {{5, -11}, 1}};
    for (int i = 0; i <= 5; ++i)
        for (int j = 1; j >= -9; --j) {
            auto it = expect.find({i, j});
            INFO("(" << i << "," << j << ")");
            CHECK(t.dim(i, j) == (it == expect.end() ? 0 : it->second));
        }
    /* column 0 equals the tensor_over_R dims */
    GradedModule tn = tensor_over_R(N1, N1);
    for (int j = 1; j >= -9; --j) CHECK(t.dim(0, j) == tn.space.dim(j));
    /* cross-path agreement */
    TorParams tpb = tp;
    tpb.lo = -16;
    BigradedTable tb = tor(N1, N1, TorMethod::bar, tpb);
    for (int i = 0; i <= 4; ++i)
        for (int j = 1; j >= -8; --j)
            if (tb.is_certified(i, j) && t.is_certified(i, j)) {
                INFO("bar vs res (" << i << "," << j << ")");
                CHECK(tb.dim(i, j) == t.dim(i, j));
            }
}

TEST_CASE("PID cone check over F[[U]]") {
    SUBCASE("free case") {
        PidConeReport r = tor_pid_cone_check(u_free(0), u_free(0), -10, 4);
        CHECK(r.pass);
        /* cone dims = F[[U]]<1>: 1, -1, -3, ... */
        CHECK(r.cone_dims[1] == 1);
        CHECK(r.cone_dims[-1] == 1);
        CHECK(r.cone_dims.count(0) == 0);
    }
    SUBCASE("F (x) F: Tor rank 1 in homological degrees 0 and 1") {
        PidConeReport r = tor_pid_cone_check(u_torsion(0, 1), u_torsion(0, 1), -8, 4);
        CHECK(r.pass);
        CHECK(r.cone_dims[1] == 1);  // coker placed at <1>
        CHECK(r.cone_dims[0] == 1);  // ker
    }
    SUBCASE("HM of Sigma(2,3,11) with itself") {
        UModule hm;
        hm.pieces = {{1, -1}, {1, 1}};  // F[[U]]<1> + F<1>
        PidConeReport r = tor_pid_cone_check(hm, hm, -9, 5);
        CHECK(r.pass);
        /* totals of F[[U]]<3> + F^3<3> + F<2> */
        CHECK(r.cone_dims[3] == 4);
        CHECK(r.cone_dims[2] == 1);
        CHECK(r.cone_dims[1] == 1);
        CHECK(r.cone_dims.count(0) == 0);
        CHECK(r.cone_dims[-1] == 1);
        CHECK(r.cone_dims[-3] == 1);
    }
    SUBCASE("nonzero Q-action rejected") {
        GradedModule N = catalogue("N_2311", Precision(3), -12, 0).module;
        CHECK_THROWS_AS(u_from_graded(N), invariant_error);
    }
    SUBCASE("graded module adapter") {
        GradedModule F = catalogue("trivial_F", Precision(3), -12, 0).module;
        PidConeReport r = tor_pid_cone_check(F, F, -8, 4);
        CHECK(r.pass);
    }
}

TEST_CASE("stability: certified entries unchanged at higher precision and wider window") {
    Precision p(4);
    GradedModule M = catalogue("M_2311", p, -14, 0).module;
    GradedModule F = catalogue("trivial_F", p, -14, 0).module;
    TorParams tp;
    tp.n_max = 5;
    tp.lo = -14;
    tp.hi = 0;
    BigradedTable a = tor(M, F, TorMethod::resolution, tp);
    GradedModule M2 = catalogue("M_2311", Precision(5), -18, 0).module;
    GradedModule F2 = catalogue("trivial_F", Precision(5), -18, 0).module;
    TorParams tp2;
    tp2.n_max = 5;
    tp2.lo = -18;
    tp2.hi = 0;
    BigradedTable b = tor(M2, F2, TorMethod::resolution, tp2);
    for (auto& [ij, n] : a.entries)
        if (a.is_certified(ij.first, ij.second)) {
            INFO("(" << ij.first << "," << ij.second << ")");
            CHECK(b.dim(ij.first, ij.second) == n);
        }
}
