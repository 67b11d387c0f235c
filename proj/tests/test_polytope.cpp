#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "pin2homalg/polytope.hpp"

using namespace pin2;

TEST_CASE("interval compatibility") {
    CHECK(compatible({0, 1}, {2, 3}));      // disjoint
    CHECK(compatible({0, 1}, {0, 2}));      // nested
    CHECK(!compatible({0, 2}, {1, 3}));     // overlap, neither contains the other
    CHECK(compatible({1, 2}, {1, 2}));
    CHECK(!compatible({0, 1}, {1, 2}));     // share one element
}

TEST_CASE("facet counts of K_n") {
    CHECK(facets_K(3).size() == 2);
    CHECK(facets_K(4).size() == 5);
    CHECK(facets_K(5).size() == 9);
    /* count formula: sum over lengths 2..n-1 of (n-l+1) */
    for (int n = 3; n <= 8; ++n) {
        size_t expect = 0;
        for (int l = 2; l <= n - 1; ++l) expect += n - l + 1;
        CHECK(facets_K(n).size() == expect);
    }
    /* factorization: pieces have dimensions summing to dim K_n - 1 */
    for (int n = 3; n <= 7; ++n)
        for (auto& f : facets_K(n))
            CHECK((f.inner - 2) + (f.outer - 2) == n - 3);
}

TEST_CASE("f-vectors") {
    CHECK(f_vector_K(3) == std::vector<long long>{2, 1});
    CHECK(f_vector_K(4) == std::vector<long long>{5, 5, 1});
    CHECK(f_vector_K(5) == std::vector<long long>{14, 21, 9, 1});
}

TEST_CASE("vertices are Catalan and cubes have size n-2") {
    for (int n = 2; n <= 7; ++n) {
        auto cubes = cube_decomposition_K(n);
        CHECK((long long)cubes.size() == catalan(n - 1));
        for (auto& f : cubes) CHECK((int)f.intervals.size() == n - 2);
        /* vertices = maximal faces: every compatible family extends to size n-2 */
        auto faces = face_lattice_K(n);
        long long verts = 0;
        for (auto& f : faces)
            if (f.codim() == n - 2) ++verts;
        CHECK(verts == catalan(n - 1));
    }
}

TEST_CASE("Euler characteristic of the face lattice is that of a ball") {
    for (int n = 3; n <= 7; ++n) {
        auto f = f_vector_K(n);
        long long chi = 0;
        for (size_t d = 0; d < f.size(); ++d) chi += (d % 2 ? -1 : 1) * f[d];
        CHECK(chi == 1);
    }
}

TEST_CASE("multiplihedron facet counts") {
    CHECK(facets_J(2).size() == 2);  // f(01) and f(0)f(1)
    CHECK(facets_J(3).size() == 6);  // hexagon
    /* formula: (2^{n-1} - 1) compositions + sum_{e=2..n} (n-e+1) blocks */
    for (int n = 2; n <= 7; ++n) {
        size_t expect = (1u << (n - 1)) - 1;
        for (int e = 2; e <= n; ++e) expect += n - e + 1;
        CHECK(facets_J(n).size() == expect);
    }
}

TEST_CASE("relation terms") {
    auto terms = relation_terms(2);
    std::set<std::tuple<int, int, int>> got;
    for (auto& t : terms) got.insert({t.i, t.j, t.l});
    CHECK(got == std::set<std::tuple<int, int, int>>{{1, 2, 1}, {2, 1, 1}, {2, 1, 2}});

    /* term count = (n+1) mu_1-type terms + facet count of K_n */
    for (int n = 2; n <= 7; ++n) {
        auto ts = relation_terms(n);
        size_t mu1_terms = 0, facet_terms = 0;
        for (auto& t : ts) {
            if (t.i == 1 || t.j == 1)
                ++mu1_terms;
            else
                ++facet_terms;
        }
        CHECK(mu1_terms == (size_t)n + 1);
        CHECK(facet_terms == facets_K(n).size());
        /* bijection: (i,j,l) with i,j >= 2 <-> interval {l-1..l+j-2} */
        std::set<std::pair<int, int>> ivs;
        for (auto& t : ts)
            if (t.i >= 2 && t.j >= 2) ivs.insert({t.l - 1, t.l + t.j - 2});
        std::set<std::pair<int, int>> facet_ivs;
        for (auto& f : facets_K(n)) facet_ivs.insert({f.interval.lo, f.interval.hi});
        CHECK(ivs == facet_ivs);
    }
}

TEST_CASE("parenthesization view") {
    Face f;
    f.n = 4;
    f.intervals = {{0, 1}, {0, 2}};
    CHECK(f.parenthesization() == "((ab)c)d");
}
