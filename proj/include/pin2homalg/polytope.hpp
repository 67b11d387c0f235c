#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pin2 {

/* Consecutive substring {lo,...,hi} of {0,...,n-1}; proper means
** 2 <= length <= n-1. */
struct Interval {
    int lo = 0, hi = 0;
    int length() const { return hi - lo + 1; }
    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
    bool operator<(const Interval& o) const { return lo != o.lo ? lo < o.lo : hi < o.hi; }
};

/* Faces coexist iff the hypersurfaces are disjoint: intervals disjoint or
** nested. */
bool compatible(const Interval& a, const Interval& b);

std::vector<Interval> proper_intervals(int n);

/* A face of K_n: a set of pairwise compatible proper intervals.
** codimension = number of intervals; dim K_n = n - 2. */
struct Face {
    int n = 0;
    std::vector<Interval> intervals;  // sorted
    int codim() const { return (int)intervals.size(); }
    int dim() const { return n - 2 - codim(); }
    std::string parenthesization() const;
};

struct KFacet {
    Interval interval;
    int inner;  // K_inner factor (interval length)
    int outer;  // K_outer factor (n - length + 1)
};

std::vector<KFacet> facets_K(int n);

std::vector<Face> face_lattice_K(int n);

/* counts by dimension ascending: f[0] = vertices, ..., f[n-2] = 1 */
std::vector<long long> f_vector_K(int n);

/* maximal compatible families (all of size n-2); count = Catalan(n-1) */
std::vector<Face> cube_decomposition_K(int n);

long long catalan(int n);

/* Multiplihedron facets: kind 1 = ordered composition i_1+...+i_j = n with
** j >= 2 parts (J_{i_1} x ... x J_{i_j} x K_j); kind 2 = a K_e block applied
** at a position (J_{n-e+1} x K_e), 2 <= e <= n, 0 <= pos <= n-e. */
struct MultiplihedronFace {
    int n = 0;
    int kind = 1;
    std::vector<int> parts;  // kind 1
    int pos = 0, e = 0;      // kind 2
    std::string str() const;
};

std::vector<MultiplihedronFace> facets_J(int n);

/* index triples (i, j, l) of the A-infinity relation for a given n:
** i + j = n + 1, 1 <= l <= i.  Terms with i, j >= 2 biject with the
** facets of K_n via {l-1, ..., l+j-2}. */
struct RelationTerm {
    int i, j, l;
};

std::vector<RelationTerm> relation_terms(int n);

}  // namespace pin2
