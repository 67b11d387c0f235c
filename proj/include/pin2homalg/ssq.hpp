#pragma once

#include "pin2homalg/boxtensor.hpp"
#include "pin2homalg/resolve.hpp"

namespace pin2 {

/* F2 chain complex with an increasing, exhaustive, bounded-below filtration. */
struct FilteredComplex {
    GradedVectorSpace space;           // total space by degree
    std::map<int, std::vector<int>> level;  // degree -> per-index filtration level
    GradedMap d;                       // degree -1
    int level_min = 0, level_max = 0;

    /* throws invariant_error if d raises the filtration or d^2 != 0 */
    void validate() const;
};

FilteredComplex filtered_from_box(const BoxTensorComplex& box);

struct PageEntry {
    int p = 0, t = 0;     // filtration, total degree
    BitMatrix lifts;      // columns: representatives in total coordinates
    BitMatrix denom;      // columns: the subspace quotiented out
    int dim() const { return lifts.cols(); }
};

struct Page {
    int r = 1;
    std::string provenance;  // "computed" | "hypothesized"
    BigradedTable table;     // indexed (i = p, j = t - p)
    std::map<std::pair<int, int>, PageEntry> entries;        // keyed (p, t)
    std::map<std::pair<int, int>, BitMatrix> dr;             // (p,t) -> block to (p-r, t-1)
    /* measured bidegree of d_r in (i, j) coordinates, when any entry is nonzero */
    std::optional<std::pair<int, int>> measured_bidegree;
};

/* E^1..E^{r_max}; internally asserts d_r o d_r = 0 and E^{r+1} = H(E^r, d_r) */
std::vector<Page> pages(const FilteredComplex& fc, int r_max);

/* rank bookkeeping pattern for a hypothesized differential */
struct DifferentialPattern {
    int r = 3;
    int di = -3, dj = 2;  // declared bidegree in (i, j) coordinates
    struct Entry {
        int src_i, src_j, tgt_i, tgt_j, rank;
    };
    std::vector<Entry> entries;
};

/* subtract pattern ranks from a table; throws on bidegree mismatch or
** infeasible rank */
BigradedTable apply_hypothesized(const BigradedTable& table, const DifferentialPattern& pat);

struct EInftyReport {
    bool pass = true;
    std::vector<std::string> lines;  // per total degree
};

EInftyReport e_infty_vs_target(const BigradedTable& final_page,
                               const std::map<int, int>& target_dims, int lo, int hi);

/* homology of an A-infinity module as a graded R-module, with the action of
** the designated V and Q cycles of the algebra */
GradedModule homology_module(const AInfModule& mod, const Chain& v_class, const Chain& q_class,
                             Precision p);

struct EmResult {
    std::vector<Page> pages_list;
    BigradedTable tor_table;
    bool e2_matches_tor = true;
    std::vector<std::string> mismatches;
};

/* Eilenberg-Moore run: pages of the box filtration, E^2 compared entrywise
** with tor(HM, HN) on certified entries. */
EmResult em_ss(const AInfModule& M, const AInfModule& N, const GradedModule& HM,
               const GradedModule& HN, int n_max, int r_max, int lo, int hi);

struct MasseyBridgeReport {
    bool applicable = false;  // all consecutive products vanish with witnesses
    bool matches = false;
    std::string detail;
};

/* compares the computed d_2 on the E^2 class of the bar word
** [x | r_1..r_n | y] with the triple-Massey-product formula */
MasseyBridgeReport massey_differential_check(const std::vector<Page>& pgs,
                                             const BoxTensorComplex& box,
                                             const BoxElement& word);

/* module-action check: the action of r on [x | r1 | y] as <r, x, r1> (x) y */
MasseyBridgeReport module_action_check(const std::vector<Page>& pgs,
                                       const BoxTensorComplex& box,
                                       const AInfModule& Mbimod, const Chain& r,
                                       const BoxElement& word);

}  // namespace pin2
