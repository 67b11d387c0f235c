#pragma once

#include "pin2homalg/ainf.hpp"

namespace pin2 {

/* [x | a_1 | ... | a_n | y]; box degree = deg x + sum(deg a_i + 1) + deg y
** (the A[1] shift lives in the +1 per algebra slot). */
struct BoxElement {
    BasisRef x;
    std::vector<BasisRef> word;
    BasisRef y;
    int degree() const {
        int d = x.deg + y.deg;
        for (auto& a : word) d += a.deg + 1;
        return d;
    }
    bool operator<(const BoxElement& o) const;
    bool operator==(const BoxElement& o) const;
};

using BoxChain = std::vector<BoxElement>;  // sorted, xor semantics

struct BoxTensorComplex {
    const AInfModule* M = nullptr;  // right module (or bimodule; right part used)
    const AInfModule* N = nullptr;  // left module
    int n_max = 0;
    int lo = 0, hi = 0;
    std::vector<std::map<int, std::vector<BoxElement>>> stages;  // filtration -> deg -> basis

    BoxChain differential(const BoxElement& e) const;

    /* flattened view: per degree, stage-0 elements first, then stage 1, ... */
    GradedVectorSpace total_space() const;
    int flat_index(const BoxElement& e) const;
    const BoxElement& flat_element(int deg, int idx) const;
    GradedMap total_differential() const;

    GradedVectorSpace homology_dims_total() const;
    /* a total degree is certified when raising n_max by one cannot change it:
    ** every stage that could contribute at that degree is included */
    bool degree_certified(int t) const;
};

/* Requires the relation checkers to pass to order n_max on both inputs;
** throws invariant_error otherwise. */
BoxTensorComplex box_tensor(const AInfModule& M, const AInfModule& N, int n_max, int lo, int hi);

/* The left A-infinity module structure on M (x) N induced by a bimodule
** structure on M: m_1 is the box differential, higher actions absorb x and a
** prefix of the word through m_{n,l}. */
AInfModule left_module_on_box(const AInfModule& Mbimod, const AInfModule& N,
                              const BoxTensorComplex& box);

/* ---- mapping cones ---- */

struct MappingCone {
    AInfModule module;  // right module on target (+) source<1>
    GradedVectorSpace target_space, source_space;
    /* per cone degree d: indices [0, split(d)) are target, the rest source */
    std::map<int, int> split;

    GradedMap inclusion() const;   // target -> cone
    GradedMap projection() const;  // cone -> source<1>
    bool is_acyclic() const;
};

struct TriangleReport {
    bool exact = true;
    std::vector<std::string> failures;
};

/* Cone of an A-infinity morphism of right modules; checks d^2 = 0 and the
** module relations up to n_max. */
MappingCone mapping_cone(const AInfMorphism& f, int n_max);

/* exactness of H(target) -> H(cone) -> H(source<1>) -> H(target) */
TriangleReport cone_triangle_exact(const MappingCone& cone, const AInfMorphism& f);

/* Iterated cone of C1 -f1-> C2 -f2-> C3 with h a nullhomotopy of f2 o f1. */
MappingCone iterated_cone(const AInfMorphism& f1, const AInfMorphism& f2, const AInfHomotopy& h,
                          int n_max);

}  // namespace pin2
