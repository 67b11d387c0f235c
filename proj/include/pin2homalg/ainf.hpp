#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pin2homalg/gf2.hpp"
#include "pin2homalg/ring.hpp"
#include "pin2homalg/rmodule.hpp"

namespace pin2 {

/* A basis vector of a graded space: (degree, index within degree). */
struct BasisRef {
    int deg = 0, idx = 0;
    bool operator<(const BasisRef& o) const { return deg != o.deg ? deg < o.deg : idx < o.idx; }
    bool operator==(const BasisRef& o) const { return deg == o.deg && idx == o.idx; }
};

/* F2 chain: sorted list of basis vectors, xor semantics. */
using Chain = std::vector<BasisRef>;

Chain chain_add(const Chain& a, const Chain& b);
bool chain_is_zero(const Chain& c);
int chain_degree(const Chain& c);  // throws if inhomogeneous; -1 window? no: requires nonzero

std::string chain_str(const Chain& c, const GradedVectorSpace& space);

/* Sparse multilinear operation given on basis tuples. */
struct OpTable {
    std::map<std::vector<BasisRef>, Chain> entries;

    const Chain* find(const std::vector<BasisRef>& key) const {
        auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    }
    void add(const std::vector<BasisRef>& key, const Chain& out);
    bool empty() const { return entries.empty(); }
};

/* Evaluate a table multilinearly on chain arguments. */
Chain apply_table(const OpTable& t, const std::vector<Chain>& args);

struct CheckReport {
    bool pass = true;
    std::string message;     // first failure description
    int n = 0;               // relation index of the first failure
    std::vector<BasisRef> tuple;
};

/* ---- algebras ---- */

struct AInfAlgebra {
    GradedVectorSpace space;
    int i_max = 2;
    std::map<int, OpTable> mu;  // mu[i]: i inputs, degree i-2

    Chain apply_mu(int i, const std::vector<BasisRef>& args) const;
    Chain apply_mu_chains(int i, const std::vector<Chain>& args) const;
    GradedMap mu1_map() const;
    std::string label(const BasisRef& b) const;
};

/* degree homogeneity of every table entry */
ValidationReport validate(const AInfAlgebra& a);

/* Stasheff relations up to n_max on all basis tuples whose relation degree
** lies in [space.lo, space.hi]. */
CheckReport check_algebra_relations(const AInfAlgebra& a, int n_max);

/* ---- modules ---- */

enum class Side { right, left, bimodule };

struct AInfModule {
    Side side = Side::right;
    GradedVectorSpace space;
    std::shared_ptr<const AInfAlgebra> algebra;
    /* one-sided tables: key (x, a_1..a_{i-1}) for right, (a_1..a_{i-1}, x)
    ** for left; m[1] is the differential */
    std::map<int, OpTable> m;
    /* bimodule tables, natural order (b_1..b_{i-1}, x, a_1..a_{j-1}) */
    std::map<std::pair<int, int>, OpTable> mij;

    Chain apply_m(int i, const std::vector<BasisRef>& args) const;
    Chain apply_m_chains(int i, const std::vector<Chain>& args) const;
    Chain apply_mij(int i, int j, const std::vector<Chain>& args) const;
    GradedMap m1_map() const;

    /* right-module view of a bimodule: m_j = m_{1,j} */
    AInfModule right_restriction() const;
};

ValidationReport validate(const AInfModule& m);

CheckReport check_module_relations(const AInfModule& mod, int n_max);
CheckReport check_bimodule_relations(const AInfModule& mod, int n_max);

/* left <-> right by reversing argument order */
AInfModule opposite(const AInfModule& mod);

/* ---- morphisms and homotopies ---- */

struct AInfMorphism {
    /* between two modules of the same side over the same algebra */
    const AInfModule* source = nullptr;
    const AInfModule* target = nullptr;
    std::map<int, OpTable> f;  // f[i]: (x, a_1..a_{i-1}) -> target, degree i-1

    Chain apply_f(int i, const std::vector<Chain>& args) const;
};

struct AInfHomotopy {
    std::map<int, OpTable> h;  // h[i]: degree i
    Chain apply_h(int i, const std::vector<Chain>& args) const;
};

CheckReport check_morphism(const AInfMorphism& f, int n_max);
/* h a nullhomotopy of f + g (i.e. a homotopy between f and g) */
CheckReport check_homotopy(const AInfMorphism& f, const AInfMorphism& g, const AInfHomotopy& h,
                           int n_max);

AInfMorphism identity_morphism(const AInfModule& mod);
AInfMorphism compose(const AInfMorphism& g, const AInfMorphism& f);
AInfMorphism zero_morphism(const AInfModule& src, const AInfModule& tgt);

/* ---- homology ---- */

struct HomologyData {
    GradedVectorSpace H;
    std::map<int, BitMatrix> reps;        // columns: chosen cycle representatives
    std::map<int, BitMatrix> boundaries;  // columns: basis of boundaries
    const GradedVectorSpace* ambient = nullptr;

    /* coordinates of a cycle in H (throws if not a cycle of this degree) */
    std::vector<uint8_t> to_H(const Chain& cycle, int deg) const;
    Chain rep_chain(int deg, int k) const;  // k-th representative as a chain
};

HomologyData homology(const GradedMap& d1);  // d1: the degree -1 differential

/* H with the mu2-induced product, as a strict algebra */
AInfAlgebra homology_algebra(const AInfAlgebra& a);

/* ---- Massey products ---- */

struct MasseyResult {
    bool defined = false;
    std::string reason;              // when undefined: which product obstructs
    Chain obstruction;
    int degree = 0;                  // degree of the product
    Chain representative;
    std::vector<uint8_t> h_class;    // class of the representative in H
    BitMatrix indeterminacy;         // columns: subspace of H in that degree
    std::shared_ptr<HomologyData> homology;

    bool class_is_zero_mod_indeterminacy() const;
    bool same_coset(const MasseyResult& other) const;
};

MasseyResult massey3(const AInfAlgebra& a, const Chain& a1, const Chain& a2, const Chain& a3,
                     uint64_t seed = 0);

struct Massey4Result {
    bool defined = false;
    std::string reason;
    Chain obstruction;
    int degree = 0;
    bool enumerated = false;                     // set fully enumerated?
    std::set<std::vector<uint8_t>> classes;      // when enumerated
    std::vector<uint8_t> representative_class;   // always (when defined)
    std::vector<std::vector<uint8_t>> variation; // generators, when not enumerated

    bool contains(const std::vector<uint8_t>& h) const;
};

Massey4Result massey4(const AInfAlgebra& a, const Chain& a1, const Chain& a2, const Chain& a3,
                      const Chain& a4, uint64_t seed = 0, int enum_dim_cap = 16);

/* module-side triple product <x, a1, a2> for a right module */
MasseyResult massey3_module(const AInfModule& mod, const Chain& x, const Chain& a1,
                            const Chain& a2, uint64_t seed = 0);

/* ---- canned structures ---- */

/* R_p as a strict DGA (mu1 = 0, mu2 = ring multiplication). */
AInfAlgebra strict_model_R(Precision p, int lo, int hi);

/* The shipped candidate A-infinity structure on R_p: the strict model
** extended by the V-linear mu4 supported on eight Q-exponent patterns. */
AInfAlgebra candidate_ainf_R(Precision p, int lo, int hi);

/* chain of a ring monomial in the strict model's basis */
Chain monomial_chain(const AInfAlgebra& model, const Monomial& m);

/* a GradedModule (over R) as a strict module over strict_model_R */
AInfModule strict_module(std::shared_ptr<const AInfAlgebra> model, const GradedModule& m,
                         Side side);

/* flip one degree-consistent table output bit; returns a description */
std::string mutate_algebra(AInfAlgebra& a, uint64_t seed);
std::string mutate_module(AInfModule& m, uint64_t seed);

}  // namespace pin2
