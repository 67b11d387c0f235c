#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "pin2homalg/gf2.hpp"
#include "pin2homalg/ring.hpp"

namespace pin2 {

/* Exact rational, used for global grading offsets and correction terms. */
struct Rat {
    long long num = 0, den = 1;
    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(long long n, long long d) : num(n), den(d) { normalize(); }
    void normalize();
    Rat operator+(const Rat& o) const { return Rat(num * o.den + o.num * den, den * o.den); }
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    bool operator<=(const Rat& o) const { return num * o.den <= o.num * den; }
    bool operator>=(const Rat& o) const { return o <= *this; }
    std::string str() const;
};

/* Finite-window graded module over R_p: V acts with degree -4, Q with -1.
** Degrees are integers; `offset` records the rational grading origin. */
struct GradedModule {
    GradedVectorSpace space;
    Rat offset;
    GradedMap actV;  // shift -4
    GradedMap actQ;  // shift -1
    Precision prec;

    int dim(int d) const { return space.dim(d); }

    /* action by an arbitrary monomial, composed from the stored blocks */
    GradedMap act_monomial(const Monomial& m) const;
};

struct ValidationReport {
    bool pass = true;
    std::vector<std::string> failures;
    void fail(const std::string& s) {
        pass = false;
        failures.push_back(s);
    }
};

/* Checks actQ^3 = 0, actV actQ = actQ actV, actV^p = 0, and block shapes. */
ValidationReport validate(const GradedModule& m);

/* Grading shift: dims_out(d) = dims_in(d - k). */
GradedModule shift(const GradedModule& m, int k);

struct CorrectionTerms {
    Rat alpha, beta, gamma;
};

struct CatalogueEntry {
    std::string name;
    GradedModule module;
    std::optional<CorrectionTerms> annotations;
};

/* Named modules: trivial_F, free_R, M_2311, N_2311, HS_hat_Sigma2311,
** HSbar_ring.  Throws std::invalid_argument on unknown names. */
CatalogueEntry catalogue(const std::string& name, Precision p, int window_lo, int window_hi);

/* Convenience tower builder: tower t is F[V]/(V^p) based at bases[t];
** qpat entries (src, dst, vpow) mean Q.(src base) = V^vpow.(dst base),
** extended V-linearly. */
GradedModule tower_module(const std::vector<int>& bases,
                          const std::vector<std::array<int, 3>>& qpat, Precision p,
                          int window_lo, int window_hi,
                          const std::vector<std::string>& tower_names = {});

/* Tensor product over F; both R-actions are kept. */
struct TensorFModule {
    GradedVectorSpace space;
    GradedMap leftV, leftQ, rightV, rightQ;
    Precision prec;
    /* basis bookkeeping: per degree, the list of (d1, i1, i2) with i1 < dim1(d1),
    ** i2 < dim2(d - d1) */
    std::map<int, std::vector<std::array<int, 3>>> pairs;
};

TensorFModule tensor_over_F(const GradedModule& m1, const GradedModule& m2);

/* Coequalizer of the two actions over the augmentation-ideal generators V, Q;
** the induced single R-action is returned. */
GradedModule tensor_over_R(const GradedModule& m1, const GradedModule& m2);

/* Degreewise morphism commuting with both actions. */
struct ModuleMorphism {
    GradedModule source, target;
    GradedMap map;  // usually shift 0
};

ValidationReport validate(const ModuleMorphism& f);

/* The six correction-term inequalities for a connected sum. */
struct InequalityReport {
    bool pass = true;
    std::vector<std::pair<std::string, bool>> lines;
};

InequalityReport check_sum_inequalities(const CorrectionTerms& y0, const CorrectionTerms& y1,
                                        const CorrectionTerms& sum);

}  // namespace pin2
