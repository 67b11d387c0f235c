#pragma once

#include <map>
#include <string>
#include <vector>

#include "pin2homalg/rmodule.hpp"

namespace pin2 {

/* Dimensions indexed by (homological degree i >= 0, internal degree j).
** Entries outside the certified window are kept but flagged. */
struct BigradedTable {
    std::map<std::pair<int, int>, int> entries;
    std::map<std::pair<int, int>, bool> certified;
    int jlo = 0, jhi = 0, imax = 0;
    std::string provenance;  // "bar" | "resolution" | "hypothesized" | ...

    int dim(int i, int j) const {
        auto it = entries.find({i, j});
        return it == entries.end() ? 0 : it->second;
    }
    bool is_certified(int i, int j) const {
        auto it = certified.find({i, j});
        return it == certified.end() ? false : it->second;
    }
    void set(int i, int j, int n, bool cert = true);
    /* per total degree t, the sum over i of dim(i, t - i) */
    std::map<int, int> totals() const;

    std::string render_grid() const;  // internal degree down, homological right
    std::string render_csv() const;
};

/* Free resolution ... <- P1 <- P0 -> N (augmentation).  Stage i carries its
** generator degrees; diffs[i] : P_{i+1} -> P_i; aug : P_0 -> N. */
struct FreeResolution {
    Precision prec;
    int window_lo = 0, window_hi = 0;
    std::vector<std::vector<int>> gen_degrees;          // per stage
    std::vector<std::vector<std::vector<RingElement>>> diff_entries;
    /* diff_entries[i][t][s] = ring entry of the map P_{i+1} -> P_i from source
    ** generator s to target generator t */
    GradedModule target;  // the resolved module
    GradedMap augmentation;
    bool complete = true;  // false if the window was exhausted early
    std::string note;

    GradedModule realize_stage(int i) const;      // free module within window
    GradedMap realize_diff(int i) const;          // P_{i+1} -> P_i (degree 0)
};

/* Free R-module on the given generator degrees, truncated to the window. */
GradedModule free_module_on(const std::vector<int>& gen_degrees, Precision p, int lo, int hi);

/* delta^2 = 0 at all stages, and exactness of the realized complex in the
** certified part of the window. */
ValidationReport validate(const FreeResolution& r);

/* The two-periodic resolution of M_2311 (Example-style maps, n_max stages). */
FreeResolution periodic_resolution_2311(int n_max, Precision p, int lo, int hi);

/* Minimal free resolution by iterated kernels; generators extracted from
** highest degree downward. */
FreeResolution free_resolution(const GradedModule& n, int length, int lo, int hi);

/* ---- bar complex ---- */

struct BarElement {
    int m_deg = 0, m_idx = 0;
    std::vector<Monomial> word;
    int n_deg = 0, n_idx = 0;
    int degree() const;
    bool operator<(const BarElement& o) const;
    bool operator==(const BarElement& o) const;
    std::string str(const GradedModule& M, const GradedModule& N) const;
};

using BarChain = std::vector<BarElement>;  // kept sorted, xor semantics

struct BarComplex {
    const GradedModule* M = nullptr;
    const GradedModule* N = nullptr;
    int n_max = 0;
    int lo = 0, hi = 0;
    /* stage -> (degree -> basis list) */
    std::vector<std::map<int, std::vector<BarElement>>> stages;

    int index_of(int stage, const BarElement& e) const;
    GradedVectorSpace stage_space(int n) const;
    GradedMap stage_differential(int n) const;  // stage n -> n-1, degree 0 on j
};

/* One differential application; M and N supply the end actions. */
BarChain bar_differential(const GradedModule& M, const GradedModule& N, const BarElement& e);

BarComplex bar_complex(const GradedModule& M, const GradedModule& N, int n_max, int lo, int hi);

/* ---- Tor ---- */

enum class TorMethod { bar, resolution };

struct TorParams {
    int n_max = 8;       // bar length / resolution length
    int lo = -20, hi = 0;
};

BigradedTable tor(const GradedModule& M, const GradedModule& N, TorMethod method,
                  const TorParams& params);

/* ---- the PID sanity check (Theorem-style, over F[[U]], deg U = -2) ---- */

/* Structure-theorem form: list of (base degree, length); length < 0 means a
** full tower F[[U]], otherwise F[U]/(U^length). */
struct UModule {
    std::vector<std::pair<int, int>> pieces;
    std::map<int, int> dims(int lo, int hi, int tower_cap) const;
};

UModule u_free(int shift);
UModule u_torsion(int shift, int len);

/* Extracts the tower decomposition of a Q-trivial GradedModule, reading the
** V-action as U of degree -2 (bases keep their degrees, steps become -2). */
UModule u_from_graded(const GradedModule& m);

struct PidConeReport {
    bool pass = true;
    std::map<int, int> cone_dims;   // graded dims of the cone
    std::map<int, int> tor_totals;  // Tor^{F[[U]]} totals, shifted by +1
    std::vector<std::string> mismatches;
};

/* Compares H(cone(1 (x) U + U (x) 1)) with the Tor totals shifted by <+1>
** on [lo, hi]; both sides computed independently. */
PidConeReport tor_pid_cone_check(const UModule& m, const UModule& n, int lo, int hi);
PidConeReport tor_pid_cone_check(const GradedModule& m, const GradedModule& n, int lo, int hi);

}  // namespace pin2
