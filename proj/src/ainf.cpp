#include "pin2homalg/ainf.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

namespace pin2 {

Chain chain_add(const Chain& a, const Chain& b) {
    Chain out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    return out;
}

bool chain_is_zero(const Chain& c) { return c.empty(); }

int chain_degree(const Chain& c) {
    if (c.empty()) throw std::invalid_argument("chain_degree: zero chain");
    int d = c[0].deg;
    for (auto& b : c)
        if (b.deg != d) throw invariant_error("chain_degree: inhomogeneous chain");
    return d;
}

std::string chain_str(const Chain& c, const GradedVectorSpace& space) {
    if (c.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) s += " + ";
        auto it = space.labels.find(c[i].deg);
        if (it != space.labels.end() && c[i].idx < (int)it->second.size())
            s += it->second[c[i].idx];
        else
            s += "e(" + std::to_string(c[i].deg) + "," + std::to_string(c[i].idx) + ")";
    }
    return s;
}

void OpTable::add(const std::vector<BasisRef>& key, const Chain& out) {
    Chain& c = entries[key];
    c = chain_add(c, out);
    if (c.empty()) entries.erase(key);
}

Chain apply_table(const OpTable& t, const std::vector<Chain>& args) {
    /* multilinear expansion over the cartesian product of the chains */
    Chain acc;
    std::vector<BasisRef> key(args.size());
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == args.size()) {
            if (const Chain* out = t.find(key)) acc = chain_add(acc, *out);
            return;
        }
        for (auto& b : args[i]) {
            key[i] = b;
            rec(i + 1);
        }
    };
    for (auto& a : args)
        if (a.empty()) return {};
    rec(0);
    return acc;
}

/* ---- algebra ---- */

Chain AInfAlgebra::apply_mu(int i, const std::vector<BasisRef>& args) const {
    auto it = mu.find(i);
    if (it == mu.end()) return {};
    const Chain* c = it->second.find(args);
    return c ? *c : Chain{};
}

Chain AInfAlgebra::apply_mu_chains(int i, const std::vector<Chain>& args) const {
    auto it = mu.find(i);
    if (it == mu.end()) return {};
    return apply_table(it->second, args);
}

GradedMap AInfAlgebra::mu1_map() const {
    GradedMap d = zero_map(space, space, -1);
    auto it = mu.find(1);
    if (it == mu.end()) return d;
    for (auto& [key, out] : it->second.entries)
        for (auto& b : out) d.block_mut(key[0].deg).set(b.idx, key[0].idx, true);
    return d;
}

std::string AInfAlgebra::label(const BasisRef& b) const { return chain_str({b}, space); }

namespace {

int key_degree(const std::vector<BasisRef>& key) {
    int d = 0;
    for (auto& b : key) d += b.deg;
    return d;
}

ValidationReport validate_tables(const GradedVectorSpace& space,
                                 const std::map<int, OpTable>& ops,
                                 int op_degree_offset,  // |op_i| = i + offset
                                 const std::string& who) {
    ValidationReport rep;
    for (auto& [i, tab] : ops)
        for (auto& [key, out] : tab.entries) {
            if ((int)key.size() != i) {
                rep.fail(who + std::to_string(i) + ": arity mismatch");
                continue;
            }
            if (out.empty()) continue;
            int want = key_degree(key) + i + op_degree_offset;
            for (auto& b : out) {
                if (b.deg != want)
                    rep.fail(who + std::to_string(i) + ": output degree " +
                             std::to_string(b.deg) + " != " + std::to_string(want));
                if (b.idx >= space.dim(b.deg))
                    rep.fail(who + std::to_string(i) + ": output index out of range at degree " +
                             std::to_string(b.deg));
            }
        }
    return rep;
}

/* enumerate basis tuples with a callback; prunes nothing (windows are small) */
void for_each_tuple(const GradedVectorSpace& space, int n,
                    const std::function<void(const std::vector<BasisRef>&)>& fn) {
    std::vector<BasisRef> tup(n);
    std::vector<std::pair<int, int>> basis;  // (deg, idx)
    for (auto& [d, nn] : space.dims)
        for (int i = 0; i < nn; ++i) basis.push_back({d, i});
    std::function<void(int)> rec = [&](int k) {
        if (k == n) {
            fn(tup);
            return;
        }
        for (auto& [d, i] : basis) {
            tup[k] = {d, i};
            rec(k + 1);
        }
    };
    rec(0);
}

}  // namespace

ValidationReport validate(const AInfAlgebra& a) {
    return validate_tables(a.space, a.mu, -2, "mu");
}

CheckReport check_algebra_relations(const AInfAlgebra& a, int n_max) {
    CheckReport rep;
    int lo = a.space.lo, hi = a.space.hi;
    for (int n = 1; n <= n_max && rep.pass; ++n) {
        for_each_tuple(a.space, n, [&](const std::vector<BasisRef>& tup) {
            if (!rep.pass) return;
            int out_deg = key_degree(tup) + n - 3;
            if (out_deg < lo || out_deg > hi) return;
            Chain acc;
            for (int j = 1; j <= n; ++j) {
                int i = n + 1 - j;
                if (a.mu.find(i) == a.mu.end() || a.mu.find(j) == a.mu.end()) continue;
                for (int l = 1; l <= i; ++l) {
                    /* mu_i(tup[0..l-2], mu_j(tup[l-1..l+j-2]), tup[l+j-1..]) */
                    std::vector<BasisRef> inner(tup.begin() + (l - 1), tup.begin() + (l - 1 + j));
                    Chain mid = a.apply_mu(j, inner);
                    if (mid.empty()) continue;
                    std::vector<Chain> outer;
                    for (int k = 0; k < l - 1; ++k) outer.push_back({tup[k]});
                    outer.push_back(mid);
                    for (int k = l - 1 + j; k < n; ++k) outer.push_back({tup[k]});
                    acc = chain_add(acc, a.apply_mu_chains(i, outer));
                }
            }
            if (!acc.empty()) {
                rep.pass = false;
                rep.n = n;
                rep.tuple = tup;
                rep.message = "relation n=" + std::to_string(n) + " fails on (" +
                              chain_str(tup, a.space) + "), value " + chain_str(acc, a.space);
            }
        });
    }
    return rep;
}

/* ---- modules ---- */

Chain AInfModule::apply_m(int i, const std::vector<BasisRef>& args) const {
    auto it = m.find(i);
    if (it == m.end()) return {};
    const Chain* c = it->second.find(args);
    return c ? *c : Chain{};
}

Chain AInfModule::apply_m_chains(int i, const std::vector<Chain>& args) const {
    auto it = m.find(i);
    if (it == m.end()) return {};
    return apply_table(it->second, args);
}

Chain AInfModule::apply_mij(int i, int j, const std::vector<Chain>& args) const {
    auto it = mij.find({i, j});
    if (it == mij.end()) return {};
    return apply_table(it->second, args);
}

GradedMap AInfModule::m1_map() const {
    GradedMap d = zero_map(space, space, -1);
    auto it = m.find(1);
    if (it == m.end() && side == Side::bimodule) {
        auto b = mij.find({1, 1});
        if (b == mij.end()) return d;
        for (auto& [key, out] : b->second.entries)
            for (auto& o : out) d.block_mut(key[0].deg).set(o.idx, key[0].idx, true);
        return d;
    }
    if (it == m.end()) return d;
    for (auto& [key, out] : it->second.entries)
        for (auto& o : out) d.block_mut(key[0].deg).set(o.idx, key[0].idx, true);
    return d;
}

AInfModule AInfModule::right_restriction() const {
    if (side != Side::bimodule)
        throw std::invalid_argument("right_restriction: not a bimodule");
    AInfModule r;
    r.side = Side::right;
    r.space = space;
    r.algebra = algebra;
    for (auto& [ij, tab] : mij)
        if (ij.first == 1) r.m[ij.second] = tab;
    return r;
}

ValidationReport validate(const AInfModule& mod) {
    ValidationReport rep;
    if (mod.side == Side::bimodule) {
        for (auto& [ij, tab] : mod.mij) {
            auto [i, j] = ij;
            for (auto& [key, out] : tab.entries) {
                if ((int)key.size() != i + j - 1) {
                    rep.fail("m_{i,j}: arity mismatch");
                    continue;
                }
                int want = key_degree(key) + i + j - 3;
                for (auto& b : out)
                    if (b.deg != want) rep.fail("m_{i,j}: output degree mismatch");
            }
        }
        return rep;
    }
    auto r = validate_tables(mod.space, mod.m, -2, "m");
    /* module tables live in the module space; algebra args in algebra space --
    ** only output degrees were checked above, which is what matters */
    return r;
}

namespace {

/* tuples (x, a_1..a_n): x over module space, a's over algebra space */
void for_each_module_tuple(const GradedVectorSpace& mspace, const GradedVectorSpace& aspace,
                           int n,
                           const std::function<void(const BasisRef&,
                                                    const std::vector<BasisRef>&)>& fn) {
    std::vector<std::pair<int, int>> mb, ab;
    for (auto& [d, nn] : mspace.dims)
        for (int i = 0; i < nn; ++i) mb.push_back({d, i});
    for (auto& [d, nn] : aspace.dims)
        for (int i = 0; i < nn; ++i) ab.push_back({d, i});
    std::vector<BasisRef> as(n);
    std::function<void(int, const BasisRef&)> rec = [&](int k, const BasisRef& x) {
        if (k == n) {
            fn(x, as);
            return;
        }
        for (auto& [d, i] : ab) {
            as[k] = {d, i};
            rec(k + 1, x);
        }
    };
    for (auto& [d, i] : mb) rec(0, {d, i});
}

}  // namespace

CheckReport check_module_relations(const AInfModule& mod_in, int n_max) {
    CheckReport rep;
    if (mod_in.side == Side::bimodule)
        throw std::invalid_argument("check_module_relations: use check_bimodule_relations");
    /* left modules are checked through their right-module reversal */
    const AInfModule* modp = &mod_in;
    AInfModule reversed;
    if (mod_in.side == Side::left) {
        reversed = opposite(mod_in);
        modp = &reversed;
    }
    const AInfModule& mod = *modp;
    const AInfAlgebra& A = *mod.algebra;
    int lo = mod.space.lo, hi = mod.space.hi;

    for (int n = 0; n <= n_max && rep.pass; ++n) {
        for_each_module_tuple(mod.space, A.space, n, [&](const BasisRef& x,
                                                         const std::vector<BasisRef>& as) {
            if (!rep.pass) return;
            int out_deg = x.deg + key_degree(as) + n - 2;
            if (out_deg < lo || out_deg > hi) return;
            Chain acc;
            /* sum 1: m_i(m_j(x, a_1..a_{j-1}), a_j..a_n), i + j = n + 2 */
            for (int j = 1; j <= n + 1; ++j) {
                int i = n + 2 - j;
                std::vector<BasisRef> inner;
                inner.push_back(x);
                for (int k = 0; k < j - 1; ++k) inner.push_back(as[k]);
                Chain mid = mod.apply_m(j, inner);
                if (mid.empty()) continue;
                std::vector<Chain> outer;
                outer.push_back(mid);
                for (int k = j - 1; k < n; ++k) outer.push_back({as[k]});
                acc = chain_add(acc, mod.apply_m_chains(i, outer));
            }
            /* sum 2: m_{n-j+2}(x, ..., mu_j(a_l..a_{l+j-1}), ...) */
            for (int j = 1; j <= n; ++j) {
                int i = n - j + 2;
                for (int l = 1; l + j - 1 <= n; ++l) {
                    std::vector<BasisRef> inner(as.begin() + (l - 1), as.begin() + (l - 1 + j));
                    Chain mid = A.apply_mu(j, inner);
                    if (mid.empty()) continue;
                    std::vector<Chain> args;
                    args.push_back({x});
                    for (int k = 0; k < l - 1; ++k) args.push_back({as[k]});
                    args.push_back(mid);
                    for (int k = l - 1 + j; k < n; ++k) args.push_back({as[k]});
                    acc = chain_add(acc, mod.apply_m_chains(i, args));
                }
            }
            if (!acc.empty()) {
                rep.pass = false;
                rep.n = n;
                rep.tuple.assign(1, x);
                rep.tuple.insert(rep.tuple.end(), as.begin(), as.end());
                rep.message = "module relation n=" + std::to_string(n) + " fails on x=" +
                              chain_str({x}, mod.space) + ", (" + chain_str(as, A.space) + ")";
            }
        });
    }
    return rep;
}

CheckReport check_bimodule_relations(const AInfModule& mod, int n_max) {
    CheckReport rep;
    if (mod.side != Side::bimodule)
        throw std::invalid_argument("check_bimodule_relations: not a bimodule");
    const AInfAlgebra& A = *mod.algebra;
    int lo = mod.space.lo, hi = mod.space.hi;

    std::vector<std::pair<int, int>> mb, ab;
    for (auto& [d, nn] : mod.space.dims)
        for (int i = 0; i < nn; ++i) mb.push_back({d, i});
    for (auto& [d, nn] : A.space.dims)
        for (int i = 0; i < nn; ++i) ab.push_back({d, i});

    for (int i = 1; i + 1 <= n_max + 1 && rep.pass; ++i)
        for (int j = 1; i + j <= n_max + 1 && rep.pass; ++j) {
            int nl = i - 1, nr = j - 1;
            /* enumerate (b_1..b_nl, x, a_1..a_nr) */
            std::vector<BasisRef> bs(nl), as(nr);
            std::function<void(int)> rec_a;
            std::function<void(int, const BasisRef&)> rec_b;
            BasisRef xcur;
            auto emit = [&]() {
                if (!rep.pass) return;
                int out_deg = xcur.deg + key_degree(bs) + key_degree(as) + i + j - 4;
                if (out_deg < lo || out_deg > hi) return;
                Chain acc;
                /* composition double sum */
                for (int l = 1; l <= i; ++l)
                    for (int k = 1; k <= j; ++k) {
                        std::vector<BasisRef> inner;
                        for (int t = i - l; t < nl; ++t) inner.push_back(bs[t]);
                        inner.push_back(xcur);
                        for (int t = 0; t < k - 1; ++t) inner.push_back(as[t]);
                        auto tab = mod.mij.find({l, k});
                        if (tab == mod.mij.end()) continue;
                        const Chain* mid = tab->second.find(inner);
                        if (!mid || mid->empty()) continue;
                        std::vector<Chain> outer;
                        for (int t = 0; t < i - l; ++t) outer.push_back({bs[t]});
                        outer.push_back(*mid);
                        for (int t = k - 1; t < nr; ++t) outer.push_back({as[t]});
                        acc = chain_add(acc, mod.apply_mij(i - l + 1, j - k + 1, outer));
                    }
                /* right-side mu contractions */
                for (int l = 1; l <= nr; ++l)
                    for (int k = 1; k + l - 1 <= nr; ++k) {
                        std::vector<BasisRef> inner(as.begin() + (k - 1),
                                                    as.begin() + (k - 1 + l));
                        Chain mid = A.apply_mu(l, inner);
                        if (mid.empty()) continue;
                        std::vector<Chain> args;
                        for (int t = 0; t < nl; ++t) args.push_back({bs[t]});
                        args.push_back({xcur});
                        for (int t = 0; t < k - 1; ++t) args.push_back({as[t]});
                        args.push_back(mid);
                        for (int t = k - 1 + l; t < nr; ++t) args.push_back({as[t]});
                        acc = chain_add(acc, mod.apply_mij(i, j - l + 1, args));
                    }
                /* left-side mu contractions */
                for (int l = 1; l <= nl; ++l)
                    for (int k = 1; k + l - 1 <= nl; ++k) {
                        std::vector<BasisRef> inner(bs.begin() + (k - 1),
                                                    bs.begin() + (k - 1 + l));
                        Chain mid = A.apply_mu(l, inner);
                        if (mid.empty()) continue;
                        std::vector<Chain> args;
                        for (int t = 0; t < k - 1; ++t) args.push_back({bs[t]});
                        args.push_back(mid);
                        for (int t = k - 1 + l; t < nl; ++t) args.push_back({bs[t]});
                        args.push_back({xcur});
                        for (int t = 0; t < nr; ++t) args.push_back({as[t]});
                        acc = chain_add(acc, mod.apply_mij(i - l + 1, j, args));
                    }
                if (!acc.empty()) {
                    rep.pass = false;
                    rep.n = i + j;
                    rep.message = "bimodule relation (i,j)=(" + std::to_string(i) + "," +
                                  std::to_string(j) + ") fails on x=" +
                                  chain_str({xcur}, mod.space);
                }
            };
            rec_a = [&](int k) {
                if (k == nr) {
                    emit();
                    return;
                }
                for (auto& [d, idx] : ab) {
                    as[k] = {d, idx};
                    rec_a(k + 1);
                }
            };
            rec_b = [&](int k, const BasisRef& x) {
                if (k == nl) {
                    xcur = x;
                    rec_a(0);
                    return;
                }
                for (auto& [d, idx] : ab) {
                    bs[k] = {d, idx};
                    rec_b(k + 1, x);
                }
            };
            for (auto& [d, idx] : mb) rec_b(0, {d, idx});
        }
    return rep;
}

AInfModule opposite(const AInfModule& mod) {
    if (mod.side == Side::bimodule)
        throw std::invalid_argument("opposite: defined for one-sided modules");
    AInfModule out;
    out.side = mod.side == Side::right ? Side::left : Side::right;
    out.space = mod.space;
    out.algebra = mod.algebra;
    for (auto& [i, tab] : mod.m) {
        OpTable rt;
        for (auto& [key, ch] : tab.entries) {
            std::vector<BasisRef> rk(key.rbegin(), key.rend());
            rt.entries[rk] = ch;
        }
        out.m[i] = rt;
    }
    return out;
}

/* ---- morphisms ---- */

Chain AInfMorphism::apply_f(int i, const std::vector<Chain>& args) const {
    auto it = f.find(i);
    if (it == f.end()) return {};
    return apply_table(it->second, args);
}

Chain AInfHomotopy::apply_h(int i, const std::vector<Chain>& args) const {
    auto it = h.find(i);
    if (it == h.end()) return {};
    return apply_table(it->second, args);
}

CheckReport check_morphism(const AInfMorphism& f, int n_max) {
    CheckReport rep;
    const AInfModule& M = *f.source;
    const AInfModule& Mp = *f.target;
    const AInfAlgebra& A = *M.algebra;
    int lo = std::min(M.space.lo, Mp.space.lo), hi = std::max(M.space.hi, Mp.space.hi);
    for (int n = 1; n <= n_max && rep.pass; ++n) {
        for_each_module_tuple(M.space, A.space, n - 1, [&](const BasisRef& x,
                                                           const std::vector<BasisRef>& as) {
            if (!rep.pass) return;
            int out_deg = x.deg + key_degree(as) + n - 2;
            if (out_deg < lo || out_deg > hi) return;
            Chain acc;
            for (int j = 1; j <= n; ++j) {
                int i = n + 1 - j;
                /* m'_i(f_j(x, a_1..a_{j-1}), ...) */
                std::vector<Chain> inner;
                inner.push_back({x});
                for (int k = 0; k < j - 1; ++k) inner.push_back({as[k]});
                Chain fx = f.apply_f(j, inner);
                if (!fx.empty()) {
                    std::vector<Chain> outer;
                    outer.push_back(fx);
                    for (int k = j - 1; k < n - 1; ++k) outer.push_back({as[k]});
                    acc = chain_add(acc, Mp.apply_m_chains(i, outer));
                }
                /* f_i(m_j(x, ...), ...) */
                std::vector<BasisRef> minner;
                minner.push_back(x);
                for (int k = 0; k < j - 1; ++k) minner.push_back(as[k]);
                Chain mx = M.apply_m(j, minner);
                if (!mx.empty()) {
                    std::vector<Chain> outer;
                    outer.push_back(mx);
                    for (int k = j - 1; k < n - 1; ++k) outer.push_back({as[k]});
                    acc = chain_add(acc, f.apply_f(i, outer));
                }
            }
            /* f_{n-j+1}(x, ..., mu_j(...), ...) */
            for (int j = 1; j <= n - 1; ++j) {
                int i = n - j + 1;
                for (int l = 1; l + j - 1 <= n - 1; ++l) {
                    std::vector<BasisRef> inner(as.begin() + (l - 1), as.begin() + (l - 1 + j));
                    Chain mid = A.apply_mu(j, inner);
                    if (mid.empty()) continue;
                    std::vector<Chain> args;
                    args.push_back({x});
                    for (int k = 0; k < l - 1; ++k) args.push_back({as[k]});
                    args.push_back(mid);
                    for (int k = l - 1 + j; k < n - 1; ++k) args.push_back({as[k]});
                    acc = chain_add(acc, f.apply_f(i, args));
                }
            }
            if (!acc.empty()) {
                rep.pass = false;
                rep.n = n;
                rep.message = "morphism relation n=" + std::to_string(n) + " fails on x=" +
                              chain_str({x}, M.space) + ", (" + chain_str(as, A.space) + ")";
            }
        });
    }
    return rep;
}

CheckReport check_homotopy(const AInfMorphism& f, const AInfMorphism& g, const AInfHomotopy& h,
                           int n_max) {
    CheckReport rep;
    const AInfModule& M = *f.source;
    const AInfModule& Mp = *f.target;
    const AInfAlgebra& A = *M.algebra;
    for (int n = 1; n <= n_max && rep.pass; ++n) {
        for_each_module_tuple(M.space, A.space, n - 1, [&](const BasisRef& x,
                                                           const std::vector<BasisRef>& as) {
            if (!rep.pass) return;
            /* (f+g)_n(x, as) must equal the three homotopy sums */
            std::vector<Chain> full;
            full.push_back({x});
            for (auto& a : as) full.push_back({a});
            Chain lhs = chain_add(f.apply_f(n, full), g.apply_f(n, full));
            Chain rhs;
            for (int j = 1; j <= n; ++j) {
                int i = n + 1 - j;
                /* h_i(m_j(x,...), ...) */
                std::vector<BasisRef> minner;
                minner.push_back(x);
                for (int k = 0; k < j - 1; ++k) minner.push_back(as[k]);
                Chain mx = M.apply_m(j, minner);
                if (!mx.empty()) {
                    std::vector<Chain> outer;
                    outer.push_back(mx);
                    for (int k = j - 1; k < n - 1; ++k) outer.push_back({as[k]});
                    rhs = chain_add(rhs, h.apply_h(i, outer));
                }
                /* m'_i(h_j(x,...), ...) */
                std::vector<Chain> hinner;
                hinner.push_back({x});
                for (int k = 0; k < j - 1; ++k) hinner.push_back({as[k]});
                Chain hx = h.apply_h(j, hinner);
                if (!hx.empty()) {
                    std::vector<Chain> outer;
                    outer.push_back(hx);
                    for (int k = j - 1; k < n - 1; ++k) outer.push_back({as[k]});
                    rhs = chain_add(rhs, Mp.apply_m_chains(i, outer));
                }
            }
            for (int j = 1; j <= n - 1; ++j) {
                int i = n - j + 1;
                for (int l = 1; l + j - 1 <= n - 1; ++l) {
                    std::vector<BasisRef> inner(as.begin() + (l - 1), as.begin() + (l - 1 + j));
                    Chain mid = A.apply_mu(j, inner);
                    if (mid.empty()) continue;
                    std::vector<Chain> args;
                    args.push_back({x});
                    for (int k = 0; k < l - 1; ++k) args.push_back({as[k]});
                    args.push_back(mid);
                    for (int k = l - 1 + j; k < n - 1; ++k) args.push_back({as[k]});
                    rhs = chain_add(rhs, h.apply_h(i, args));
                }
            }
            Chain diff = chain_add(lhs, rhs);
            if (!diff.empty()) {
                rep.pass = false;
                rep.n = n;
                rep.message = "homotopy relation n=" + std::to_string(n) + " fails on x=" +
                              chain_str({x}, M.space);
            }
        });
    }
    return rep;
}

AInfMorphism identity_morphism(const AInfModule& mod) {
    AInfMorphism f;
    f.source = &mod;
    f.target = &mod;
    OpTable t;
    for (auto& [d, n] : mod.space.dims)
        for (int i = 0; i < n; ++i) t.entries[{BasisRef{d, i}}] = {BasisRef{d, i}};
    f.f[1] = t;
    return f;
}

AInfMorphism zero_morphism(const AInfModule& src, const AInfModule& tgt) {
    AInfMorphism f;
    f.source = &src;
    f.target = &tgt;
    return f;
}

AInfMorphism compose(const AInfMorphism& g, const AInfMorphism& f) {
    AInfMorphism out;
    out.source = f.source;
    out.target = g.target;
    /* (g o f)_n(x, a_1..a_{n-1}) = sum_{i+j=n+1} g_j(f_i(x, a_1..a_{i-1}), a_i..a_{n-1}) */
    int nmax = 0;
    for (auto& [i, t] : f.f) nmax = std::max(nmax, i);
    for (auto& [i, t] : g.f) nmax = std::max(nmax, i);
    nmax = 2 * nmax;
    const AInfModule& M = *f.source;
    const AInfAlgebra& A = *M.algebra;
    for (int n = 1; n <= nmax; ++n) {
        OpTable t;
        for_each_module_tuple(M.space, A.space, n - 1, [&](const BasisRef& x,
                                                           const std::vector<BasisRef>& as) {
            Chain acc;
            for (int i = 1; i <= n; ++i) {
                int j = n + 1 - i;
                std::vector<Chain> inner;
                inner.push_back({x});
                for (int k = 0; k < i - 1; ++k) inner.push_back({as[k]});
                Chain fx = f.apply_f(i, inner);
                if (fx.empty()) continue;
                std::vector<Chain> outer;
                outer.push_back(fx);
                for (int k = i - 1; k < n - 1; ++k) outer.push_back({as[k]});
                acc = chain_add(acc, g.apply_f(j, outer));
            }
            if (!acc.empty()) {
                std::vector<BasisRef> key;
                key.push_back(x);
                key.insert(key.end(), as.begin(), as.end());
                t.entries[key] = acc;
            }
        });
        if (!t.empty()) out.f[n] = t;
    }
    return out;
}

/* ---- homology ---- */

HomologyData homology(const GradedMap& d1) {
    HomologyData h;
    h.ambient = nullptr;
    h.H.lo = d1.source.lo;
    h.H.hi = d1.source.hi;
    for (auto& [d, n] : d1.source.dims) {
        BitMatrix Z = kernel_basis(d1.block(d));
        BitMatrix B = image_basis(d1.block(d + 1));
        h.boundaries[d] = B;
        BitMatrix reps(n, 0);
        BitMatrix cur = B;
        for (int c = 0; c < Z.cols(); ++c) {
            BitMatrix zc = Z.column(c);
            if (rank_increase(cur, zc) == 1) {
                cur = cur.hconcat(zc);
                reps = reps.hconcat(zc);
            }
        }
        if (reps.cols()) h.H.dims[d] = reps.cols();
        h.reps[d] = reps;
    }
    return h;
}

std::vector<uint8_t> HomologyData::to_H(const Chain& cycle, int deg) const {
    auto rit = reps.find(deg);
    int hdim = H.dim(deg);
    std::vector<uint8_t> out(hdim, 0);
    if (cycle.empty()) return out;
    if (chain_degree(cycle) != deg) throw invariant_error("to_H: degree mismatch");
    auto bit = boundaries.find(deg);
    const BitMatrix& B = bit->second;
    const BitMatrix& Rp = rit->second;
    BitMatrix sys = B.hconcat(Rp);
    std::vector<uint8_t> rhs(B.rows(), 0);
    for (auto& b : cycle) rhs[b.idx] ^= 1;
    auto x = solve(sys, rhs);
    if (!x) throw invariant_error("to_H: not a cycle at degree " + std::to_string(deg));
    for (int k = 0; k < hdim; ++k) out[k] = (*x)[B.cols() + k];
    return out;
}

Chain HomologyData::rep_chain(int deg, int k) const {
    Chain c;
    const BitMatrix& R = reps.at(deg);
    for (int r = 0; r < R.rows(); ++r)
        if (R.get(r, k)) c.push_back({deg, r});
    return c;
}

AInfAlgebra homology_algebra(const AInfAlgebra& a) {
    HomologyData h = homology(a.mu1_map());
    AInfAlgebra out;
    out.space = h.H;
    out.i_max = 2;
    OpTable mu2;
    for (auto& [d1, n1] : h.H.dims)
        for (auto& [d2, n2] : h.H.dims)
            for (int i = 0; i < n1; ++i)
                for (int j = 0; j < n2; ++j) {
                    Chain prod = a.apply_mu_chains(2, {h.rep_chain(d1, i), h.rep_chain(d2, j)});
                    if (prod.empty()) continue;
                    auto cls = h.to_H(prod, d1 + d2);
                    Chain out_chain;
                    for (int k = 0; k < (int)cls.size(); ++k)
                        if (cls[k]) out_chain.push_back({d1 + d2, k});
                    if (!out_chain.empty())
                        mu2.entries[{BasisRef{d1, i}, BasisRef{d2, j}}] = out_chain;
                }
    out.mu[2] = mu2;
    return out;
}

/* ---- Massey products ---- */

namespace {

/* solve mu1 s = v for a witness of degree dv + 1; with a nonzero seed the
** solution is perturbed within its affine solution space */
std::optional<Chain> solve_boundary(const GradedMap& d1, const Chain& v, int dv, uint64_t seed) {
    if (v.empty()) {
        Chain out;
        if (seed != 0) {
            /* any cycle of degree dv+1 is a valid witness */
            BitMatrix k = kernel_basis(d1.block(dv + 1));
            std::mt19937_64 rng(seed);
            for (int c = 0; c < k.cols(); ++c)
                if (rng() & 1) {
                    Chain col;
                    for (int r = 0; r < k.rows(); ++r)
                        if (k.get(r, c)) col.push_back({dv + 1, r});
                    out = chain_add(out, col);
                }
        }
        return out;
    }
    const BitMatrix& blk = d1.block(dv + 1);
    std::vector<uint8_t> rhs(blk.rows(), 0);
    for (auto& b : v) rhs[b.idx] ^= 1;
    auto x = solve(blk, rhs, seed);
    if (!x) return std::nullopt;
    Chain out;
    for (int i = 0; i < (int)x->size(); ++i)
        if ((*x)[i]) out.push_back({dv + 1, i});
    return out;
}

BitMatrix columns_from_classes(const std::vector<std::vector<uint8_t>>& cols, int rows) {
    BitMatrix m(rows, (int)cols.size());
    for (int c = 0; c < (int)cols.size(); ++c)
        for (int r = 0; r < rows && r < (int)cols[c].size(); ++r)
            if (cols[c][r]) m.set(r, c, true);
    return m;
}

}  // namespace

bool MasseyResult::class_is_zero_mod_indeterminacy() const {
    if (!defined) return false;
    BitMatrix v = columns_from_classes({h_class}, indeterminacy.rows());
    return rank_increase(indeterminacy, v) == 0;
}

bool MasseyResult::same_coset(const MasseyResult& other) const {
    if (!defined || !other.defined) return false;
    if (degree != other.degree) return false;
    std::vector<uint8_t> diff = h_class;
    for (size_t i = 0; i < diff.size() && i < other.h_class.size(); ++i)
        diff[i] ^= other.h_class[i];
    BitMatrix v = columns_from_classes({diff}, indeterminacy.rows());
    return rank_increase(indeterminacy, v) == 0;
}

MasseyResult massey3(const AInfAlgebra& a, const Chain& a1, const Chain& a2, const Chain& a3,
                     uint64_t seed) {
    auto hptr = std::make_shared<HomologyData>(homology(a.mu1_map()));
    HomologyData& h = *hptr;
    GradedMap d1 = a.mu1_map();

    MasseyResult r;
    r.homology = hptr;
    for (const Chain* c : {&a1, &a2, &a3})
        if (!apply_table(a.mu.count(1) ? a.mu.at(1) : OpTable{}, {*c}).empty()) {
            r.reason = "input is not a cycle";
            return r;
        }
    Chain v12 = a.apply_mu_chains(2, {a1, a2});
    auto s1 = solve_boundary(d1, v12, chain_degree(a1) + chain_degree(a2), seed);
    if (!s1) {
        r.reason = "[a1][a2] != 0";
        r.obstruction = v12;
        return r;
    }
    Chain v23 = a.apply_mu_chains(2, {a2, a3});
    auto s2 = solve_boundary(d1, v23, chain_degree(a2) + chain_degree(a3),
                             seed ? seed + 1 : 0);
    if (!s2) {
        r.reason = "[a2][a3] != 0";
        r.obstruction = v23;
        return r;
    }
    Chain rep = a.apply_mu_chains(3, {a1, a2, a3});
    rep = chain_add(rep, a.apply_mu_chains(2, {*s1, a3}));
    rep = chain_add(rep, a.apply_mu_chains(2, {a1, *s2}));
    int deg = chain_degree(a1) + chain_degree(a2) + chain_degree(a3) + 1;
    r.defined = true;
    r.degree = deg;
    r.representative = rep;
    r.h_class = rep.empty() ? std::vector<uint8_t>(h.H.dim(deg), 0) : h.to_H(rep, deg);

    /* indeterminacy: [a1] H_{d2+d3+1} + H_{d1+d2+1} [a3] */
    std::vector<std::vector<uint8_t>> gens;
    int dz1 = chain_degree(a2) + chain_degree(a3) + 1;
    for (int k = 0; k < h.H.dim(dz1); ++k) {
        Chain prod = a.apply_mu_chains(2, {a1, h.rep_chain(dz1, k)});
        if (!prod.empty()) gens.push_back(h.to_H(prod, deg));
    }
    int dz2 = chain_degree(a1) + chain_degree(a2) + 1;
    for (int k = 0; k < h.H.dim(dz2); ++k) {
        Chain prod = a.apply_mu_chains(2, {h.rep_chain(dz2, k), a3});
        if (!prod.empty()) gens.push_back(h.to_H(prod, deg));
    }
    r.indeterminacy = image_basis(columns_from_classes(gens, h.H.dim(deg)));
    return r;
}

bool Massey4Result::contains(const std::vector<uint8_t>& h) const {
    if (!defined) return false;
    if (enumerated) return classes.count(h) > 0;
    /* representative + variation span check */
    std::vector<uint8_t> diff = representative_class;
    for (size_t i = 0; i < diff.size() && i < h.size(); ++i) diff[i] ^= h[i];
    BitMatrix var = columns_from_classes(variation, (int)representative_class.size());
    BitMatrix v = columns_from_classes({diff}, (int)representative_class.size());
    return rank_increase(var, v) == 0;
}

Massey4Result massey4(const AInfAlgebra& a, const Chain& a1, const Chain& a2, const Chain& a3,
                      const Chain& a4, uint64_t seed, int enum_dim_cap) {
    Massey4Result r;
    GradedMap d1 = a.mu1_map();
    HomologyData h = homology(d1);
    int deg = chain_degree(a1) + chain_degree(a2) + chain_degree(a3) + chain_degree(a4) + 2;
    r.degree = deg;

    auto kernel_chains = [&](int d) {
        std::vector<Chain> out;
        BitMatrix k = kernel_basis(d1.block(d));
        for (int c = 0; c < k.cols(); ++c) {
            Chain ch;
            for (int row = 0; row < k.rows(); ++row)
                if (k.get(row, c)) ch.push_back({d, row});
            out.push_back(ch);
        }
        return out;
    };

    Chain v12 = a.apply_mu_chains(2, {a1, a2});
    Chain v23 = a.apply_mu_chains(2, {a2, a3});
    Chain v34 = a.apply_mu_chains(2, {a3, a4});
    auto s1p = solve_boundary(d1, v12, chain_degree(a1) + chain_degree(a2), seed);
    auto s2p = solve_boundary(d1, v23, chain_degree(a2) + chain_degree(a3),
                              seed ? seed + 1 : 0);
    auto s3p = solve_boundary(d1, v34, chain_degree(a3) + chain_degree(a4),
                              seed ? seed + 2 : 0);
    if (!s1p || !s2p || !s3p) {
        r.reason = "a consecutive product is nonzero in homology";
        r.obstruction = !s1p ? v12 : (!s2p ? v23 : v34);
        return r;
    }
    int ds1 = chain_degree(a1) + chain_degree(a2) + 1;
    int ds2 = chain_degree(a2) + chain_degree(a3) + 1;
    int ds3 = chain_degree(a3) + chain_degree(a4) + 1;
    auto k1 = kernel_chains(ds1), k2 = kernel_chains(ds2), k3 = kernel_chains(ds3);

    auto triple_left = [&](const Chain& s1, const Chain& s2) {
        Chain t = a.apply_mu_chains(3, {a1, a2, a3});
        t = chain_add(t, a.apply_mu_chains(2, {s1, a3}));
        t = chain_add(t, a.apply_mu_chains(2, {a1, s2}));
        return t;
    };
    auto triple_right = [&](const Chain& s2, const Chain& s3) {
        Chain t = a.apply_mu_chains(3, {a2, a3, a4});
        t = chain_add(t, a.apply_mu_chains(2, {s2, a4}));
        t = chain_add(t, a.apply_mu_chains(2, {a2, s3}));
        return t;
    };
    auto full_rep = [&](const Chain& s1, const Chain& s2, const Chain& s3, const Chain& t1,
                        const Chain& t2) {
        Chain c = a.apply_mu_chains(4, {a1, a2, a3, a4});
        c = chain_add(c, a.apply_mu_chains(3, {s1, a3, a4}));
        c = chain_add(c, a.apply_mu_chains(3, {a1, s2, a4}));
        c = chain_add(c, a.apply_mu_chains(3, {a1, a2, s3}));
        c = chain_add(c, a.apply_mu_chains(2, {t1, a4}));
        c = chain_add(c, a.apply_mu_chains(2, {a1, t2}));
        c = chain_add(c, a.apply_mu_chains(2, {s1, s3}));
        return c;
    };

    int dt1 = chain_degree(a1) + chain_degree(a2) + chain_degree(a3) + 2;
    int dt2 = chain_degree(a2) + chain_degree(a3) + chain_degree(a4) + 2;
    auto kt1 = kernel_chains(dt1), kt2 = kernel_chains(dt2);

    long long dim = (long long)k1.size() + k2.size() + k3.size() + kt1.size() + kt2.size();
    bool enumerate = dim <= enum_dim_cap;

    bool found_any = false;
    auto consider = [&](const Chain& s1, const Chain& s2, const Chain& s3) {
        auto t1p = solve_boundary(d1, triple_left(s1, s2), dt1 - 1, seed ? seed + 3 : 0);
        auto t2p = solve_boundary(d1, triple_right(s2, s3), dt2 - 1, seed ? seed + 4 : 0);
        if (!t1p || !t2p) return;
        if (!found_any) {
            Chain rep = full_rep(s1, s2, s3, *t1p, *t2p);
            r.representative_class =
                rep.empty() ? std::vector<uint8_t>(h.H.dim(deg), 0) : h.to_H(rep, deg);
            found_any = true;
        }
        if (!enumerate) return;
        /* subset enumeration over kt1 x kt2 */
        int n1 = (int)kt1.size(), n2 = (int)kt2.size();
        for (long long m1 = 0; m1 < (1LL << n1); ++m1)
            for (long long m2 = 0; m2 < (1LL << n2); ++m2) {
                Chain t1 = *t1p, t2 = *t2p;
                for (int b = 0; b < n1; ++b)
                    if (m1 >> b & 1) t1 = chain_add(t1, kt1[b]);
                for (int b = 0; b < n2; ++b)
                    if (m2 >> b & 1) t2 = chain_add(t2, kt2[b]);
                Chain rep = full_rep(s1, s2, s3, t1, t2);
                auto cls =
                    rep.empty() ? std::vector<uint8_t>(h.H.dim(deg), 0) : h.to_H(rep, deg);
                r.classes.insert(cls);
            }
    };

    if (enumerate) {
        int n1 = (int)k1.size(), n2 = (int)k2.size(), n3 = (int)k3.size();
        for (long long m1 = 0; m1 < (1LL << n1); ++m1)
            for (long long m2 = 0; m2 < (1LL << n2); ++m2)
                for (long long m3 = 0; m3 < (1LL << n3); ++m3) {
                    Chain s1 = *s1p, s2 = *s2p, s3 = *s3p;
                    for (int b = 0; b < n1; ++b)
                        if (m1 >> b & 1) s1 = chain_add(s1, k1[b]);
                    for (int b = 0; b < n2; ++b)
                        if (m2 >> b & 1) s2 = chain_add(s2, k2[b]);
                    for (int b = 0; b < n3; ++b)
                        if (m3 >> b & 1) s3 = chain_add(s3, k3[b]);
                    consider(s1, s2, s3);
                }
        r.enumerated = true;
    } else {
        consider(*s1p, *s2p, *s3p);
        /* variation generators: single-witness deltas */
        auto base_cls = r.representative_class;
        auto push_var = [&](const Chain& s1, const Chain& s2, const Chain& s3) {
            auto t1p = solve_boundary(d1, triple_left(s1, s2), dt1 - 1, 0);
            auto t2p = solve_boundary(d1, triple_right(s2, s3), dt2 - 1, 0);
            if (!t1p || !t2p) return;
            Chain rep = full_rep(s1, s2, s3, *t1p, *t2p);
            auto cls = rep.empty() ? std::vector<uint8_t>(h.H.dim(deg), 0) : h.to_H(rep, deg);
            for (size_t i = 0; i < cls.size(); ++i) cls[i] ^= base_cls[i];
            bool nz = false;
            for (auto b : cls) nz |= b;
            if (nz) r.variation.push_back(cls);
        };
        for (auto& z : k1) push_var(chain_add(*s1p, z), *s2p, *s3p);
        for (auto& z : k2) push_var(*s1p, chain_add(*s2p, z), *s3p);
        for (auto& z : k3) push_var(*s1p, *s2p, chain_add(*s3p, z));
        /* t-variations shift the class by [z * a4] and [a1 * z] */
        for (auto& z : kt1) {
            Chain d = a.apply_mu_chains(2, {z, a4});
            if (!d.empty()) r.variation.push_back(h.to_H(d, deg));
        }
        for (auto& z : kt2) {
            Chain d = a.apply_mu_chains(2, {a1, z});
            if (!d.empty()) r.variation.push_back(h.to_H(d, deg));
        }
    }
    if (!found_any) {
        r.reason = "no defining system: a triple product obstructs";
        return r;
    }
    r.defined = true;
    return r;
}

MasseyResult massey3_module(const AInfModule& mod, const Chain& x, const Chain& a1,
                            const Chain& a2, uint64_t seed) {
    const AInfAlgebra& A = *mod.algebra;
    GradedMap dM = mod.m1_map();
    GradedMap dA = A.mu1_map();
    auto hptr = std::make_shared<HomologyData>(homology(dM));
    HomologyData& h = *hptr;
    HomologyData hA = homology(dA);

    MasseyResult r;
    r.homology = hptr;
    Chain vx1 = mod.apply_m_chains(2, {x, a1});
    auto s1 = solve_boundary(dM, vx1, chain_degree(x) + chain_degree(a1), seed);
    if (!s1) {
        r.reason = "[x][a1] != 0";
        r.obstruction = vx1;
        return r;
    }
    Chain v12 = A.apply_mu_chains(2, {a1, a2});
    auto s2 = solve_boundary(dA, v12, chain_degree(a1) + chain_degree(a2),
                             seed ? seed + 1 : 0);
    if (!s2) {
        r.reason = "[a1][a2] != 0";
        r.obstruction = v12;
        return r;
    }
    Chain rep = mod.apply_m_chains(3, {x, a1, a2});
    rep = chain_add(rep, mod.apply_m_chains(2, {*s1, a2}));
    rep = chain_add(rep, mod.apply_m_chains(2, {x, *s2}));
    int deg = chain_degree(x) + chain_degree(a1) + chain_degree(a2) + 1;
    r.defined = true;
    r.degree = deg;
    r.representative = rep;
    r.h_class = rep.empty() ? std::vector<uint8_t>(h.H.dim(deg), 0) : h.to_H(rep, deg);

    std::vector<std::vector<uint8_t>> gens;
    int dz1 = chain_degree(a1) + chain_degree(a2) + 1;
    for (int k = 0; k < hA.H.dim(dz1); ++k) {
        Chain prod = mod.apply_m_chains(2, {x, hA.rep_chain(dz1, k)});
        if (!prod.empty()) gens.push_back(h.to_H(prod, deg));
    }
    int dz2 = chain_degree(x) + chain_degree(a1) + 1;
    for (int k = 0; k < h.H.dim(dz2); ++k) {
        Chain prod = mod.apply_m_chains(2, {h.rep_chain(dz2, k), a2});
        if (!prod.empty()) gens.push_back(h.to_H(prod, deg));
    }
    r.indeterminacy = image_basis(columns_from_classes(gens, h.H.dim(deg)));
    return r;
}

/* ---- canned structures ---- */

AInfAlgebra strict_model_R(Precision p, int lo, int hi) {
    AInfAlgebra a;
    a.space.lo = lo;
    a.space.hi = hi;
    std::map<int, Monomial> mon_at;  // degree -> monomial (unique)
    for (int d = hi; d >= lo; --d) {
        auto b = basis_in_degree(d, p);
        if (!b.empty()) {
            a.space.dims[d] = 1;
            a.space.labels[d].push_back(b[0].str());
            mon_at[d] = b[0];
        }
    }
    OpTable mu2;
    for (auto& [d1, m1] : mon_at)
        for (auto& [d2, m2] : mon_at) {
            auto pr = mul_monomial(m1, m2, p);
            if (!pr) continue;
            int dd = d1 + d2;
            if (dd < lo || !a.space.dim(dd)) continue;
            mu2.entries[{BasisRef{d1, 0}, BasisRef{d2, 0}}] = {BasisRef{dd, 0}};
        }
    a.mu[2] = mu2;
    a.i_max = 2;
    return a;
}

AInfAlgebra candidate_ainf_R(Precision p, int lo, int hi) {
    AInfAlgebra a = strict_model_R(p, lo, hi);
    a.i_max = 4;
    static const int pats[8][4] = {{1, 1, 2, 2}, {1, 2, 1, 2}, {1, 2, 2, 1}, {2, 1, 2, 1},
                                   {2, 1, 2, 2}, {2, 2, 1, 1}, {2, 2, 1, 2}, {2, 2, 2, 2}};
    OpTable mu4;
    /* V-linear: mu4(Q^{t1}V^{a1},...,Q^{t4}V^{a4}) = V^{1+sum a} Q^{sum t - 6} */
    for (auto& pat : pats) {
        int qsum = pat[0] + pat[1] + pat[2] + pat[3];
        for (int a1 = 0; a1 < p.p; ++a1)
            for (int a2 = 0; a2 < p.p; ++a2)
                for (int a3 = 0; a3 < p.p; ++a3)
                    for (int a4 = 0; a4 < p.p; ++a4) {
                        int vout = 1 + a1 + a2 + a3 + a4;
                        int qout = qsum - 6;
                        if (vout >= p.p || qout < 0 || qout > 2) continue;
                        Monomial mo{vout, qout};
                        int od = mo.degree();
                        if (od < lo || od > hi || !a.space.dim(od)) continue;
                        std::vector<BasisRef> key;
                        int in[4] = {a1, a2, a3, a4};
                        bool ok = true;
                        for (int k = 0; k < 4; ++k) {
                            Monomial mk{in[k], pat[k]};
                            int dk = mk.degree();
                            if (dk < lo || dk > hi || !a.space.dim(dk)) ok = false;
                            key.push_back({dk, 0});
                        }
                        if (!ok) continue;
                        mu4.entries[key] = {BasisRef{od, 0}};
                    }
    }
    a.mu[4] = mu4;
    return a;
}

Chain monomial_chain(const AInfAlgebra& model, const Monomial& m) {
    int d = m.degree();
    if (!model.space.dim(d)) return {};
    return {BasisRef{d, 0}};
}

AInfModule strict_module(std::shared_ptr<const AInfAlgebra> model, const GradedModule& mod,
                         Side side) {
    AInfModule out;
    out.side = side;
    out.space = mod.space;
    out.algebra = model;
    /* m2: module element x algebra monomial -> action */
    OpTable m2;
    for (auto& [da, na] : model->space.dims) {
        (void)na;
        auto mons = basis_in_degree(da, mod.prec);
        Monomial mon = mons.empty() ? Monomial{0, 0} : mons[0];
        if (da != mon.degree()) continue;  // model basis must be monomial-indexed
        GradedMap act = mod.act_monomial(mon);
        for (auto& [dm, nm] : mod.space.dims) {
            const BitMatrix& b = act.block(dm);
            for (int c = 0; c < nm; ++c) {
                Chain img;
                for (int r = 0; r < b.rows(); ++r)
                    if (b.get(r, c)) img.push_back({dm + da, r});
                if (img.empty()) continue;
                if (side == Side::right)
                    m2.entries[{BasisRef{dm, c}, BasisRef{da, 0}}] = img;
                else
                    m2.entries[{BasisRef{da, 0}, BasisRef{dm, c}}] = img;
            }
        }
    }
    out.m[2] = m2;
    return out;
}

namespace {

template <typename TableMap>
std::string mutate_tables(TableMap& ops, const GradedVectorSpace& out_space, int arity_offset,
                          uint64_t seed, const GradedVectorSpace& in_space) {
    std::mt19937_64 rng(seed);
    /* choose an op index among existing tables (or mu2/m2 if absent) */
    std::vector<int> idxs;
    for (auto& [i, t] : ops) idxs.push_back(i);
    if (idxs.empty()) idxs.push_back(2);
    int opi = idxs[rng() % idxs.size()];
    /* random input tuple of the right arity, random consistent output bit */
    std::vector<std::pair<int, int>> basis;
    for (auto& [d, n] : in_space.dims)
        for (int k = 0; k < n; ++k) basis.push_back({d, k});
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<BasisRef> key;
        int degsum = 0;
        for (int k = 0; k < opi; ++k) {
            auto [d, i2] = basis[rng() % basis.size()];
            key.push_back({d, i2});
            degsum += d;
        }
        int want = degsum + opi + arity_offset;
        int n_out = out_space.dim(want);
        if (n_out == 0) continue;
        int oidx = (int)(rng() % n_out);
        Chain flip = {BasisRef{want, oidx}};
        ops[opi].add(key, flip);
        return "flip mu/m_" + std::to_string(opi) + " output at degree " +
               std::to_string(want) + " idx " + std::to_string(oidx);
    }
    return "no mutation found";
}

}  // namespace

std::string mutate_algebra(AInfAlgebra& a, uint64_t seed) {
    return mutate_tables(a.mu, a.space, -2, seed, a.space);
}

std::string mutate_module(AInfModule& m, uint64_t seed) {
    /* mutate the module tables (inputs mix module and algebra basis; use the
    ** module space for slot 0 and algebra for the rest) */
    std::mt19937_64 rng(seed);
    std::vector<int> idxs;
    for (auto& [i, t] : m.m) idxs.push_back(i);
    if (idxs.empty()) idxs.push_back(2);
    int opi = idxs[rng() % idxs.size()];
    std::vector<std::pair<int, int>> mb, ab;
    for (auto& [d, n] : m.space.dims)
        for (int k = 0; k < n; ++k) mb.push_back({d, k});
    for (auto& [d, n] : m.algebra->space.dims)
        for (int k = 0; k < n; ++k) ab.push_back({d, k});
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<BasisRef> key;
        int degsum = 0;
        auto [xd, xi] = mb[rng() % mb.size()];
        if (m.side == Side::right) key.push_back({xd, xi});
        degsum += xd;
        for (int k = 0; k < opi - 1; ++k) {
            auto [d, i2] = ab[rng() % ab.size()];
            key.push_back({d, i2});
            degsum += d;
        }
        if (m.side == Side::left) key.push_back({xd, xi});
        int want = degsum + opi - 2;
        int n_out = m.space.dim(want);
        if (n_out == 0) continue;
        int oidx = (int)(rng() % n_out);
        m.m[opi].add(key, {BasisRef{want, oidx}});
        return "flip m_" + std::to_string(opi) + " output at degree " + std::to_string(want);
    }
    return "no mutation found";
}

}  // namespace pin2
