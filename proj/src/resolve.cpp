#include "pin2homalg/resolve.hpp"

#include <algorithm>
#include <sstream>

namespace pin2 {

void BigradedTable::set(int i, int j, int n, bool cert) {
    if (n == 0) {
        entries.erase({i, j});
        certified.erase({i, j});
        return;
    }
    entries[{i, j}] = n;
    certified[{i, j}] = cert;
    imax = std::max(imax, i);
    jlo = std::min(jlo, j);
    jhi = std::max(jhi, j);
}

std::map<int, int> BigradedTable::totals() const {
    std::map<int, int> t;
    for (auto& [ij, n] : entries) t[ij.first + ij.second] += n;
    return t;
}

std::string BigradedTable::render_grid() const {
    std::ostringstream os;
    os << "  j\\i";
    for (int i = 0; i <= imax; ++i) os << " " << i;
    os << "\n";
    for (int j = jhi; j >= jlo; --j) {
        os.width(5);
        os << j;
        for (int i = 0; i <= imax; ++i) {
            int n = dim(i, j);
            os << " ";
            if (n == 0)
                os << ".";
            else {
                os << n;
                if (!is_certified(i, j)) os << "?";
            }
        }
        os << "\n";
    }
    return os.str();
}

std::string BigradedTable::render_csv() const {
    std::ostringstream os;
    os << "i,j,dim,certified\n";
    for (auto& [ij, n] : entries)
        os << ij.first << "," << ij.second << "," << n << ","
           << (is_certified(ij.first, ij.second) ? 1 : 0) << "\n";
    return os.str();
}

/* ---------- free modules on generators ---------- */

namespace {

/* Canonical basis of the free module at a degree: (gen index, monomial),
** gens in order; each (gen, degree) carries at most one monomial. */
std::vector<std::pair<int, Monomial>> free_basis_at(const std::vector<int>& gens, Precision p,
                                                    int d) {
    std::vector<std::pair<int, Monomial>> out;
    for (int g = 0; g < (int)gens.size(); ++g)
        for (auto& m : basis_in_degree(d - gens[g], p)) out.push_back({g, m});
    return out;
}

int free_index_of(const std::vector<std::pair<int, Monomial>>& basis, int g, const Monomial& m) {
    for (int i = 0; i < (int)basis.size(); ++i)
        if (basis[i].first == g && basis[i].second == m) return i;
    return -1;
}

}  // namespace

GradedModule free_module_on(const std::vector<int>& gens, Precision p, int lo, int hi) {
    GradedModule m;
    m.prec = p;
    m.space.lo = lo;
    m.space.hi = hi;
    for (int d = hi; d >= lo; --d) {
        auto b = free_basis_at(gens, p, d);
        if (!b.empty()) {
            m.space.dims[d] = (int)b.size();
            for (auto& [g, mon] : b)
                m.space.labels[d].push_back("g" + std::to_string(g) + "*" + mon.str());
        }
    }
    m.actV = zero_map(m.space, m.space, -4);
    m.actQ = zero_map(m.space, m.space, -1);
    for (auto& [d, n] : m.space.dims) {
        (void)n;
        auto src = free_basis_at(gens, p, d);
        auto tv = free_basis_at(gens, p, d - 4);
        auto tq = free_basis_at(gens, p, d - 1);
        if (d - 4 >= lo && !tv.empty())
            for (int i = 0; i < (int)src.size(); ++i)
                if (auto mm = mul_monomial(src[i].second, Monomial{1, 0}, p)) {
                    int t = free_index_of(tv, src[i].first, *mm);
                    if (t >= 0) m.actV.block_mut(d).set(t, i, true);
                }
        if (d - 1 >= lo && !tq.empty())
            for (int i = 0; i < (int)src.size(); ++i)
                if (auto mm = mul_monomial(src[i].second, Monomial{0, 1}, p)) {
                    int t = free_index_of(tq, src[i].first, *mm);
                    if (t >= 0) m.actQ.block_mut(d).set(t, i, true);
                }
    }
    return m;
}

GradedModule FreeResolution::realize_stage(int i) const {
    return free_module_on(gen_degrees.at(i), prec, window_lo, window_hi);
}

GradedMap FreeResolution::realize_diff(int i) const {
    GradedModule src = realize_stage(i + 1);
    GradedModule tgt = realize_stage(i);
    GradedMap out = zero_map(src.space, tgt.space, 0);
    const auto& ent = diff_entries.at(i);
    for (auto& [d, n] : src.space.dims) {
        (void)n;
        auto sb = free_basis_at(gen_degrees[i + 1], prec, d);
        auto tb = free_basis_at(gen_degrees[i], prec, d);
        if (tb.empty()) continue;
        BitMatrix& blk = out.block_mut(d);
        for (int c = 0; c < (int)sb.size(); ++c) {
            auto [g, mon] = sb[c];
            for (int t = 0; t < (int)gen_degrees[i].size(); ++t) {
                const RingElement& e = ent[t][g];
                for (auto& em : e.monomials())
                    if (auto mm = mul_monomial(mon, em, prec)) {
                        int r = free_index_of(tb, t, *mm);
                        if (r >= 0) blk.flip(r, c);
                    }
            }
        }
    }
    return out;
}

ValidationReport validate(const FreeResolution& r) {
    ValidationReport rep;
    int stages = (int)r.gen_degrees.size();
    std::vector<GradedMap> diffs;
    for (int i = 0; i + 1 < stages; ++i) diffs.push_back(r.realize_diff(i));
    for (int i = 0; i + 1 < (int)diffs.size(); ++i) {
        GradedMap dd = compose(diffs[i], diffs[i + 1]);
        for (auto& [d, b] : dd.blocks)
            if (!b.is_zero())
                rep.fail("delta^2 != 0 between stages " + std::to_string(i + 2) + "->" +
                         std::to_string(i) + " at degree " + std::to_string(d));
    }
    if (!r.augmentation.blocks.empty() && !diffs.empty()) {
        GradedMap ed = compose(r.augmentation, diffs[0]);
        for (auto& [d, b] : ed.blocks)
            if (!b.is_zero()) rep.fail("aug o delta != 0 at degree " + std::to_string(d));
    }
    /* exactness in the certified window */
    for (int i = 0; i + 1 < (int)diffs.size(); ++i) {
        GradedModule s = r.realize_stage(i + 1);
        for (auto& [d, n] : s.space.dims) {
            (void)n;
            bool cert = true;
            for (int k = std::max(0, i); k <= std::min(stages - 1, i + 2); ++k)
                for (int g : r.gen_degrees[k])
                    if (g >= d && g - d > 4 * (r.prec.p - 1) + 2) cert = false;
            if (!cert) continue;
            int kq = s.space.dim(d) - rank(diffs[i].block(d));
            int im = rank(diffs[i + 1].block(d));
            if (kq != im)
                rep.fail("not exact at stage " + std::to_string(i + 1) + " degree " +
                         std::to_string(d));
        }
    }
    return rep;
}

FreeResolution periodic_resolution_2311(int n_max, Precision p, int lo, int hi) {
    FreeResolution r;
    r.prec = p;
    r.window_lo = lo;
    r.window_hi = hi;
    for (int i = 0; i <= n_max; ++i) {
        int n = i / 2;
        if (i % 2 == 0)
            r.gen_degrees.push_back({-3 * n, -3 * n - 2});
        else
            r.gen_degrees.push_back({-3 * n - 1, -3 * n - 4});
    }
    auto E = [&](const char* s) { return RingElement::from_monomial(*parse_monomial(s), p); };
    for (int i = 0; i + 1 <= n_max; ++i) {
        /* map P_{i+1} -> P_i; entries [target][source] */
        std::vector<std::vector<RingElement>> m(2, std::vector<RingElement>(2, RingElement(p)));
        if (i % 2 == 0) {
            /* delta_{2n+1}: (1,0) -> (Q,0), (0,1) -> (V,Q^2) */
            m[0][0] = E("Q");
            m[0][1] = E("V");
            m[1][1] = E("Q2");
        } else {
            /* delta_{2n}: (1,0) -> (Q^2,0), (0,1) -> (V,Q) */
            m[0][0] = E("Q2");
            m[0][1] = E("V");
            m[1][1] = E("Q");
        }
        r.diff_entries.push_back(m);
    }
    r.target = catalogue("M_2311", p, lo, hi).module;
    /* augmentation: e1 (deg 0) -> tower-3 base, e2 (deg -2) -> tower-1 base */
    GradedModule p0 = r.realize_stage(0);
    r.augmentation = zero_map(p0.space, r.target.space, 0);
    GradedMap to1 = r.target.act_monomial(Monomial{0, 0});  // identity scaffold
    (void)to1;
    for (auto& [d, n] : p0.space.dims) {
        (void)n;
        auto sb = free_basis_at(r.gen_degrees[0], p, d);
        if (!r.target.space.dim(d)) continue;
        BitMatrix& blk = r.augmentation.block_mut(d);
        for (int c = 0; c < (int)sb.size(); ++c) {
            auto [g, mon] = sb[c];
            /* image of the generator in the target */
            int base_deg = (g == 0) ? 0 : -2;
            int base_idx_deg = base_deg;
            /* tower-3 base label index at degree 0 is the only element there;
            ** tower-1 base at degree -2 likewise */
            GradedMap act = r.target.act_monomial(mon);
            const BitMatrix& ab = act.block(base_idx_deg);
            if (!r.target.space.dim(base_idx_deg)) continue;
            int src_idx = 0;  // both base degrees carry a single basis vector
            for (int row = 0; row < ab.rows(); ++row)
                if (ab.get(row, src_idx)) blk.flip(row, c);
        }
    }
    return r;
}

/* ---------- minimal free resolution ---------- */

namespace {

/* explicit submodule-as-module: a per-degree basis of vectors inside an
** ambient module, with induced actions */
struct SubModule {
    const GradedModule* ambient;
    std::map<int, BitMatrix> basis;  // columns: basis vectors at each degree
    GradedModule as_module() const;
};

GradedModule SubModule::as_module() const {
    GradedModule m;
    m.prec = ambient->prec;
    m.space.lo = ambient->space.lo;
    m.space.hi = ambient->space.hi;
    for (auto& [d, b] : basis)
        if (b.cols()) m.space.dims[d] = b.cols();
    m.actV = zero_map(m.space, m.space, -4);
    m.actQ = zero_map(m.space, m.space, -1);
    auto induce = [&](const GradedMap& act, GradedMap& dst, int sh) {
        for (auto& [d, b] : basis) {
            if (!b.cols() || !m.space.dim(d + sh)) continue;
            const BitMatrix& tb = basis.at(d + sh);
            BitMatrix img = act.block(d).mul(b);
            /* express img columns in tb columns: solve tb x = img_col */
            BitMatrix& blk = dst.block_mut(d);
            for (int c = 0; c < img.cols(); ++c) {
                std::vector<uint8_t> rhs(img.rows());
                for (int r2 = 0; r2 < img.rows(); ++r2) rhs[r2] = img.get(r2, c);
                auto x = solve(tb, rhs);
                if (!x)
                    throw invariant_error("SubModule: not action-stable at degree " +
                                          std::to_string(d));
                for (int r2 = 0; r2 < (int)x->size(); ++r2)
                    if ((*x)[r2]) blk.set(r2, c, true);
            }
        }
    };
    induce(ambient->actV, m.actV, -4);
    induce(ambient->actQ, m.actQ, -1);
    return m;
}

/* minimal generators of a module: per degree from the top, a basis of
** m_d / (V m_{d+4} + Q m_{d+1}) */
std::map<int, BitMatrix> minimal_generators(const GradedModule& m) {
    std::map<int, BitMatrix> gens;
    for (auto it = m.space.dims.rbegin(); it != m.space.dims.rend(); ++it) {
        int d = it->first;
        int n = it->second;
        BitMatrix sub(n, 0);
        const BitMatrix& bv = m.actV.block(d + 4);
        if (bv.rows() == n && bv.cols()) sub = sub.hconcat(bv);
        const BitMatrix& bq = m.actQ.block(d + 1);
        if (bq.rows() == n && bq.cols()) sub = sub.hconcat(bq);
        /* extend sub by chosen vectors greedily (deterministic order) */
        BitMatrix cur = sub;
        BitMatrix chosen(n, 0);
        for (int c = 0; c < n; ++c) {
            BitMatrix e(n, 1);
            e.set(c, 0, true);
            if (rank_increase(cur, e) == 1) {
                cur = cur.hconcat(e);
                chosen = chosen.hconcat(e);
            }
        }
        if (chosen.cols()) gens[d] = chosen;
    }
    return gens;
}

}  // namespace

FreeResolution free_resolution(const GradedModule& n, int length, int lo, int hi) {
    FreeResolution r;
    r.prec = n.prec;
    r.window_lo = lo;
    r.window_hi = hi;
    r.target = n;

    /* current module to cover, represented inside the previous free stage */
    SubModule cur;
    GradedModule cur_mod = n;  // stage -1 target
    bool first = true;
    GradedModule prev_free;

    for (int stage = 0; stage <= length; ++stage) {
        auto gens = minimal_generators(cur_mod);
        std::vector<int> gd;
        std::map<int, std::vector<int>> gen_cols;  // degree -> columns into gens matrix
        for (auto it = gens.rbegin(); it != gens.rend(); ++it)
            for (int c = 0; c < it->second.cols(); ++c) {
                gen_cols[it->first].push_back((int)gd.size());
                gd.push_back(it->first);
            }
        if (gd.empty()) {
            r.complete = true;
            break;
        }
        if (*std::min_element(gd.begin(), gd.end()) <= lo + 7) {
            r.complete = false;
            r.note = "window exhausted at stage " + std::to_string(stage);
        }
        r.gen_degrees.push_back(gd);
        GradedModule fr = free_module_on(gd, r.prec, lo, hi);

        /* cover map: free stage -> cur_mod */
        GradedMap cover = zero_map(fr.space, cur_mod.space, 0);
        {
            std::vector<std::pair<int, int>> gen_vec;  // (degree, column in gens[degree])
            {
                std::map<int, int> seen;
                for (int g = 0; g < (int)gd.size(); ++g)
                    gen_vec.push_back({gd[g], seen[gd[g]]++});
            }
            for (auto& [d, nn] : fr.space.dims) {
                (void)nn;
                if (!cur_mod.space.dim(d)) continue;
                auto sb = free_basis_at(gd, r.prec, d);
                BitMatrix& blk = cover.block_mut(d);
                for (int c = 0; c < (int)sb.size(); ++c) {
                    auto [g, mon] = sb[c];
                    auto [gdeg, gcol] = gen_vec[g];
                    GradedMap act = cur_mod.act_monomial(mon);
                    const BitMatrix& ab = act.block(gdeg);
                    const BitMatrix& gv = gens.at(gdeg);
                    for (int r2 = 0; r2 < ab.rows(); ++r2) {
                        uint8_t v = 0;
                        for (int k = 0; k < gv.rows(); ++k)
                            v ^= ab.get(r2, k) & gv.get(k, gcol);
                        if (v) blk.flip(r2, c);
                    }
                }
            }
        }

        /* record ring entries of the differential (stage >= 1: target the
        ** previous free module; at stage 0 record the augmentation) */
        if (first) {
            r.augmentation = cover;
            first = false;
        } else {
            /* cover lands in cur (a submodule of prev_free); compose with the
            ** inclusion to express inside prev_free, then read off entries */
            const auto& prev_gd = r.gen_degrees[r.gen_degrees.size() - 2];
            std::vector<std::vector<RingElement>> ent(
                prev_gd.size(), std::vector<RingElement>(gd.size(), RingElement(r.prec)));
            for (int g = 0; g < (int)gd.size(); ++g) {
                int d = gd[g];
                /* image of the generator inside prev_free at degree d */
                if (!cur_mod.space.dim(d)) continue;
                auto fb = free_basis_at(gd, r.prec, d);
                int ci = free_index_of(fb, g, Monomial{0, 0});
                if (ci < 0) continue;
                std::vector<uint8_t> unit(fb.size(), 0);
                unit[ci] = 1;
                std::vector<uint8_t> in_cur = cover.block(d).mul_vec(unit);
                /* inclusion: columns of cur.basis[d] */
                const BitMatrix& inc = cur.basis.at(d);
                std::vector<uint8_t> amb(inc.rows(), 0);
                for (int c = 0; c < inc.cols(); ++c)
                    if (in_cur[c])
                        for (int r2 = 0; r2 < inc.rows(); ++r2) amb[r2] ^= inc.get(r2, c);
                auto pb = free_basis_at(prev_gd, r.prec, d);
                for (int r2 = 0; r2 < (int)pb.size(); ++r2)
                    if (amb[r2]) {
                        auto [tg, mon] = pb[r2];
                        ent[tg][g].flip(mon.v, mon.q);
                    }
            }
            r.diff_entries.push_back(ent);
        }

        /* next: kernel of cover as a submodule of fr */
        SubModule ker;
        ker.ambient = nullptr;
        std::map<int, BitMatrix> kb;
        for (auto& [d, nn] : fr.space.dims) {
            (void)nn;
            BitMatrix k = kernel_basis(cover.block(d));
            if (k.cols()) kb[d] = k;
        }
        prev_free = fr;
        cur.basis = kb;
        cur.ambient = &prev_free;
        GradedModule km;
        {
            SubModule tmp;
            tmp.ambient = &prev_free;
            tmp.basis = kb;
            km = tmp.as_module();
        }
        cur_mod = km;
        if ((int)r.gen_degrees.size() > length) break;
    }
    return r;
}

/* ---------- bar complex ---------- */

int BarElement::degree() const {
    int d = m_deg + n_deg;
    for (auto& m : word) d += m.degree();
    return d;
}

bool BarElement::operator<(const BarElement& o) const {
    if (m_deg != o.m_deg) return m_deg < o.m_deg;
    if (m_idx != o.m_idx) return m_idx < o.m_idx;
    if (word != o.word) return word < o.word;
    if (n_deg != o.n_deg) return n_deg < o.n_deg;
    return n_idx < o.n_idx;
}

bool BarElement::operator==(const BarElement& o) const {
    return m_deg == o.m_deg && m_idx == o.m_idx && word == o.word && n_deg == o.n_deg &&
           n_idx == o.n_idx;
}

std::string BarElement::str(const GradedModule& M, const GradedModule& N) const {
    auto lbl = [](const GradedModule& mod, int d, int i) {
        auto it = mod.space.labels.find(d);
        if (it != mod.space.labels.end() && i < (int)it->second.size()) return it->second[i];
        return std::string("e(") + std::to_string(d) + "," + std::to_string(i) + ")";
    };
    std::string s = lbl(M, m_deg, m_idx) + "[";
    for (size_t i = 0; i < word.size(); ++i) {
        if (i) s += "|";
        s += word[i].str();
    }
    s += "]" + lbl(N, n_deg, n_idx);
    return s;
}

BarChain bar_differential(const GradedModule& M, const GradedModule& N, const BarElement& e) {
    std::map<BarElement, int> acc;
    auto addterm = [&](const BarElement& t) { acc[t] ^= 1; };
    int n = (int)e.word.size();
    Precision p = M.prec;
    if (n >= 1) {
        /* left end action x . gamma_1 */
        GradedMap act = M.act_monomial(e.word[0]);
        const BitMatrix& b = act.block(e.m_deg);
        int td = e.m_deg + e.word[0].degree();
        for (int r = 0; r < b.rows(); ++r)
            if (b.get(r, e.m_idx)) {
                BarElement t;
                t.m_deg = td;
                t.m_idx = r;
                t.word.assign(e.word.begin() + 1, e.word.end());
                t.n_deg = e.n_deg;
                t.n_idx = e.n_idx;
                addterm(t);
            }
        /* right end action gamma_n . y */
        GradedMap actn = N.act_monomial(e.word[n - 1]);
        const BitMatrix& bn = actn.block(e.n_deg);
        int tdn = e.n_deg + e.word[n - 1].degree();
        for (int r = 0; r < bn.rows(); ++r)
            if (bn.get(r, e.n_idx)) {
                BarElement t;
                t.m_deg = e.m_deg;
                t.m_idx = e.m_idx;
                t.word.assign(e.word.begin(), e.word.end() - 1);
                t.n_deg = tdn;
                t.n_idx = r;
                addterm(t);
            }
    }
    for (int i = 0; i + 1 < n; ++i) {
        auto mm = mul_monomial(e.word[i], e.word[i + 1], p);
        if (!mm || mm->is_unit()) continue;
        BarElement t = e;
        t.word.erase(t.word.begin() + i, t.word.begin() + i + 2);
        t.word.insert(t.word.begin() + i, *mm);
        addterm(t);
    }
    BarChain out;
    for (auto& [t, c] : acc)
        if (c) out.push_back(t);
    return out;
}

namespace {

/* all length-n words of non-unit monoms with given total degree */
const std::vector<std::vector<Monomial>>& words_memo(int n, int s, Precision p,
                                                     std::map<std::pair<int, int>,
                                                              std::vector<std::vector<Monomial>>>& memo) {
    auto key = std::make_pair(n, s);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<std::vector<Monomial>> out;
    if (n == 0) {
        if (s == 0) out.push_back({});
    } else {
        /* first monomial degree dm: each remaining has degree <= -1 */
        for (int dm = -1; dm >= s + (n - 1); --dm) {
            auto bs = basis_in_degree(dm, p);
            if (bs.empty()) continue;
            const auto& rest = words_memo(n - 1, s - dm, p, memo);
            for (auto& w : rest) {
                std::vector<Monomial> full;
                full.push_back(bs[0]);
                full.insert(full.end(), w.begin(), w.end());
                out.push_back(std::move(full));
            }
        }
    }
    return memo[key] = std::move(out);
}

}  // namespace

BarComplex bar_complex(const GradedModule& M, const GradedModule& N, int n_max, int lo, int hi) {
    if (!(M.prec == N.prec))
        throw std::invalid_argument("bar_complex: precision mismatch");
    BarComplex bc;
    bc.M = &M;
    bc.N = &N;
    bc.n_max = n_max;
    bc.lo = lo;
    bc.hi = hi;
    std::map<std::pair<int, int>, std::vector<std::vector<Monomial>>> memo;
    bc.stages.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        for (auto& [dm, nm] : M.space.dims)
            for (auto& [dn, nn] : N.space.dims) {
                for (int s = lo - dm - dn; s <= (n == 0 ? 0 : -n); ++s) {
                    int j = dm + dn + s;
                    if (j < lo || j > hi) continue;
                    if (n == 0 && s != 0) continue;
                    const auto& ws = words_memo(n, s, M.prec, memo);
                    for (auto& w : ws)
                        for (int im = 0; im < nm; ++im)
                            for (int in = 0; in < nn; ++in) {
                                BarElement e;
                                e.m_deg = dm;
                                e.m_idx = im;
                                e.word = w;
                                e.n_deg = dn;
                                e.n_idx = in;
                                bc.stages[n][j].push_back(e);
                            }
                }
            }
        for (auto& [j, v] : bc.stages[n]) std::sort(v.begin(), v.end());
    }
    return bc;
}

int BarComplex::index_of(int stage, const BarElement& e) const {
    int j = e.degree();
    auto it = stages[stage].find(j);
    if (it == stages[stage].end()) return -1;
    auto& v = it->second;
    auto p = std::lower_bound(v.begin(), v.end(), e);
    if (p == v.end() || !(*p == e)) return -1;
    return (int)(p - v.begin());
}

GradedVectorSpace BarComplex::stage_space(int n) const {
    GradedVectorSpace s;
    s.lo = lo;
    s.hi = hi;
    for (auto& [j, v] : stages[n])
        if (!v.empty()) s.dims[j] = (int)v.size();
    return s;
}

GradedMap BarComplex::stage_differential(int n) const {
    GradedVectorSpace src = stage_space(n);
    GradedVectorSpace tgt = (n >= 1) ? stage_space(n - 1) : GradedVectorSpace{};
    GradedMap d = zero_map(src, tgt, 0);
    if (n == 0) return d;
    for (auto& [j, v] : stages[n]) {
        if (!tgt.dim(j)) continue;
        BitMatrix& blk = d.block_mut(j);
        for (int c = 0; c < (int)v.size(); ++c)
            for (auto& t : bar_differential(*M, *N, v[c])) {
                int r = index_of(n - 1, t);
                if (r >= 0) blk.flip(r, c);
            }
    }
    return d;
}

/* ---------- Tor ---------- */

namespace {

bool module_is_bottomless(const GradedModule& m) {
    for (auto& [d, n] : m.space.dims) {
        (void)n;
        if (d < m.space.lo + 4) return true;
    }
    return false;
}

}  // namespace

BigradedTable tor(const GradedModule& M, const GradedModule& N, TorMethod method,
                  const TorParams& params) {
    BigradedTable t;
    t.jlo = params.lo;
    t.jhi = params.hi;
    int p = M.prec.p;
    if (method == TorMethod::bar) {
        t.provenance = "bar";
        BarComplex bc = bar_complex(M, N, params.n_max, params.lo, params.hi);
        std::vector<GradedMap> diffs(params.n_max + 1);
        for (int n = 0; n <= params.n_max; ++n) diffs[n] = bc.stage_differential(n);
        int hiM = M.space.hi, hiN = N.space.hi;
        int loM = M.space.lo, loN = N.space.lo;
        bool blM = module_is_bottomless(M), blN = module_is_bottomless(N);
        for (int i = 0; i < params.n_max; ++i) {
            GradedVectorSpace h = homology_dims(diffs[i + 1], diffs[i]);
            for (auto& [j, n] : h.dims) {
                bool cert = true;
                if (hiM + hiN - j > 4 * (p - 1) + 3) cert = false;
                if (blM && j < loM + hiN + 4) cert = false;
                if (blN && j < loN + hiM + 4) cert = false;
                t.set(i, j, n, cert);
            }
        }
        t.imax = std::max(t.imax, params.n_max - 1);
    } else {
        t.provenance = "resolution";
        FreeResolution r = free_resolution(N, params.n_max + 1, params.lo, params.hi);
        int stages = (int)r.gen_degrees.size();
        /* C_i = P_i (x)_R M = direct sum of shifted copies of M */
        auto realize_tensor = [&](int i) {
            GradedVectorSpace s;
            s.lo = params.lo;
            s.hi = params.hi;
            for (int g = 0; g < (int)r.gen_degrees[i].size(); ++g)
                for (auto& [d, n] : M.space.dims) {
                    int dd = d + r.gen_degrees[i][g];
                    if (dd >= params.lo && dd <= params.hi) s.dims[dd] += n;
                }
            return s;
        };
        /* basis at degree d: (gen g, module basis element of degree d - gd) in gen order */
        auto diff_tensor = [&](int i) {  // C_{i+1} -> C_i
            GradedVectorSpace src = realize_tensor(i + 1), tgt = realize_tensor(i);
            GradedMap out = zero_map(src, tgt, 0);
            const auto& sg = r.gen_degrees[i + 1];
            const auto& tg = r.gen_degrees[i];
            for (auto& [d, n] : src.dims) {
                (void)n;
                if (!tgt.dim(d)) continue;
                BitMatrix& blk = out.block_mut(d);
                /* offsets of each target gen block at degree d */
                std::vector<int> toff(tg.size() + 1, 0);
                for (size_t g = 0; g < tg.size(); ++g)
                    toff[g + 1] = toff[g] + M.space.dim(d - tg[g]);
                int soff = 0;
                for (size_t g = 0; g < sg.size(); ++g) {
                    int md = d - sg[g];
                    int mdim = M.space.dim(md);
                    for (size_t tgen = 0; tgen < tg.size(); ++tgen) {
                        const RingElement& e = r.diff_entries[i][tgen][g];
                        for (auto& mon : e.monomials()) {
                            GradedMap act = M.act_monomial(mon);
                            const BitMatrix& ab = act.block(md);
                            for (int c = 0; c < mdim; ++c)
                                for (int rr = 0; rr < ab.rows(); ++rr)
                                    if (ab.get(rr, c)) blk.flip(toff[tgen] + rr, soff + c);
                        }
                    }
                    soff += mdim;
                }
            }
            return out;
        };
        std::vector<GradedMap> diffs;
        for (int i = 0; i + 1 < stages; ++i) diffs.push_back(diff_tensor(i));
        int loM = M.space.lo;
        bool blM = module_is_bottomless(M);
        bool blN = module_is_bottomless(N);
        /* per-stage trust floor: generators extracted below the V-truncation
        ** frontier of the previous stage (or, at stage 0, near the bottom of a
        ** windowed module) may be truncation artifacts */
        std::vector<int> floor_(stages, -(1 << 28));
        if (blN) floor_[0] = N.space.lo + 5;
        for (int k = 1; k < stages; ++k) {
            int prev_max = *std::max_element(r.gen_degrees[k - 1].begin(),
                                             r.gen_degrees[k - 1].end());
            floor_[k] = std::max(floor_[k - 1], prev_max - (4 * (p - 1) + 2));
        }
        for (int i = 0; i < (int)diffs.size(); ++i) {
            GradedVectorSpace h = homology_dims(
                diffs[i], i >= 1 ? diffs[i - 1]
                                 : zero_map(realize_tensor(0), GradedVectorSpace{}, 0));
            for (auto& [j, n] : h.dims) {
                bool cert = true;
                for (int k = std::max(0, i - 1); k <= std::min(stages - 1, i + 1); ++k) {
                    if (j < floor_[k]) cert = false;
                    for (int g : r.gen_degrees[k]) {
                        if (g >= j && g - j > 4 * (p - 1) + 2) cert = false;
                        if (blM && j < loM + 4 + g) cert = false;
                    }
                }
                t.set(i, j, n, cert);
            }
        }
        if (!r.complete) t.provenance += " (partial: " + r.note + ")";
    }
    return t;
}

/* ---------- PID cone check ---------- */

std::map<int, int> UModule::dims(int lo, int hi, int tower_cap) const {
    std::map<int, int> out;
    for (auto& [base, len] : pieces) {
        int steps = len < 0 ? tower_cap : len;
        for (int k = 0; k < steps; ++k) {
            int d = base - 2 * k;
            if (d >= lo && d <= hi) out[d] += 1;
        }
    }
    return out;
}

UModule u_free(int shift) { return UModule{{{shift, -1}}}; }
UModule u_torsion(int shift, int len) { return UModule{{{shift, len}}}; }

UModule u_from_graded(const GradedModule& m) {
    for (auto& [d, b] : m.actQ.blocks)
        if (!b.is_zero())
            throw invariant_error("u_from_graded: nonzero Q-action at degree " +
                                  std::to_string(d));
    /* tower decomposition: peel V-orbits from the top */
    UModule u;
    std::map<int, BitMatrix> used;  // span already accounted for, per degree
    for (auto it = m.space.dims.rbegin(); it != m.space.dims.rend(); ++it) {
        int d = it->first;
        int n = it->second;
        BitMatrix& ud = used.emplace(d, BitMatrix(n, 0)).first->second;
        /* vectors not in used_d and not in im(V) from d+4 start new towers */
        BitMatrix span = ud;
        const BitMatrix& iv = m.actV.block(d + 4);
        if (iv.rows() == n && iv.cols()) span = span.hconcat(iv);
        for (int c = 0; c < n; ++c) {
            BitMatrix e(n, 1);
            e.set(c, 0, true);
            if (rank_increase(span, e) == 0) continue;
            span = span.hconcat(e);
            /* follow the V-orbit down */
            int len = 1;
            std::vector<uint8_t> v(n, 0);
            v[c] = 1;
            int dd = d;
            std::vector<uint8_t> curv = v;
            while (true) {
                const BitMatrix& act = m.actV.block(dd);
                std::vector<uint8_t> nxt = act.mul_vec(curv);
                bool zero = true;
                for (auto b2 : nxt)
                    if (b2) zero = false;
                if (zero) break;
                dd -= 4;
                ++len;
                int nd = m.space.dim(dd);
                BitMatrix& udd = used.emplace(dd, BitMatrix(nd, 0)).first->second;
                BitMatrix col(nd, 1);
                for (int r2 = 0; r2 < nd; ++r2)
                    if (nxt[r2]) col.set(r2, 0, true);
                udd = udd.hconcat(col);
                curv = nxt;
            }
            bool truncated_by_window = (dd - 4 < m.space.lo) || len >= m.prec.p;
            u.pieces.push_back({d, truncated_by_window ? -1 : len});
            BitMatrix e2(n, 1);
            e2.set(c, 0, true);
            ud = ud.hconcat(e2);
        }
    }
    return u;
}

PidConeReport tor_pid_cone_check(const UModule& m, const UModule& n, int lo, int hi) {
    PidConeReport rep;
    int cap = (hi - lo) / 2 + 8;
    int mat_lo = lo - 8;

    /* ---- cone side: T = m (x)_F n, f = U(x)1 + 1(x)U ---- */
    struct El { int piece, k; };
    auto elements = [&](const UModule& u) {
        std::vector<std::pair<int, El>> out;  // (degree, element)
        for (int pi = 0; pi < (int)u.pieces.size(); ++pi) {
            auto [base, len] = u.pieces[pi];
            int steps = len < 0 ? cap : len;
            for (int k = 0; k < steps; ++k)
                if (base - 2 * k >= mat_lo) out.push_back({base - 2 * k, {pi, k}});
        }
        return out;
    };
    auto me = elements(m), ne = elements(n);
    std::map<int, std::vector<std::pair<El, El>>> T;
    for (auto& [d1, e1] : me)
        for (auto& [d2, e2] : ne)
            if (d1 + d2 >= mat_lo) T[d1 + d2].push_back({e1, e2});
    auto tidx = [&](int d, const El& a, const El& b) -> int {
        auto it = T.find(d);
        if (it == T.end()) return -1;
        for (int i = 0; i < (int)it->second.size(); ++i) {
            auto& [x, y] = it->second[i];
            if (x.piece == a.piece && x.k == a.k && y.piece == b.piece && y.k == b.k) return i;
        }
        return -1;
    };
    auto ualive = [&](const UModule& u, const El& e) {
        auto [base, len] = u.pieces[e.piece];
        (void)base;
        int steps = len < 0 ? cap : len;
        return e.k + 1 < steps;
    };
    auto fmat = [&](int d) {  // f : T_d -> T_{d-2}
        int rows = T.count(d - 2) ? (int)T[d - 2].size() : 0;
        int cols = T.count(d) ? (int)T[d].size() : 0;
        BitMatrix f(rows, cols);
        if (!rows || !cols) return f;
        for (int c = 0; c < cols; ++c) {
            auto [a, b] = T[d][c];
            if (ualive(m, a)) {
                int r = tidx(d - 2, {a.piece, a.k + 1}, b);
                if (r >= 0) f.flip(r, c);
            }
            if (ualive(n, b)) {
                int r = tidx(d - 2, a, {b.piece, b.k + 1});
                if (r >= 0) f.flip(r, c);
            }
        }
        return f;
    };
    for (int d = hi; d >= lo; --d) {
        /* coker at d-1 (placed at d via <1>), ker at d */
        int tdim = T.count(d - 1) ? (int)T[d - 1].size() : 0;
        int cok = tdim - rank(fmat(d + 1));
        BitMatrix fd = fmat(d);
        int ker = (T.count(d) ? (int)T[d].size() : 0) - rank(fd);
        int total = cok + ker;
        if (total) rep.cone_dims[d] = total;
    }

    /* ---- Tor side: structure-theorem closed forms ---- */
    std::map<int, int> tor_tot;  // by total degree
    auto add_piece = [&](int homdeg, int base, int len) {
        int steps = len < 0 ? cap : len;
        for (int k = 0; k < steps; ++k) {
            int t = homdeg + base - 2 * k;
            if (t >= lo - 2 && t <= hi + 2) tor_tot[t] += 1;
        }
    };
    for (auto& [b1, l1] : m.pieces)
        for (auto& [b2, l2] : n.pieces) {
            if (l1 < 0 || l2 < 0) {
                /* at least one free: Tor0 = other shifted; Tor1 = 0 */
                if (l1 < 0 && l2 < 0)
                    add_piece(0, b1 + b2, -1);
                else if (l1 < 0)
                    add_piece(0, b1 + b2, l2);
                else
                    add_piece(0, b1 + b2, l1);
            } else {
                int mn = std::min(l1, l2), mx = std::max(l1, l2);
                add_piece(0, b1 + b2, mn);
                add_piece(1, b1 + b2 - 2 * mx, mn);
            }
        }
    for (auto& [t, nn] : tor_tot)
        if (t + 1 >= lo && t + 1 <= hi) rep.tor_totals[t + 1] += nn;

    for (int d = lo; d <= hi; ++d) {
        int a = rep.cone_dims.count(d) ? rep.cone_dims[d] : 0;
        int b = rep.tor_totals.count(d) ? rep.tor_totals[d] : 0;
        if (a != b) {
            rep.pass = false;
            rep.mismatches.push_back("degree " + std::to_string(d) + ": cone " +
                                     std::to_string(a) + " vs Tor<1> " + std::to_string(b));
        }
    }
    return rep;
}

PidConeReport tor_pid_cone_check(const GradedModule& m, const GradedModule& n, int lo, int hi) {
    return tor_pid_cone_check(u_from_graded(m), u_from_graded(n), lo, hi);
}

}  // namespace pin2
