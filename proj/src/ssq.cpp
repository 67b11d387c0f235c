#include "pin2homalg/ssq.hpp"

#include <algorithm>
#include <sstream>

namespace pin2 {

void FilteredComplex::validate() const {
    for (auto& [deg, b] : d.blocks) {
        const auto& src_lv = level.at(deg);
        if (!space.dim(deg - 1)) {
            if (!b.is_zero()) throw invariant_error("filtered: differential leaves the window");
            continue;
        }
        const auto& tgt_lv = level.at(deg - 1);
        for (int c = 0; c < b.cols(); ++c)
            for (int r = 0; r < b.rows(); ++r)
                if (b.get(r, c) && tgt_lv[r] > src_lv[c])
                    throw invariant_error("filtered: differential raises level at degree " +
                                          std::to_string(deg));
    }
    GradedMap dd = compose(d, d);
    for (auto& [deg, b] : dd.blocks)
        if (!b.is_zero() && deg - 2 >= space.lo)
            throw invariant_error("filtered: d^2 != 0 at degree " + std::to_string(deg));
}

FilteredComplex filtered_from_box(const BoxTensorComplex& box) {
    FilteredComplex fc;
    fc.space = box.total_space();
    fc.d = box.total_differential();
    fc.level_min = 0;
    fc.level_max = box.n_max;
    for (auto& [deg, n] : fc.space.dims) {
        std::vector<int> lv(n, 0);
        for (int i = 0; i < n; ++i) lv[i] = (int)box.flat_element(deg, i).word.size();
        fc.level[deg] = lv;
    }
    fc.validate();
    return fc;
}

namespace {

/* columns of the identity with level <= p at a degree */
BitMatrix filtration_basis(const FilteredComplex& fc, int p, int t) {
    int n = fc.space.dim(t);
    std::vector<int> cols;
    if (n == 0) return BitMatrix(0, 0);
    const auto& lv = fc.level.at(t);
    for (int i = 0; i < n; ++i)
        if (lv[i] <= p) cols.push_back(i);
    BitMatrix m(n, (int)cols.size());
    for (int c = 0; c < (int)cols.size(); ++c) m.set(cols[c], c, true);
    return m;
}

/* basis of Z_r^{p,t} = { x in F_p,t : d x in F_{p-r} } in total coordinates */
BitMatrix approximate_cycles(const FilteredComplex& fc, int r, int p, int t) {
    BitMatrix S = filtration_basis(fc, p, t);
    if (S.cols() == 0) return S;
    int nt = fc.space.dim(t - 1);
    if (nt == 0) return S;  // no differential constraints
    const auto& lv = fc.level.at(t - 1);
    std::vector<int> bad_rows;
    for (int i = 0; i < nt; ++i)
        if (lv[i] > p - r) bad_rows.push_back(i);
    if (bad_rows.empty()) return S;
    const BitMatrix& D = fc.d.block(t);
    BitMatrix M((int)bad_rows.size(), S.cols());
    for (int c = 0; c < S.cols(); ++c) {
        /* (D * S)_col restricted to bad rows */
        for (size_t br = 0; br < bad_rows.size(); ++br) {
            uint8_t v = 0;
            for (int k = 0; k < S.rows(); ++k)
                if (S.get(k, c)) v ^= D.get(bad_rows[br], k);
            if (v) M.set((int)br, c, true);
        }
    }
    BitMatrix K = kernel_basis(M);
    return S.mul(K);
}

std::vector<uint8_t> mat_col(const BitMatrix& m, int c) {
    std::vector<uint8_t> v(m.rows(), 0);
    for (int r = 0; r < m.rows(); ++r) v[r] = m.get(r, c);
    return v;
}

}  // namespace

std::vector<Page> pages(const FilteredComplex& fc, int r_max) {
    std::vector<Page> out;
    int pmin = fc.level_min, pmax = fc.level_max;
    int tlo = fc.space.lo, thi = fc.space.hi;

    for (int r = 1; r <= r_max; ++r) {
        Page pg;
        pg.r = r;
        pg.provenance = "computed";
        for (int p = pmin; p <= pmax; ++p)
            for (int t = tlo; t <= thi; ++t) {
                if (!fc.space.dim(t)) continue;
                BitMatrix Z = approximate_cycles(fc, r, p, t);
                if (Z.cols() == 0) continue;
                /* denominator: Z_{r-1}^{p-1,t} + d Z_{r-1}^{p+r-1,t+1} */
                BitMatrix Q1 = approximate_cycles(fc, r - 1, p - 1, t);
                BitMatrix Zup = approximate_cycles(fc, r - 1, p + r - 1, t + 1);
                BitMatrix Q2(fc.space.dim(t), 0);
                if (Zup.cols() && fc.space.dim(t)) {
                    const BitMatrix& D = fc.d.block(t + 1);
                    Q2 = D.mul(Zup);
                }
                BitMatrix Q = Q1.hconcat(Q2);
                int dimE = rank(Z.hconcat(Q)) - rank(Q);
                if (dimE <= 0) continue;
                PageEntry e;
                e.p = p;
                e.t = t;
                e.denom = image_basis(Q);
                /* choose lifts: columns of Z extending Q */
                BitMatrix cur = e.denom;
                BitMatrix reps(fc.space.dim(t), 0);
                for (int c = 0; c < Z.cols() && reps.cols() < dimE; ++c) {
                    BitMatrix zc = Z.column(c);
                    if (rank_increase(cur, zc) == 1) {
                        cur = cur.hconcat(zc);
                        reps = reps.hconcat(zc);
                    }
                }
                e.lifts = reps;
                pg.table.set(p, t - p, dimE, true);
                pg.entries[{p, t}] = e;
            }
        /* d_r maps */
        for (auto& [pt, e] : pg.entries) {
            auto [p, t] = pt;
            auto tgt = pg.entries.find({p - r, t - 1});
            BitMatrix m(tgt == pg.entries.end() ? 0 : tgt->second.dim(), e.dim());
            if (tgt != pg.entries.end()) {
                const BitMatrix& D = fc.d.block(t);
                for (int c = 0; c < e.dim(); ++c) {
                    std::vector<uint8_t> x = mat_col(e.lifts, c);
                    std::vector<uint8_t> dx = D.mul_vec(x);
                    /* express in [denom | lifts] of the target */
                    BitMatrix sys = tgt->second.denom.hconcat(tgt->second.lifts);
                    auto sol = solve(sys, dx);
                    if (!sol)
                        throw invariant_error("pages: d_r image not in target entry (p=" +
                                              std::to_string(p) + ",t=" + std::to_string(t) +
                                              ")");
                    for (int k = 0; k < tgt->second.dim(); ++k)
                        if ((*sol)[tgt->second.denom.cols() + k]) m.set(k, c, true);
                }
                if (!m.is_zero()) pg.measured_bidegree = {{-r, r - 1}};
            }
            pg.dr[pt] = m;
        }
        /* d_r o d_r = 0 */
        for (auto& [pt, m] : pg.dr) {
            auto [p, t] = pt;
            auto nxt = pg.dr.find({p - r, t - 1});
            if (nxt == pg.dr.end() || m.rows() == 0) continue;
            if (!nxt->second.mul(m).is_zero())
                throw invariant_error("pages: d_r^2 != 0 at p=" + std::to_string(p));
        }
        out.push_back(std::move(pg));
    }
    /* internal consistency: dim E^{r+1} = homology of (E^r, d_r) */
    for (size_t k = 0; k + 1 < out.size(); ++k) {
        const Page& a = out[k];
        const Page& b = out[k + 1];
        for (int p = pmin; p <= pmax; ++p)
            for (int t = tlo; t <= thi; ++t) {
                int na = a.table.dim(p, t - p);
                auto dout = a.dr.find({p, t});
                int rk_out = (dout != a.dr.end() && dout->second.rows()) ? rank(dout->second) : 0;
                auto din = a.dr.find({p + a.r, t + 1});
                int rk_in = 0;
                if (din != a.dr.end() && din->second.rows() == na && na > 0)
                    rk_in = rank(din->second);
                int expect = na - rk_out - rk_in;
                if (expect != b.table.dim(p, t - p))
                    throw invariant_error("pages: E^{r+1} != H(E^r) at (p,t)=(" +
                                          std::to_string(p) + "," + std::to_string(t) + ")");
            }
    }
    return out;
}

BigradedTable apply_hypothesized(const BigradedTable& table, const DifferentialPattern& pat) {
    BigradedTable out = table;
    out.provenance = "hypothesized";
    for (auto& e : pat.entries) {
        if (e.tgt_i - e.src_i != pat.di || e.tgt_j - e.src_j != pat.dj)
            throw std::invalid_argument("apply_hypothesized: entry bidegree mismatch with d_" +
                                        std::to_string(pat.r) + " = (" +
                                        std::to_string(pat.di) + "," + std::to_string(pat.dj) +
                                        ")");
        int s = out.dim(e.src_i, e.src_j), t = out.dim(e.tgt_i, e.tgt_j);
        if (e.rank > std::min(s, t))
            throw std::invalid_argument("apply_hypothesized: infeasible rank at (" +
                                        std::to_string(e.src_i) + "," +
                                        std::to_string(e.src_j) + ")");
        out.set(e.src_i, e.src_j, s - e.rank, out.is_certified(e.src_i, e.src_j));
        out.set(e.tgt_i, e.tgt_j, t - e.rank, out.is_certified(e.tgt_i, e.tgt_j));
    }
    return out;
}

EInftyReport e_infty_vs_target(const BigradedTable& final_page,
                               const std::map<int, int>& target_dims, int lo, int hi) {
    EInftyReport rep;
    auto tot = final_page.totals();
    for (int t = hi; t >= lo; --t) {
        int a = tot.count(t) ? tot.at(t) : 0;
        int b = target_dims.count(t) ? target_dims.at(t) : 0;
        std::ostringstream os;
        os << "total degree " << t << ": E_inf " << a << " vs target " << b
           << (a == b ? "  ok" : "  MISMATCH");
        rep.lines.push_back(os.str());
        if (a != b) rep.pass = false;
    }
    return rep;
}

GradedModule homology_module(const AInfModule& mod_in, const Chain& v_class,
                             const Chain& q_class, Precision p) {
    const AInfModule* mp = &mod_in;
    AInfModule rev;
    if (mod_in.side == Side::left) {
        rev = opposite(mod_in);
        mp = &rev;
    }
    const AInfModule& mod = *mp;
    HomologyData h = homology(mod.m1_map());
    GradedModule out;
    out.prec = p;
    out.space = h.H;
    out.actV = zero_map(out.space, out.space, -4);
    out.actQ = zero_map(out.space, out.space, -1);
    auto act = [&](const Chain& cls, GradedMap& dst, int sh) {
        for (auto& [d, n] : h.H.dims) {
            if (!h.H.dim(d + sh)) continue;
            BitMatrix& blk = dst.block_mut(d);
            for (int k = 0; k < n; ++k) {
                Chain prod = mod.apply_m_chains(2, {h.rep_chain(d, k), cls});
                if (prod.empty()) continue;
                auto c = h.to_H(prod, d + sh);
                for (int r = 0; r < (int)c.size(); ++r)
                    if (c[r]) blk.set(r, k, true);
            }
        }
    };
    act(v_class, out.actV, -4);
    act(q_class, out.actQ, -1);
    return out;
}

EmResult em_ss(const AInfModule& M, const AInfModule& N, const GradedModule& HM,
               const GradedModule& HN, int n_max, int r_max, int lo, int hi) {
    EmResult res;
    BoxTensorComplex box = box_tensor(M, N, n_max, lo, hi);
    FilteredComplex fc = filtered_from_box(box);
    res.pages_list = pages(fc, r_max);

    TorParams tp;
    tp.n_max = n_max;
    tp.lo = lo;
    tp.hi = hi;
    res.tor_table = tor(HM, HN, TorMethod::resolution, tp);

    if (res.pages_list.size() >= 2) {
        const Page& e2 = res.pages_list[1];
        for (auto& [ij, n] : res.tor_table.entries) {
            if (!res.tor_table.is_certified(ij.first, ij.second)) continue;
            /* box stage must exist and the degree must be box-certified */
            int t = ij.first + ij.second;
            if (ij.first > n_max - 1) continue;
            if (!box.degree_certified(t) || !box.degree_certified(t + 1)) continue;
            int got = e2.table.dim(ij.first, ij.second);
            if (got != n) {
                res.e2_matches_tor = false;
                res.mismatches.push_back("(" + std::to_string(ij.first) + "," +
                                         std::to_string(ij.second) + "): E2 " +
                                         std::to_string(got) + " vs Tor " + std::to_string(n));
            }
        }
        for (auto& [ij, e] : e2.entries) {
            int i = e.p, j = e.t - e.p;
            int t = e.t;
            if (!box.degree_certified(t) || !box.degree_certified(t + 1)) continue;
            if (!res.tor_table.is_certified(i, j)) continue;
            int want = res.tor_table.dim(i, j);
            if (want != e.dim()) {
                res.e2_matches_tor = false;
                res.mismatches.push_back("(" + std::to_string(i) + "," + std::to_string(j) +
                                         "): E2 " + std::to_string(e.dim()) + " vs Tor " +
                                         std::to_string(want));
            }
        }
    }
    return res;
}

namespace {

/* chain-level witness solve inside a module/algebra differential */
std::optional<Chain> witness(const GradedMap& d1, const Chain& v, int dv) {
    if (v.empty()) return Chain{};
    const BitMatrix& blk = d1.block(dv + 1);
    std::vector<uint8_t> rhs(blk.rows(), 0);
    for (auto& b : v) rhs[b.idx] ^= 1;
    auto x = solve(blk, rhs);
    if (!x) return std::nullopt;
    Chain out;
    for (int i = 0; i < (int)x->size(); ++i)
        if ((*x)[i]) out.push_back({dv + 1, i});
    return out;
}

std::optional<std::vector<uint8_t>> page_class(const Page& pg, int p, int t,
                                               const std::vector<uint8_t>& vec) {
    auto it = pg.entries.find({p, t});
    if (it == pg.entries.end()) {
        for (auto v : vec)
            if (v) return std::nullopt;
        return std::vector<uint8_t>{};
    }
    BitMatrix sys = it->second.denom.hconcat(it->second.lifts);
    auto sol = solve(sys, vec);
    if (!sol) return std::nullopt;
    std::vector<uint8_t> out(it->second.dim(), 0);
    for (int k = 0; k < it->second.dim(); ++k) out[k] = (*sol)[it->second.denom.cols() + k];
    return out;
}

std::vector<uint8_t> box_chain_vec(const BoxTensorComplex& box, const BoxChain& c, int deg) {
    std::vector<uint8_t> v(box.total_space().dim(deg), 0);
    for (auto& e : c) {
        int i = box.flat_index(e);
        if (i < 0) throw invariant_error("box chain leaves the window");
        v[i] ^= 1;
    }
    return v;
}

}  // namespace

MasseyBridgeReport massey_differential_check(const std::vector<Page>& pgs,
                                             const BoxTensorComplex& box,
                                             const BoxElement& word) {
    MasseyBridgeReport rep;
    const AInfModule& M = *box.M;
    const AInfModule& N = *box.N;
    const AInfAlgebra& A = *M.algebra;
    GradedMap dM = M.m1_map(), dN = N.m1_map(), dA = A.mu1_map();
    int n = (int)word.word.size();
    int t = word.degree();
    int p = n;

    /* list x, r_1..r_n, y: all consecutive products must vanish with witnesses */
    std::vector<Chain> s_mod_left;  // witness for m_2(x, r1) in M
    Chain x = {word.x}, y = {word.y};
    std::vector<Chain> rs;
    for (auto& r : word.word) rs.push_back({r});

    auto sxr = witness(dM, M.apply_m_chains(2, {x, rs.empty() ? Chain{} : rs[0]}),
                       word.x.deg + (n ? word.word[0].deg : 0));
    std::vector<std::optional<Chain>> s_mid(n ? n - 1 : 0);
    for (int i = 0; i + 1 < n; ++i)
        s_mid[i] = witness(dA, A.apply_mu_chains(2, {rs[i], rs[i + 1]}),
                           word.word[i].deg + word.word[i + 1].deg);
    std::optional<Chain> sry;
    if (n)
        sry = witness(dN, N.apply_m_chains(2, {rs[n - 1], y}), word.word[n - 1].deg + word.y.deg);
    bool ok = n >= 1 && sxr.has_value() && sry.has_value();
    for (auto& s : s_mid) ok = ok && s.has_value();
    if (!ok) {
        rep.detail = "formula not applicable: a consecutive product is nonzero";
        return rep;
    }
    rep.applicable = true;

    /* formula side: <x,r1,r2> (x) r3..y + sum x..<r_i,r_{i+1},r_{i+2}>..y
    ** + x..<r_{n-1},r_n,y>; each bracket evaluated with the witnesses above */
    std::map<BoxElement, int> acc;
    auto add_box = [&](const Chain& mx, const std::vector<Chain>& mid, const Chain& ny) {
        /* distribute chains into box elements */
        for (auto& bx : mx) {
            std::vector<std::vector<BasisRef>> words;
            std::function<void(size_t, std::vector<BasisRef>&)> rec =
                [&](size_t k, std::vector<BasisRef>& cur) {
                    if (k == mid.size()) {
                        for (auto& by : ny) {
                            BoxElement e;
                            e.x = bx;
                            e.word = cur;
                            e.y = by;
                            acc[e] ^= 1;
                        }
                        return;
                    }
                    for (auto& b : mid[k]) {
                        cur.push_back(b);
                        rec(k + 1, cur);
                        cur.pop_back();
                    }
                };
            std::vector<BasisRef> cur;
            rec(0, cur);
        }
    };

    if (n >= 2) {
        /* left bracket <x, r1, r2> in M */
        Chain br = M.apply_m_chains(3, {x, rs[0], rs[1]});
        br = chain_add(br, M.apply_m_chains(2, {*sxr, rs[1]}));
        br = chain_add(br, M.apply_m_chains(2, {x, *s_mid[0]}));
        std::vector<Chain> mid;
        for (int k = 2; k < n; ++k) mid.push_back(rs[k]);
        add_box(br, mid, y);
        /* right bracket <r_{n-1}, r_n, y> in N (left module) */
        Chain brr = N.apply_m_chains(3, {rs[n - 2], rs[n - 1], y});
        brr = chain_add(brr, N.apply_m_chains(2, {*s_mid[n - 2], y}));
        brr = chain_add(brr, N.apply_m_chains(2, {rs[n - 2], *sry}));
        std::vector<Chain> midr;
        for (int k = 0; k < n - 2; ++k) midr.push_back(rs[k]);
        add_box(x, midr, brr);
    }
    /* interior brackets */
    for (int i = 0; i + 2 < n; ++i) {
        Chain br = A.apply_mu_chains(3, {rs[i], rs[i + 1], rs[i + 2]});
        br = chain_add(br, A.apply_mu_chains(2, {*s_mid[i], rs[i + 2]}));
        br = chain_add(br, A.apply_mu_chains(2, {rs[i], *s_mid[i + 1]}));
        std::vector<Chain> mid;
        for (int k = 0; k < i; ++k) mid.push_back(rs[k]);
        mid.push_back(br);
        for (int k = i + 3; k < n; ++k) mid.push_back(rs[k]);
        add_box(x, mid, y);
    }
    BoxChain formula;
    for (auto& [e, c] : acc)
        if (c) formula.push_back(e);

    /* computed side: the d_2 matrix applied to the class of the word */
    if (pgs.size() < 2) {
        rep.detail = "need E^2";
        return rep;
    }
    const Page& e2 = pgs[1];
    auto cls = page_class(e2, p, t, box_chain_vec(box, {word}, t));
    if (!cls) {
        rep.detail = "word does not represent an E^2 class";
        return rep;
    }
    auto d2it = e2.dr.find({p, t});
    std::vector<uint8_t> computed;
    if (d2it != e2.dr.end() && d2it->second.rows()) {
        computed = d2it->second.mul_vec(*cls);
    }
    auto fcls = page_class(e2, p - 2, t - 1, box_chain_vec(box, formula, t - 1));
    if (!fcls) {
        rep.detail = "formula value does not lie in the E^2 entry";
        return rep;
    }
    std::vector<uint8_t> fv = *fcls;
    if (computed.empty()) computed.assign(fv.size(), 0);
    rep.matches = (computed == fv);
    std::ostringstream os;
    os << "computed d2 [";
    for (auto b : computed) os << int(b);
    os << "] vs formula [";
    for (auto b : fv) os << int(b);
    os << "]";
    rep.detail = os.str();
    return rep;
}

MasseyBridgeReport module_action_check(const std::vector<Page>& pgs,
                                       const BoxTensorComplex& box,
                                       const AInfModule& Mbimod, const Chain& r,
                                       const BoxElement& word) {
    MasseyBridgeReport rep;
    if (word.word.size() != 1) {
        rep.detail = "module action check expects [x | r1 | y]";
        return rep;
    }
    const AInfModule& M = *box.M;
    const AInfAlgebra& A = *M.algebra;
    GradedMap dM = M.m1_map(), dA = A.mu1_map();
    Chain x = {word.x}, r1 = {word.word[0]}, y = {word.y};

    /* products of consecutive elements of (r, x, r1, y): r.x uses the left
    ** bimodule action m_{2,1} */
    Chain rx = Mbimod.apply_mij(2, 1, {r, x});
    auto s_rx = witness(dM, rx, chain_degree(r) + word.x.deg);
    Chain xr1 = M.apply_m_chains(2, {x, r1});
    auto s_xr1 = witness(dM, xr1, word.x.deg + word.word[0].deg);
    if (!s_rx || !s_xr1) {
        rep.detail = "formula not applicable";
        return rep;
    }
    rep.applicable = true;

    /* <r, x, r1> = m_{2,2}(r, x, r1)-bracket: the triple product in M with r
    ** acting from the left: m3-analogue is m_{2,2}; corrections use the two
    ** witnesses */
    Chain br = Mbimod.apply_mij(2, 2, {r, x, r1});
    br = chain_add(br, M.apply_m_chains(2, {*s_rx, r1}));
    br = chain_add(br, Mbimod.apply_mij(2, 1, {r, *s_xr1}));

    /* action of r on the class of [x|r1|y] on the last page: computed via the
    ** induced left-module structure (filtration part 0 of m_2 action) */
    std::map<BoxElement, int> acc;
    for (auto& bx : br)
        for (auto& by : y) {
            BoxElement e;
            e.x = bx;
            e.word = {};
            e.y = by;
            acc[e] ^= 1;
        }
    BoxChain formula;
    for (auto& [e, c] : acc)
        if (c) formula.push_back(e);

    /* computed: m_2(r, [x|r1|y]) through the induced structure, projected to
    ** filtration 0 of the page */
    AInfModule induced = left_module_on_box(Mbimod, *box.N, box);
    int t = word.degree();
    std::vector<Chain> args = {r, {BasisRef{t, box.flat_index(word)}}};
    Chain img = induced.apply_m_chains(2, args);
    /* keep only the filtration-0 part (the associated-graded drop lands there) */
    BoxChain computed;
    for (auto& b : img) {
        const BoxElement& e = box.flat_element(b.deg, b.idx);
        if (e.word.empty()) computed.push_back(e);
    }
    std::sort(computed.begin(), computed.end());

    /* compare on E^2, where the rank-level action statement lives */
    const Page& last = pgs.size() >= 2 ? pgs[1] : pgs.back();
    int td = t + chain_degree(r);
    auto c1 = page_class(last, 0, td, box_chain_vec(box, computed, td));
    auto c2 = page_class(last, 0, td, box_chain_vec(box, formula, td));
    if (!c1 || !c2) {
        rep.detail = "classes do not lie on the page";
        return rep;
    }
    rep.matches = (*c1 == *c2);
    rep.detail = rep.matches ? "action matches <r,x,r1> (x) y" : "action mismatch";
    return rep;
}

}  // namespace pin2
