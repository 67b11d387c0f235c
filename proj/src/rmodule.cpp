#include "pin2homalg/rmodule.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace pin2 {

void Rat::normalize() {
    if (den == 0) throw std::invalid_argument("Rat: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
}

std::string Rat::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

GradedMap GradedModule::act_monomial(const Monomial& m) const {
    GradedMap r = identity_map(space);
    for (int i = 0; i < m.q; ++i) r = compose(actQ, r);
    for (int i = 0; i < m.v; ++i) r = compose(actV, r);
    return r;
}

ValidationReport validate(const GradedModule& m) {
    ValidationReport rep;
    try {
        m.actV.check_shapes("actV");
        m.actQ.check_shapes("actQ");
    } catch (const invariant_error& e) {
        rep.fail(e.what());
        return rep;
    }
    if (m.actV.shift != -4) rep.fail("actV degree is not -4");
    if (m.actQ.shift != -1) rep.fail("actQ degree is not -1");

    GradedMap q2 = compose(m.actQ, m.actQ);
    GradedMap q3 = compose(m.actQ, q2);
    for (auto& [d, b] : q3.blocks)
        if (!b.is_zero()) rep.fail("actQ^3 != 0 at degree " + std::to_string(d));

    GradedMap vq = compose(m.actV, m.actQ);
    GradedMap qv = compose(m.actQ, m.actV);
    for (auto& [d, n] : m.space.dims) {
        (void)n;
        if (!(vq.block(d) == qv.block(d)))
            rep.fail("actV actQ != actQ actV at degree " + std::to_string(d));
    }

    GradedMap vp = identity_map(m.space);
    for (int i = 0; i < m.prec.p; ++i) vp = compose(m.actV, vp);
    for (auto& [d, b] : vp.blocks)
        if (!b.is_zero()) rep.fail("actV^p != 0 at degree " + std::to_string(d));
    return rep;
}

GradedModule shift(const GradedModule& m, int k) {
    GradedModule out;
    out.prec = m.prec;
    out.offset = m.offset;
    out.space.lo = m.space.lo + k;
    out.space.hi = m.space.hi + k;
    for (auto& [d, n] : m.space.dims) out.space.dims[d + k] = n;
    for (auto& [d, ls] : m.space.labels) out.space.labels[d + k] = ls;
    out.actV = zero_map(out.space, out.space, -4);
    out.actQ = zero_map(out.space, out.space, -1);
    for (auto& [d, b] : m.actV.blocks) out.actV.blocks[d + k] = b;
    for (auto& [d, b] : m.actQ.blocks) out.actQ.blocks[d + k] = b;
    return out;
}

GradedModule tower_module(const std::vector<int>& bases,
                          const std::vector<std::array<int, 3>>& qpat, Precision p,
                          int window_lo, int window_hi,
                          const std::vector<std::string>& tower_names) {
    GradedModule m;
    m.prec = p;
    m.space.lo = window_lo;
    m.space.hi = window_hi;
    /* index of tower element (t, k) within its degree */
    std::map<std::pair<int, int>, std::pair<int, int>> pos;  // (t,k) -> (degree, index)
    for (int t = 0; t < (int)bases.size(); ++t)
        for (int k = 0; k < p.p; ++k) {
            int d = bases[t] - 4 * k;
            if (d < window_lo || d > window_hi) continue;
            int idx = m.space.dim(d);
            m.space.dims[d] = idx + 1;
            std::string nm = (t < (int)tower_names.size() ? tower_names[t]
                                                          : "t" + std::to_string(t));
            m.space.labels[d].push_back(nm + (k ? "*V^" + std::to_string(k) : ""));
            pos[{t, k}] = {d, idx};
        }
    m.actV = zero_map(m.space, m.space, -4);
    m.actQ = zero_map(m.space, m.space, -1);
    for (auto& [tk, di] : pos) {
        auto [t, k] = tk;
        auto [d, i] = di;
        auto tgt = pos.find({t, k + 1});
        if (tgt != pos.end()) m.actV.block_mut(d).set(tgt->second.second, i, true);
    }
    for (auto& pat : qpat) {
        int src = pat[0], dst = pat[1], vpow = pat[2];
        for (int k = 0; k < p.p; ++k) {
            auto s = pos.find({src, k});
            auto t = pos.find({dst, k + vpow});
            if (s == pos.end() || t == pos.end()) continue;
            m.actQ.block_mut(s->second.first).set(t->second.second, s->second.second, true);
        }
    }
    return m;
}

namespace {

GradedModule make_free_R(Precision p, int lo, int hi) {
    GradedModule m;
    m.prec = p;
    m.space.lo = lo;
    m.space.hi = hi;
    for (int d = hi; d >= lo; --d) {
        auto b = basis_in_degree(d, p);
        if (!b.empty()) {
            m.space.dims[d] = (int)b.size();
            for (auto& mon : b) m.space.labels[d].push_back(mon.str());
        }
    }
    m.actV = zero_map(m.space, m.space, -4);
    m.actQ = zero_map(m.space, m.space, -1);
    for (auto& [d, n] : m.space.dims) {
        (void)n;
        Monomial mon = basis_in_degree(d, p)[0];
        if (auto mv = mul_monomial(mon, Monomial{1, 0}, p); mv && m.space.dim(d - 4))
            m.actV.block_mut(d).set(0, 0, true);
        if (auto mq = mul_monomial(mon, Monomial{0, 1}, p); mq && m.space.dim(d - 1))
            m.actQ.block_mut(d).set(0, 0, true);
    }
    return m;
}

GradedModule make_hsbar(Precision /*p unused: two-sided V-tower*/, int lo, int hi) {
    GradedModule m;
    m.prec = Precision(1000000);  // V acts injectively on the bar ring within any window
    m.space.lo = lo;
    m.space.hi = hi;
    for (int d = hi; d >= lo; --d) {
        int q = ((-d) % 4 + 4) % 4;
        if (q <= 2) {
            m.space.dims[d] = 1;
            std::ostringstream os;
            os << "V^(" << (-d - q) / 4 << ")*Q^" << q;
            m.space.labels[d].push_back(os.str());
        }
    }
    m.actV = zero_map(m.space, m.space, -4);
    m.actQ = zero_map(m.space, m.space, -1);
    for (auto& [d, n] : m.space.dims) {
        (void)n;
        int q = ((-d) % 4 + 4) % 4;
        if (m.space.dim(d - 4)) m.actV.block_mut(d).set(0, 0, true);
        if (q < 2 && m.space.dim(d - 1)) m.actQ.block_mut(d).set(0, 0, true);
    }
    return m;
}

}  // namespace

CatalogueEntry catalogue(const std::string& name, Precision p, int lo, int hi) {
    CatalogueEntry e;
    e.name = name;
    if (name == "trivial_F") {
        e.module = tower_module({0}, {}, Precision(1), std::min(lo, 0), std::max(hi, 0), {"x"});
        e.module.prec = p;
        /* single class in degree 0, both actions zero */
        e.module.space.lo = lo;
        e.module.space.hi = hi;
        e.module.actV.source = e.module.actV.target = e.module.space;
        e.module.actQ.source = e.module.actQ.target = e.module.space;
    } else if (name == "free_R") {
        e.module = make_free_R(p, lo, hi);
    } else if (name == "M_2311") {
        e.module = tower_module({-2, -3, 0}, {{0, 1, 0}, {1, 2, 1}}, p, lo, hi);
    } else if (name == "N_2311") {
        e.module = tower_module({-4, -1, -2}, {{0, 1, 1}, {1, 2, 0}}, p, lo, hi);
    } else if (name == "HS_hat_Sigma2311") {
        GradedModule n = tower_module({-4, -1, -2}, {{0, 1, 1}, {1, 2, 0}}, p, lo - 1, hi - 1);
        e.module = shift(n, 1);
        e.annotations = CorrectionTerms{Rat(2), Rat(0), Rat(0)};
    } else if (name == "HSbar_ring") {
        e.module = make_hsbar(p, lo, hi);
    } else {
        throw std::invalid_argument("catalogue: unknown name " + name);
    }
    return e;
}

TensorFModule tensor_over_F(const GradedModule& m1, const GradedModule& m2) {
    if (!(m1.prec == m2.prec))
        throw std::invalid_argument("tensor_over_F: precision mismatch");
    TensorFModule t;
    t.prec = m1.prec;
    t.space.lo = m1.space.lo + m2.space.lo;
    t.space.hi = m1.space.hi + m2.space.hi;
    for (auto& [d1, n1] : m1.space.dims)
        for (auto& [d2, n2] : m2.space.dims) {
            int d = d1 + d2;
            for (int i = 0; i < n1; ++i)
                for (int j = 0; j < n2; ++j) t.pairs[d].push_back({d1, i, j});
        }
    for (auto& [d, v] : t.pairs) {
        std::sort(v.begin(), v.end());
        t.space.dims[d] = (int)v.size();
    }
    /* index lookup */
    auto index_of = [&](int d, int d1, int i, int j) -> int {
        auto& v = t.pairs.at(d);
        auto it = std::lower_bound(v.begin(), v.end(), std::array<int, 3>{d1, i, j});
        return (int)(it - v.begin());
    };
    auto build = [&](const GradedMap& act, bool left, int sh) {
        GradedMap g = zero_map(t.space, t.space, sh);
        for (auto& [d, v] : t.pairs) {
            int dt = d + sh;
            if (t.pairs.find(dt) == t.pairs.end()) continue;
            BitMatrix& b = g.block_mut(d);
            for (int col = 0; col < (int)v.size(); ++col) {
                auto [d1, i, j] = v[col];
                int d2 = d - d1;
                const BitMatrix& ab = act.block(left ? d1 : d2);
                if (left) {
                    for (int r = 0; r < ab.rows(); ++r)
                        if (ab.get(r, i)) b.set(index_of(dt, d1 + sh, r, j), col, true);
                } else {
                    for (int r = 0; r < ab.rows(); ++r)
                        if (ab.get(r, j)) b.set(index_of(dt, d1, i, r), col, true);
                }
            }
        }
        return g;
    };
    t.leftV = build(m1.actV, true, -4);
    t.leftQ = build(m1.actQ, true, -1);
    t.rightV = build(m2.actV, false, -4);
    t.rightQ = build(m2.actQ, false, -1);
    return t;
}

namespace {

/* Quotient of each graded piece by a subspace; keeps projection and lift. */
struct QuotientPres {
    std::map<int, BitMatrix> proj;  // T_d -> F^{qdim}
    std::map<int, BitMatrix> lift;  // F^{qdim} -> T_d
    GradedVectorSpace space;
};

QuotientPres quotient_by(const GradedVectorSpace& total,
                         const std::map<int, BitMatrix>& sub) {
    QuotientPres q;
    q.space.lo = total.lo;
    q.space.hi = total.hi;
    for (auto& [d, n] : total.dims) {
        BitMatrix s = sub.count(d) ? sub.at(d) : BitMatrix(n, 0);
        /* echelon of s: pivot rows get eliminated */
        BitMatrix e = s;
        std::vector<int> pivot_rows;
        {
            int r = 0;
            (void)r;
            /* column echelon: operate on transpose for row pivots */
            BitMatrix et = e.transpose();  // rows = s-columns
            int rr = 0;
            for (int c = 0; c < et.cols() && rr < et.rows(); ++c) {
                int p = -1;
                for (int i = rr; i < et.rows(); ++i)
                    if (et.get(i, c)) { p = i; break; }
                if (p < 0) continue;
                et.swap_rows(rr, p);
                for (int i = 0; i < et.rows(); ++i)
                    if (i != rr && et.get(i, c)) et.xor_row_from(i, rr);
                pivot_rows.push_back(c);
                ++rr;
            }
            e = et.transpose();  // reduced generators of sub, one pivot coord each
        }
        std::vector<bool> is_piv(n, false);
        for (int c : pivot_rows) is_piv[c] = true;
        int qdim = n - (int)pivot_rows.size();
        q.space.dims[d] = qdim;
        BitMatrix proj(qdim, n), lift(n, qdim);
        /* reduce each unit vector by the echelonized generators, then read
        ** off the non-pivot coordinates */
        int qi = 0;
        std::vector<int> free_rows;
        for (int r2 = 0; r2 < n; ++r2)
            if (!is_piv[r2]) free_rows.push_back(r2);
        for (int r2 : free_rows) {
            lift.set(r2, qi, true);
            ++qi;
        }
        for (int col = 0; col < n; ++col) {
            /* x = e_col; eliminate pivot coordinates using generators */
            std::vector<uint8_t> x(n, 0);
            x[col] = 1;
            for (size_t g = 0; g < pivot_rows.size(); ++g) {
                if (x[pivot_rows[g]]) {
                    for (int r2 = 0; r2 < n; ++r2) x[r2] ^= e.get(r2, (int)g);
                }
            }
            for (size_t fr = 0; fr < free_rows.size(); ++fr)
                if (x[free_rows[fr]]) proj.set((int)fr, col, true);
        }
        q.proj[d] = proj;
        q.lift[d] = lift;
    }
    for (auto it = q.space.dims.begin(); it != q.space.dims.end();)
        it = it->second == 0 ? q.space.dims.erase(it) : std::next(it);
    return q;
}

}  // namespace

GradedModule tensor_over_R(const GradedModule& m1, const GradedModule& m2) {
    TensorFModule t = tensor_over_F(m1, m2);
    /* relations: images of (leftV + rightV) and (leftQ + rightQ) */
    GradedMap relV = add(t.leftV, t.rightV);
    GradedMap relQ = add(t.leftQ, t.rightQ);
    std::map<int, BitMatrix> sub;
    for (auto& [d, n] : t.space.dims) {
        BitMatrix gens(n, 0);
        const BitMatrix& bv = relV.block(d + 4);
        if (bv.rows() == n && bv.cols() > 0) gens = gens.hconcat(bv);
        const BitMatrix& bq = relQ.block(d + 1);
        if (bq.rows() == n && bq.cols() > 0) gens = gens.hconcat(bq);
        if (gens.cols()) sub[d] = gens;
    }
    QuotientPres q = quotient_by(t.space, sub);

    GradedModule out;
    out.prec = m1.prec;
    out.offset = m1.offset + m2.offset;
    out.space = q.space;
    out.space.lo = t.space.lo;
    out.space.hi = t.space.hi;
    out.actV = zero_map(out.space, out.space, -4);
    out.actQ = zero_map(out.space, out.space, -1);
    auto induce = [&](const GradedMap& act, const GradedMap& other, GradedMap& dst) {
        for (auto& [d, n] : out.space.dims) {
            (void)n;
            if (!out.space.dim(d + dst.shift)) continue;
            if (!t.space.dim(d) || !t.space.dim(d + dst.shift)) continue;
            BitMatrix a = q.proj.at(d + dst.shift).mul(act.block(d).mul(q.lift.at(d)));
            BitMatrix b = q.proj.at(d + dst.shift).mul(other.block(d).mul(q.lift.at(d)));
            if (!(a == b))
                throw invariant_error("tensor_over_R: left/right actions differ in quotient at degree " +
                                      std::to_string(d));
            if (!a.is_zero()) dst.blocks[d] = a;
        }
    };
    induce(t.leftV, t.rightV, out.actV);
    induce(t.leftQ, t.rightQ, out.actQ);
    return out;
}

ValidationReport validate(const ModuleMorphism& f) {
    ValidationReport rep;
    GradedMap a = compose(f.map, f.source.actV);
    GradedMap b = compose(f.target.actV, f.map);
    for (auto& [d, n] : f.source.space.dims) {
        (void)n;
        if (!(a.block(d) == b.block(d)))
            rep.fail("morphism does not commute with V at degree " + std::to_string(d));
    }
    a = compose(f.map, f.source.actQ);
    b = compose(f.target.actQ, f.map);
    for (auto& [d, n] : f.source.space.dims) {
        (void)n;
        if (!(a.block(d) == b.block(d)))
            rep.fail("morphism does not commute with Q at degree " + std::to_string(d));
    }
    return rep;
}

InequalityReport check_sum_inequalities(const CorrectionTerms& y0, const CorrectionTerms& y1,
                                        const CorrectionTerms& s) {
    InequalityReport rep;
    auto line = [&](const std::string& name, bool ok) {
        rep.lines.emplace_back(name, ok);
        if (!ok) rep.pass = false;
    };
    Rat a0b1 = y0.alpha + y1.beta, b0g1 = y0.beta + y1.gamma;
    Rat a0g1 = y0.alpha + y1.gamma, b0b1 = y0.beta + y1.beta;
    Rat maxag = (a0g1 >= b0b1) ? a0g1 : b0b1;
    Rat minag = (a0g1 <= b0b1) ? a0g1 : b0b1;
    line("alpha(Y0)+alpha(Y1) >= alpha(sum)", s.alpha <= y0.alpha + y1.alpha);
    line("alpha(sum) >= max(alpha(Y0)+gamma(Y1), beta(Y0)+beta(Y1))", maxag <= s.alpha);
    line("alpha(Y0)+beta(Y1) >= beta(sum)", s.beta <= a0b1);
    line("beta(sum) >= beta(Y0)+gamma(Y1)", b0g1 <= s.beta);
    line("min(alpha(Y0)+gamma(Y1), beta(Y0)+beta(Y1)) >= gamma(sum)", s.gamma <= minag);
    line("gamma(sum) >= gamma(Y0)+gamma(Y1)", y0.gamma + y1.gamma <= s.gamma);
    return rep;
}

}  // namespace pin2
