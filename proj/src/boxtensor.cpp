#include "pin2homalg/boxtensor.hpp"

#include <algorithm>
#include <functional>

namespace pin2 {

bool BoxElement::operator<(const BoxElement& o) const {
    if (!(x == o.x)) return x < o.x;
    if (word != o.word) return word < o.word;
    return y < o.y;
}

bool BoxElement::operator==(const BoxElement& o) const {
    return x == o.x && word == o.word && y == o.y;
}

namespace {

void box_chain_add(std::map<BoxElement, int>& acc, const BoxElement& e) { acc[e] ^= 1; }

BoxChain collect(std::map<BoxElement, int>& acc) {
    BoxChain out;
    for (auto& [e, c] : acc)
        if (c) out.push_back(e);
    return out;
}

}  // namespace

BoxChain BoxTensorComplex::differential(const BoxElement& e) const {
    std::map<BoxElement, int> acc;
    int n = (int)e.word.size();
    const AInfAlgebra& A = *M->algebra;
    const AInfModule& MR = *M;  // right structure
    /* left terms: m_i(x, a_1..a_{i-1}) absorbing a prefix */
    for (int i = 1; i <= n + 1; ++i) {
        std::vector<BasisRef> args;
        args.push_back(e.x);
        for (int k = 0; k < i - 1; ++k) args.push_back(e.word[k]);
        Chain img = MR.side == Side::bimodule
                        ? [&] {
                              auto it = MR.mij.find({1, i});
                              if (it == MR.mij.end()) return Chain{};
                              const Chain* c = it->second.find(args);
                              return c ? *c : Chain{};
                          }()
                        : MR.apply_m(i, args);
        for (auto& b : img) {
            BoxElement t;
            t.x = b;
            t.word.assign(e.word.begin() + (i - 1), e.word.end());
            t.y = e.y;
            box_chain_add(acc, t);
        }
    }
    /* interior mu terms */
    for (int i = 1; i <= n; ++i)
        for (int l = 1; l + i - 1 <= n; ++l) {
            std::vector<BasisRef> inner(e.word.begin() + (l - 1), e.word.begin() + (l - 1 + i));
            Chain mid = A.apply_mu(i, inner);
            for (auto& b : mid) {
                BoxElement t = e;
                t.word.erase(t.word.begin() + (l - 1), t.word.begin() + (l - 1 + i));
                t.word.insert(t.word.begin() + (l - 1), b);
                box_chain_add(acc, t);
            }
        }
    /* right terms: m_i(a_{n-i+2}..a_n, y) absorbing a suffix (N is left) */
    for (int i = 1; i <= n + 1; ++i) {
        std::vector<BasisRef> args;
        for (int k = n - i + 1; k < n; ++k) args.push_back(e.word[k]);
        args.push_back(e.y);
        Chain img = N->apply_m(i, args);
        for (auto& b : img) {
            BoxElement t;
            t.x = e.x;
            t.word.assign(e.word.begin(), e.word.begin() + (n - i + 1));
            t.y = b;
            box_chain_add(acc, t);
        }
    }
    return collect(acc);
}

GradedVectorSpace BoxTensorComplex::total_space() const {
    GradedVectorSpace s;
    s.lo = lo;
    s.hi = hi;
    for (auto& st : stages)
        for (auto& [d, v] : st)
            if (!v.empty()) s.dims[d] += (int)v.size();
    return s;
}

int BoxTensorComplex::flat_index(const BoxElement& e) const {
    int d = e.degree();
    int off = 0;
    int n = (int)e.word.size();
    for (int st = 0; st < n; ++st) {
        auto it = stages[st].find(d);
        if (it != stages[st].end()) off += (int)it->second.size();
    }
    auto it = stages[n].find(d);
    if (it == stages[n].end()) return -1;
    auto& v = it->second;
    auto p = std::lower_bound(v.begin(), v.end(), e);
    if (p == v.end() || !(*p == e)) return -1;
    return off + (int)(p - v.begin());
}

const BoxElement& BoxTensorComplex::flat_element(int deg, int idx) const {
    for (auto& st : stages) {
        auto it = st.find(deg);
        if (it == st.end()) continue;
        if (idx < (int)it->second.size()) return it->second[idx];
        idx -= (int)it->second.size();
    }
    throw std::out_of_range("flat_element");
}

GradedMap BoxTensorComplex::total_differential() const {
    GradedVectorSpace s = total_space();
    GradedMap d = zero_map(s, s, -1);
    for (auto& st : stages)
        for (auto& [deg, v] : st)
            for (auto& e : v) {
                int c = flat_index(e);
                for (auto& t : differential(e)) {
                    int r = flat_index(t);
                    if (r >= 0) d.block_mut(deg).set(r, c, true);
                }
            }
    return d;
}

GradedVectorSpace BoxTensorComplex::homology_dims_total() const {
    GradedMap d = total_differential();
    GradedVectorSpace h;
    h.lo = lo;
    h.hi = hi;
    GradedVectorSpace s = total_space();
    for (auto& [deg, n] : s.dims) {
        int kq = n - rank(d.block(deg));
        int im = rank(d.block(deg + 1));
        int v = kq - im;
        if (v) h.dims[deg] = v;
    }
    return h;
}

bool BoxTensorComplex::degree_certified(int t) const {
    /* a longer word at this degree would need stage n_max+1; possible only if
    ** there is word-content of every length up to n_max+1 at this degree.
    ** Stage n elements have degree >= loM + loN + n*(lowest slot weight); the
    ** unit slot weighs +1, so degrees can climb: be conservative and require
    ** that stage n_max at [t-1, t+1] is empty. */
    auto& top = stages[n_max];
    for (int dd = t - 1; dd <= t + 1; ++dd)
        if (top.count(dd) && !top.at(dd).empty()) return false;
    return true;
}

BoxTensorComplex box_tensor(const AInfModule& M, const AInfModule& N, int n_max, int lo,
                            int hi) {
    if (M.algebra.get() != N.algebra.get())
        throw std::invalid_argument("box_tensor: different underlying algebras");
    if (M.side == Side::left || N.side != Side::left)
        throw std::invalid_argument("box_tensor: need a right (or bi-) module and a left module");
    {
        CheckReport cm = M.side == Side::bimodule
                             ? check_bimodule_relations(M, n_max)
                             : check_module_relations(M, n_max);
        if (!cm.pass) throw invariant_error("box_tensor: left input fails relations: " + cm.message);
        CheckReport cn = check_module_relations(N, n_max);
        if (!cn.pass)
            throw invariant_error("box_tensor: right input fails relations: " + cn.message);
    }
    BoxTensorComplex b;
    b.M = &M;
    b.N = &N;
    b.n_max = n_max;
    b.lo = lo;
    b.hi = hi;
    b.stages.resize(n_max + 1);

    const AInfAlgebra& A = *M.algebra;
    std::vector<BasisRef> abasis;
    for (auto& [d, n] : A.space.dims)
        for (int i = 0; i < n; ++i) abasis.push_back({d, i});

    /* stage n words enumerated with slot weights deg+1 */
    std::vector<BasisRef> word;
    for (int n = 0; n <= n_max; ++n) {
        for (auto& [dm, nm] : M.space.dims)
            for (auto& [dn, nn] : N.space.dims) {
                std::function<void(int, int)> rec = [&](int k, int wsum) {
                    if (k == n) {
                        int deg = dm + dn + wsum;
                        if (deg < lo || deg > hi) return;
                        for (int im = 0; im < nm; ++im)
                            for (int in = 0; in < nn; ++in) {
                                BoxElement e;
                                e.x = {dm, im};
                                e.word = word;
                                e.y = {dn, in};
                                b.stages[n][deg].push_back(e);
                            }
                        return;
                    }
                    for (auto& a : abasis) {
                        int w = a.deg + 1;
                        /* remaining slots each add at most +1 */
                        if (dm + dn + wsum + w + (n - k - 1) < lo) continue;
                        word.push_back(a);
                        rec(k + 1, wsum + w);
                        word.pop_back();
                    }
                };
                rec(0, 0);
            }
        for (auto& [d, v] : b.stages[n]) std::sort(v.begin(), v.end());
    }

    /* d^2 = 0 on every basis element */
    for (auto& st : b.stages)
        for (auto& [deg, v] : st)
            for (auto& e : v) {
                std::map<BoxElement, int> acc;
                for (auto& t : b.differential(e)) {
                    if (t.degree() < lo) continue;
                    for (auto& t2 : b.differential(t)) acc[t2] ^= 1;
                }
                for (auto& [t2, c] : acc)
                    if (c && t2.degree() >= lo + 2)
                        throw invariant_error("box_tensor: d^2 != 0 at degree " +
                                              std::to_string(deg));
            }
    return b;
}

AInfModule left_module_on_box(const AInfModule& Mbimod, const AInfModule& N,
                              const BoxTensorComplex& box) {
    if (Mbimod.side != Side::bimodule)
        throw std::invalid_argument("left_module_on_box: M must be a bimodule");
    AInfModule out;
    out.side = Side::left;
    out.space = box.total_space();
    out.algebra = Mbimod.algebra;
    const AInfAlgebra& A = *Mbimod.algebra;

    /* m_1 = the box differential */
    OpTable m1;
    for (auto& st : box.stages)
        for (auto& [deg, v] : st)
            for (auto& e : v) {
                Chain img;
                for (auto& t : box.differential(e)) {
                    int r = box.flat_index(t);
                    if (r >= 0) img.push_back({t.degree(), r});
                }
                std::sort(img.begin(), img.end());
                if (!img.empty()) m1.entries[{BasisRef{deg, box.flat_index(e)}}] = img;
            }
    out.m[1] = m1;

    /* m_n(a_1..a_{n-1}, xi), left-keyed: (a_1..a_{n-1}, xi) */
    std::vector<BasisRef> abasis;
    for (auto& [d, n] : A.space.dims)
        for (int i = 0; i < n; ++i) abasis.push_back({d, i});
    for (int n = 2; n <= box.n_max + 1; ++n) {
        OpTable t;
        std::vector<BasisRef> as(n - 1);
        std::function<void(int)> rec = [&](int k) {
            if (k == n - 1) {
                for (auto& st : box.stages)
                    for (auto& [deg, v] : st)
                        for (auto& e : v) {
                            std::map<BoxElement, int> acc;
                            int klen = (int)e.word.size();
                            for (int l = 1; l <= klen + 1; ++l) {
                                std::vector<BasisRef> args;
                                for (auto& a : as) args.push_back(a);
                                args.push_back(e.x);
                                for (int q = 0; q < l - 1; ++q) args.push_back(e.word[q]);
                                auto tab = Mbimod.mij.find({n, l});
                                if (tab == Mbimod.mij.end()) continue;
                                const Chain* mid = tab->second.find(args);
                                if (!mid) continue;
                                for (auto& b2 : *mid) {
                                    BoxElement o;
                                    o.x = b2;
                                    o.word.assign(e.word.begin() + (l - 1), e.word.end());
                                    o.y = e.y;
                                    acc[o] ^= 1;
                                }
                            }
                            Chain img;
                            for (auto& [o, c] : acc)
                                if (c) {
                                    int r = box.flat_index(o);
                                    if (r >= 0) img.push_back({o.degree(), r});
                                }
                            std::sort(img.begin(), img.end());
                            if (!img.empty()) {
                                std::vector<BasisRef> key = as;
                                key.push_back({deg, box.flat_index(e)});
                                t.entries[key] = img;
                            }
                        }
                return;
            }
            for (auto& a : abasis) {
                as[k] = a;
                rec(k + 1);
            }
        };
        rec(0);
        if (!t.empty()) out.m[n] = t;
    }
    return out;
}

/* ---- mapping cones ---- */

namespace {

/* cone space: target at degree d first, then source at degree d-1 */
GradedVectorSpace cone_space(const GradedVectorSpace& tgt, const GradedVectorSpace& src,
                             int src_shift, std::map<int, int>& split) {
    GradedVectorSpace s;
    s.lo = std::min(tgt.lo, src.lo + src_shift);
    s.hi = std::max(tgt.hi, src.hi + src_shift);
    for (int d = s.lo; d <= s.hi; ++d) {
        int nt = tgt.dim(d), ns = src.dim(d - src_shift);
        if (nt + ns == 0) continue;
        s.dims[d] = nt + ns;
        split[d] = nt;
    }
    return s;
}

}  // namespace

GradedMap MappingCone::inclusion() const {
    GradedMap m = zero_map(target_space, module.space, 0);
    for (auto& [d, n] : target_space.dims) {
        BitMatrix& b = m.block_mut(d);
        for (int i = 0; i < n; ++i) b.set(i, i, true);
    }
    return m;
}

GradedMap MappingCone::projection() const {
    GradedVectorSpace shifted;  // source<1>
    shifted.lo = source_space.lo + 1;
    shifted.hi = source_space.hi + 1;
    for (auto& [d, n] : source_space.dims) shifted.dims[d + 1] = n;
    GradedMap m = zero_map(module.space, shifted, 0);
    for (auto& [d, n] : module.space.dims) {
        int sp = split.count(d) ? split.at(d) : n;
        if (n - sp <= 0) continue;
        BitMatrix& b = m.block_mut(d);
        for (int i = sp; i < n; ++i) b.set(i - sp, i, true);
    }
    return m;
}

bool MappingCone::is_acyclic() const {
    HomologyData h = homology(module.m1_map());
    /* ignore the window edges where the differential is cut off */
    for (auto& [d, n] : h.H.dims)
        if (n && d > module.space.lo + 1 && d < module.space.hi) return false;
    return true;
}

MappingCone mapping_cone(const AInfMorphism& f, int n_max) {
    CheckReport cf = check_morphism(f, n_max);
    if (!cf.pass) throw invariant_error("mapping_cone: morphism check fails: " + cf.message);
    const AInfModule& S = *f.source;
    const AInfModule& T = *f.target;
    MappingCone cone;
    cone.target_space = T.space;
    cone.source_space = S.space;
    cone.module.side = Side::right;
    cone.module.algebra = T.algebra;
    cone.module.space = cone_space(T.space, S.space, 1, cone.split);

    const AInfAlgebra& A = *T.algebra;
    std::vector<BasisRef> abasis;
    for (auto& [d, n] : A.space.dims)
        for (int i = 0; i < n; ++i) abasis.push_back({d, i});

    auto to_cone_t = [&](const Chain& c) {  // target chain -> cone chain
        Chain out;
        for (auto& b : c) out.push_back({b.deg, b.idx});
        std::sort(out.begin(), out.end());
        return out;
    };
    auto to_cone_s = [&](const Chain& c) {  // source chain -> cone chain (degree +1)
        Chain out;
        for (auto& b : c) {
            int d = b.deg + 1;
            int sp = cone.split.count(d) ? cone.split.at(d) : 0;
            out.push_back({d, sp + b.idx});
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    int op_max = n_max + 1;
    for (int n = 1; n <= op_max; ++n) {
        OpTable t;
        std::vector<BasisRef> as(n - 1);
        std::function<void(int)> rec = [&](int k) {
            if (k == n - 1) {
                for (auto& [d, nn] : cone.module.space.dims) {
                    int sp = cone.split.count(d) ? cone.split.at(d) : nn;
                    for (int i = 0; i < nn; ++i) {
                        Chain img;
                        if (i < sp) {
                            std::vector<Chain> args;
                            args.push_back({BasisRef{d, i}});
                            for (auto& a : as) args.push_back({a});
                            img = to_cone_t(T.apply_m_chains(n, args));
                        } else {
                            BasisRef src{d - 1, i - sp};
                            std::vector<Chain> args;
                            args.push_back({src});
                            for (auto& a : as) args.push_back({a});
                            Chain ft = f.apply_f(n, args);
                            Chain ms = S.apply_m_chains(n, args);
                            img = chain_add(to_cone_t(ft), to_cone_s(ms));
                        }
                        if (!img.empty()) {
                            std::vector<BasisRef> key;
                            key.push_back({d, i});
                            key.insert(key.end(), as.begin(), as.end());
                            t.entries[key] = img;
                        }
                    }
                }
                return;
            }
            for (auto& a : abasis) {
                as[k] = a;
                rec(k + 1);
            }
        };
        rec(0);
        if (!t.empty()) cone.module.m[n] = t;
    }

    /* d^2 = 0 */
    GradedMap d1 = cone.module.m1_map();
    GradedMap dd = compose(d1, d1);
    for (auto& [d, b] : dd.blocks)
        if (!b.is_zero())
            throw invariant_error("mapping_cone: d^2 != 0 at degree " + std::to_string(d));
    CheckReport cm = check_module_relations(cone.module, n_max);
    if (!cm.pass)
        throw invariant_error("mapping_cone: cone fails module relations: " + cm.message);
    return cone;
}

namespace {

/* induced map on homology: per degree, matrix of g_* */
std::map<int, BitMatrix> induced_on_H(const GradedMap& g, const HomologyData& hs,
                                      const HomologyData& ht) {
    std::map<int, BitMatrix> out;
    for (auto& [d, n] : hs.H.dims) {
        int dt = d + g.shift;
        BitMatrix m(ht.H.dim(dt), n);
        for (int k = 0; k < n; ++k) {
            Chain rep = hs.rep_chain(d, k);
            std::vector<uint8_t> vec(g.source.dim(d), 0);
            for (auto& b : rep) vec[b.idx] ^= 1;
            std::vector<uint8_t> img = g.block(d).mul_vec(vec);
            Chain ic;
            for (int r = 0; r < (int)img.size(); ++r)
                if (img[r]) ic.push_back({dt, r});
            if (ic.empty()) continue;
            auto cls = ht.to_H(ic, dt);
            for (int r = 0; r < (int)cls.size(); ++r)
                if (cls[r]) m.set(r, k, true);
        }
        out[d] = m;
    }
    return out;
}

}  // namespace

TriangleReport cone_triangle_exact(const MappingCone& cone, const AInfMorphism& f) {
    TriangleReport rep;
    const AInfModule& S = *f.source;
    const AInfModule& T = *f.target;
    HomologyData hC = homology(cone.module.m1_map());
    HomologyData hT = homology(T.m1_map());
    HomologyData hS = homology(S.m1_map());

    GradedMap inc = cone.inclusion();
    GradedMap proj = cone.projection();
    /* delta: H(source<1>)_d = H(source)_{d-1} -> H(target)_{d-1} via f_1 */
    GradedMap f1 = zero_map(S.space, T.space, 0);
    if (f.f.count(1))
        for (auto& [key, out] : f.f.at(1).entries)
            for (auto& b : out) f1.block_mut(key[0].deg).set(b.idx, key[0].idx, true);

    auto iH = induced_on_H(inc, hT, hC);
    /* projection: cone -> source<1>; build homology of source<1> by reindex */
    HomologyData hS1;
    hS1.H.lo = hS.H.lo + 1;
    hS1.H.hi = hS.H.hi + 1;
    for (auto& [d, n] : hS.H.dims) hS1.H.dims[d + 1] = n;
    for (auto& [d, m] : hS.reps) hS1.reps[d + 1] = m;
    for (auto& [d, m] : hS.boundaries) hS1.boundaries[d + 1] = m;
    /* proj as a map into the shifted space */
    auto pH = induced_on_H(proj, hC, hS1);
    auto fH = induced_on_H(f1, hS, hT);

    int lo = cone.module.space.lo + 2, hi = cone.module.space.hi - 1;
    for (int d = lo; d <= hi; ++d) {
        /* at H(cone)_d: im iH == ker pH */
        {
            BitMatrix i_img = iH.count(d) ? iH.at(d) : BitMatrix(hC.H.dim(d), 0);
            BitMatrix p_ker = pH.count(d) ? kernel_basis(pH.at(d))
                                          : BitMatrix::identity(hC.H.dim(d));
            if (!same_column_space(image_basis(i_img), image_basis(p_ker)))
                rep.failures.push_back("H(cone) exactness fails at degree " + std::to_string(d));
        }
        /* at H(source<1>)_d: im pH == ker (f_*) (shift the f map) */
        {
            int n = hS1.H.dim(d);
            BitMatrix p_img = pH.count(d) ? image_basis(pH.at(d)) : BitMatrix(n, 0);
            BitMatrix fker = fH.count(d - 1) ? kernel_basis(fH.at(d - 1)) : BitMatrix::identity(n);
            if (!same_column_space(p_img, image_basis(fker)))
                rep.failures.push_back("H(source) exactness fails at degree " +
                                       std::to_string(d));
        }
        /* at H(target)_d: im f_* == ker iH */
        {
            int n = hT.H.dim(d);
            BitMatrix f_img = fH.count(d) ? image_basis(fH.at(d)) : BitMatrix(n, 0);
            BitMatrix iker = iH.count(d) ? kernel_basis(iH.at(d)) : BitMatrix::identity(n);
            if (!same_column_space(f_img, image_basis(iker)))
                rep.failures.push_back("H(target) exactness fails at degree " +
                                       std::to_string(d));
        }
    }
    rep.exact = rep.failures.empty();
    return rep;
}

MappingCone iterated_cone(const AInfMorphism& f1, const AInfMorphism& f2, const AInfHomotopy& h,
                          int n_max) {
    const AInfModule& C1 = *f1.source;
    const AInfModule& C2 = *f1.target;
    const AInfModule& C3 = *f2.target;
    if (f2.source != f1.target)
        throw std::invalid_argument("iterated_cone: f2 must start where f1 ends");
    {
        AInfMorphism comp = compose(f2, f1);
        AInfMorphism zero = zero_morphism(C1, C3);
        CheckReport ch = check_homotopy(comp, zero, h, n_max);
        if (!ch.pass)
            throw invariant_error("iterated_cone: h is not a nullhomotopy of f2 o f1: " +
                                  ch.message);
    }
    MappingCone cone;
    cone.module.side = Side::right;
    cone.module.algebra = C3.algebra;
    /* space: C3 at d, C2 at d-1, C1 at d-2 */
    GradedVectorSpace s;
    s.lo = std::min({C3.space.lo, C2.space.lo + 1, C1.space.lo + 2});
    s.hi = std::max({C3.space.hi, C2.space.hi + 1, C1.space.hi + 2});
    std::map<int, std::array<int, 3>> off;
    for (int d = s.lo; d <= s.hi; ++d) {
        int n3 = C3.space.dim(d), n2 = C2.space.dim(d - 1), n1 = C1.space.dim(d - 2);
        if (n3 + n2 + n1 == 0) continue;
        s.dims[d] = n3 + n2 + n1;
        off[d] = {0, n3, n3 + n2};
    }
    cone.module.space = s;
    cone.target_space = C3.space;
    cone.source_space = C1.space;
    for (auto& [d, o] : off) cone.split[d] = o[1];

    const AInfAlgebra& A = *C3.algebra;
    std::vector<BasisRef> abasis;
    for (auto& [d, n] : A.space.dims)
        for (int i = 0; i < n; ++i) abasis.push_back({d, i});

    auto place = [&](const Chain& c, int which, int shift) {
        Chain out;
        for (auto& b : c) {
            int d = b.deg + shift;
            auto it = off.find(d);
            if (it == off.end()) continue;
            out.push_back({d, it->second[which] + b.idx});
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    for (int n = 1; n <= n_max + 1; ++n) {
        OpTable t;
        std::vector<BasisRef> as(n - 1);
        std::function<void(int)> rec = [&](int k) {
            if (k == n - 1) {
                for (auto& [d, nn] : s.dims) {
                    auto o = off.at(d);
                    for (int i = 0; i < nn; ++i) {
                        Chain img;
                        std::vector<Chain> args;
                        if (i < o[1]) {
                            args.push_back({BasisRef{d, i}});
                            for (auto& a : as) args.push_back({a});
                            img = place(C3.apply_m_chains(n, args), 0, 0);
                        } else if (i < o[2]) {
                            BasisRef src{d - 1, i - o[1]};
                            args.push_back({src});
                            for (auto& a : as) args.push_back({a});
                            img = chain_add(place(f2.apply_f(n, args), 0, 0),
                                            place(C2.apply_m_chains(n, args), 1, 1));
                        } else {
                            BasisRef src{d - 2, i - o[2]};
                            args.push_back({src});
                            for (auto& a : as) args.push_back({a});
                            img = chain_add(place(h.apply_h(n, args), 0, 0),
                                            chain_add(place(f1.apply_f(n, args), 1, 1),
                                                      place(C1.apply_m_chains(n, args), 2, 2)));
                        }
                        if (!img.empty()) {
                            std::vector<BasisRef> key;
                            key.push_back({d, i});
                            key.insert(key.end(), as.begin(), as.end());
                            t.entries[key] = img;
                        }
                    }
                }
                return;
            }
            for (auto& a : abasis) {
                as[k] = a;
                rec(k + 1);
            }
        };
        rec(0);
        if (!t.empty()) cone.module.m[n] = t;
    }

    GradedMap d1 = cone.module.m1_map();
    GradedMap dd = compose(d1, d1);
    for (auto& [d, b] : dd.blocks)
        if (!b.is_zero())
            throw invariant_error("iterated_cone: d^2 != 0 at degree " + std::to_string(d));
    return cone;
}

}  // namespace pin2
