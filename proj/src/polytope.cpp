#include "pin2homalg/polytope.hpp"

#include <algorithm>
#include <functional>

namespace pin2 {

bool compatible(const Interval& a, const Interval& b) {
    bool disjoint = a.hi < b.lo || b.hi < a.lo;
    bool nested = (a.lo <= b.lo && b.hi <= a.hi) || (b.lo <= a.lo && a.hi <= b.hi);
    return disjoint || nested;
}

std::vector<Interval> proper_intervals(int n) {
    std::vector<Interval> out;
    for (int len = 2; len <= n - 1; ++len)
        for (int lo = 0; lo + len - 1 <= n - 1; ++lo) out.push_back({lo, lo + len - 1});
    return out;
}

std::string Face::parenthesization() const {
    /* derived view: letters 0..n-1 with one parenthesis per interval */
    std::string s;
    for (int i = 0; i < n; ++i) {
        for (auto& iv : intervals)
            if (iv.lo == i) s += "(";
        s += ('a' + (i % 26));
        for (auto& iv : intervals)
            if (iv.hi == i) s += ")";
    }
    return s;
}

std::vector<KFacet> facets_K(int n) {
    std::vector<KFacet> out;
    for (auto& iv : proper_intervals(n))
        out.push_back({iv, iv.length(), n - iv.length() + 1});
    return out;
}

std::vector<Face> face_lattice_K(int n) {
    std::vector<Interval> ivs = proper_intervals(n);
    std::vector<Face> out;
    std::vector<Interval> cur;
    std::function<void(size_t)> rec = [&](size_t start) {
        Face f;
        f.n = n;
        f.intervals = cur;
        out.push_back(f);
        for (size_t k = start; k < ivs.size(); ++k) {
            bool ok = true;
            for (auto& c : cur)
                if (!compatible(c, ivs[k])) { ok = false; break; }
            if (!ok) continue;
            cur.push_back(ivs[k]);
            rec(k + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

std::vector<long long> f_vector_K(int n) {
    std::vector<long long> f(std::max(0, n - 1), 0);
    for (auto& face : face_lattice_K(n)) {
        int d = face.dim();
        if (d >= 0 && d < (int)f.size()) f[d] += 1;
    }
    return f;
}

std::vector<Face> cube_decomposition_K(int n) {
    std::vector<Face> out;
    for (auto& f : face_lattice_K(n))
        if (f.codim() == n - 2) out.push_back(f);
    return out;
}

long long catalan(int n) {
    long long c = 1;
    for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

std::string MultiplihedronFace::str() const {
    std::string s;
    if (kind == 1) {
        s = "K" + std::to_string(parts.size()) + "(";
        for (size_t k = 0; k < parts.size(); ++k) {
            if (k) s += ",";
            s += "J" + std::to_string(parts[k]);
        }
        s += ")";
    } else {
        s = "J" + std::to_string(n - e + 1) + " with K" + std::to_string(e) + " at " +
            std::to_string(pos);
    }
    return s;
}

std::vector<MultiplihedronFace> facets_J(int n) {
    std::vector<MultiplihedronFace> out;
    /* kind 1: ordered compositions with >= 2 parts */
    std::vector<int> parts;
    std::function<void(int)> rec = [&](int rem) {
        if (rem == 0) {
            if (parts.size() >= 2) {
                MultiplihedronFace f;
                f.n = n;
                f.kind = 1;
                f.parts = parts;
                out.push_back(f);
            }
            return;
        }
        for (int k = 1; k <= rem; ++k) {
            parts.push_back(k);
            rec(rem - k);
            parts.pop_back();
        }
    };
    rec(n);
    /* kind 2: K_e block at a position */
    for (int e = 2; e <= n; ++e)
        for (int pos = 0; pos + e <= n; ++pos) {
            MultiplihedronFace f;
            f.n = n;
            f.kind = 2;
            f.pos = pos;
            f.e = e;
            out.push_back(f);
        }
    return out;
}

std::vector<RelationTerm> relation_terms(int n) {
    std::vector<RelationTerm> out;
    for (int j = 1; j <= n; ++j) {
        int i = n + 1 - j;
        for (int l = 1; l <= i; ++l) out.push_back({i, j, l});
    }
    return out;
}

}  // namespace pin2
