#include "pin2homalg/gf2.hpp"

#include <algorithm>
#include <random>

namespace pin2 {

BitMatrix BitMatrix::identity(int n) {
    BitMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

void BitMatrix::swap_rows(int a, int b) {
    if (a == b) return;
    for (int w = 0; w < wpr_; ++w)
        std::swap(bits_[size_t(a) * wpr_ + w], bits_[size_t(b) * wpr_ + w]);
}

bool BitMatrix::row_is_zero(int r) const {
    for (int w = 0; w < wpr_; ++w)
        if (bits_[size_t(r) * wpr_ + w]) return false;
    return true;
}

bool BitMatrix::is_zero() const {
    for (uint64_t w : bits_)
        if (w) return false;
    return true;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int w = 0; w < wpr_; ++w) {
            uint64_t x = word(r, w);
            while (x) {
                int b = __builtin_ctzll(x);
                x &= x - 1;
                t.set(w * 64 + b, r, true);
            }
        }
    return t;
}

BitMatrix BitMatrix::mul(const BitMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("BitMatrix::mul: shape mismatch");
    BitMatrix out(rows_, rhs.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int w = 0; w < wpr_; ++w) {
            uint64_t x = word(r, w);
            while (x) {
                int b = __builtin_ctzll(x);
                x &= x - 1;
                int k = w * 64 + b;
                for (int ww = 0; ww < out.wpr_; ++ww)
                    out.bits_[size_t(r) * out.wpr_ + ww] ^= rhs.bits_[size_t(k) * rhs.wpr_ + ww];
            }
        }
    return out;
}

BitMatrix BitMatrix::operator+(const BitMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("BitMatrix::+: shape mismatch");
    BitMatrix out = *this;
    for (size_t i = 0; i < bits_.size(); ++i) out.bits_[i] ^= rhs.bits_[i];
    return out;
}

bool BitMatrix::operator==(const BitMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && bits_ == rhs.bits_;
}

std::vector<uint8_t> BitMatrix::mul_vec(const std::vector<uint8_t>& x) const {
    if ((int)x.size() != cols_)
        throw std::invalid_argument("BitMatrix::mul_vec: size mismatch");
    std::vector<uint8_t> out(rows_, 0);
    for (int c = 0; c < cols_; ++c)
        if (x[c])
            for (int r = 0; r < rows_; ++r) out[r] ^= get(r, c);
    return out;
}

BitMatrix BitMatrix::hconcat(const BitMatrix& right) const {
    if (rows_ != right.rows_)
        throw std::invalid_argument("hconcat: row mismatch");
    BitMatrix out(rows_, cols_ + right.cols_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c)
            if (get(r, c)) out.set(r, c, true);
        for (int c = 0; c < right.cols_; ++c)
            if (right.get(r, c)) out.set(r, cols_ + c, true);
    }
    return out;
}

BitMatrix BitMatrix::vconcat(const BitMatrix& below) const {
    if (cols_ != below.cols_)
        throw std::invalid_argument("vconcat: col mismatch");
    BitMatrix out(rows_ + below.rows_, cols_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (get(r, c)) out.set(r, c, true);
    for (int r = 0; r < below.rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (below.get(r, c)) out.set(rows_ + r, c, true);
    return out;
}

BitMatrix BitMatrix::column(int c) const {
    BitMatrix out(rows_, 1);
    for (int r = 0; r < rows_; ++r)
        if (get(r, c)) out.set(r, 0, true);
    return out;
}

namespace {

/* Row echelon form in place; returns pivot columns (leftmost-first). */
std::vector<int> echelon(BitMatrix& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m.get(i, c)) { p = i; break; }
        if (p < 0) continue;
        m.swap_rows(r, p);
        for (int i = 0; i < m.rows(); ++i)
            if (i != r && m.get(i, c)) m.xor_row_from(i, r);
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

int rank(const BitMatrix& m) {
    BitMatrix a = m;
    return (int)echelon(a).size();
}

BitMatrix kernel_basis(const BitMatrix& m) {
    BitMatrix a = m;
    std::vector<int> pivots = echelon(a);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;

    int nfree = m.cols() - (int)pivots.size();
    BitMatrix k(m.cols(), nfree);
    int kc = 0;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        k.set(c, kc, true);
        /* pivot rows: row i has pivot column pivots[i] */
        for (size_t i = 0; i < pivots.size(); ++i)
            if (a.get((int)i, c)) k.set(pivots[i], kc, true);
        ++kc;
    }
    return k;
}

BitMatrix image_basis(const BitMatrix& m) {
    BitMatrix a = m;
    std::vector<int> pivots = echelon(a);
    BitMatrix out(m.rows(), (int)pivots.size());
    for (size_t i = 0; i < pivots.size(); ++i)
        for (int r = 0; r < m.rows(); ++r)
            if (m.get(r, pivots[i])) out.set(r, (int)i, true);
    return out;
}

std::optional<std::vector<uint8_t>> solve(const BitMatrix& m, const std::vector<uint8_t>& b,
                                          uint64_t seed) {
    if ((int)b.size() != m.rows())
        throw std::invalid_argument("solve: rhs size mismatch");
    BitMatrix aug(m.rows(), m.cols() + 1);
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c)
            if (m.get(r, c)) aug.set(r, c, true);
        if (b[r]) aug.set(r, m.cols(), true);
    }
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (aug.get(i, c)) { p = i; break; }
        if (p < 0) continue;
        aug.swap_rows(r, p);
        for (int i = 0; i < m.rows(); ++i)
            if (i != r && aug.get(i, c)) aug.xor_row_from(i, r);
        pivots.push_back(c);
        ++r;
    }
    for (int i = r; i < m.rows(); ++i)
        if (aug.get(i, m.cols())) return std::nullopt;  // inconsistent

    std::vector<uint8_t> x(m.cols(), 0);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        for (int c = 0; c < m.cols(); ++c)
            if (!is_pivot[c]) x[c] = rng() & 1;
    }
    for (size_t i = 0; i < pivots.size(); ++i) {
        uint8_t v = aug.get((int)i, m.cols());
        for (int c = 0; c < m.cols(); ++c)
            if (!is_pivot[c] && x[c] && aug.get((int)i, c)) v ^= 1;
        x[pivots[i]] = v;
    }
    return x;
}

int rank_increase(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("rank_increase: row mismatch");
    return rank(a.hconcat(b)) - rank(a);
}

bool same_column_space(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows() != b.rows()) return false;
    int ra = rank(a), rb = rank(b);
    if (ra != rb) return false;
    return rank(a.hconcat(b)) == ra;
}

void GradedVectorSpace::set_dim(int d, int n) {
    if (n == 0)
        dims.erase(d);
    else
        dims[d] = n;
    if (lo > hi) { lo = hi = d; }
    lo = std::min(lo, d);
    hi = std::max(hi, d);
}

int GradedVectorSpace::total_dim() const {
    int t = 0;
    for (auto& [d, n] : dims) t += n;
    return t;
}

const BitMatrix& GradedMap::block(int d) const {
    static thread_local std::map<std::pair<int, int>, BitMatrix> zeros;
    auto it = blocks.find(d);
    if (it != blocks.end()) return it->second;
    auto key = std::make_pair(target.dim(d + shift), source.dim(d));
    auto z = zeros.find(key);
    if (z == zeros.end())
        z = zeros.emplace(key, BitMatrix(key.first, key.second)).first;
    return z->second;
}

BitMatrix& GradedMap::block_mut(int d) {
    auto it = blocks.find(d);
    if (it == blocks.end())
        it = blocks.emplace(d, BitMatrix(target.dim(d + shift), source.dim(d))).first;
    return it->second;
}

bool GradedMap::is_zero() const {
    for (auto& [d, b] : blocks)
        if (!b.is_zero()) return false;
    return true;
}

void GradedMap::check_shapes(const std::string& who) const {
    for (auto& [d, b] : blocks) {
        if (b.rows() != target.dim(d + shift) || b.cols() != source.dim(d))
            throw invariant_error(who + ": block shape mismatch at degree " + std::to_string(d));
    }
}

GradedMap compose(const GradedMap& g, const GradedMap& f) {
    GradedMap out;
    out.source = f.source;
    out.target = g.target;
    out.shift = f.shift + g.shift;
    for (auto& [d, fb] : f.blocks) {
        if (fb.is_zero()) continue;
        const BitMatrix& gb = g.block(d + f.shift);
        if (gb.rows() == 0 || gb.cols() == 0) continue;
        BitMatrix c = gb.mul(fb);
        if (!c.is_zero()) out.blocks[d] = c;
    }
    return out;
}

GradedMap add(const GradedMap& a, const GradedMap& b) {
    if (a.shift != b.shift)
        throw std::invalid_argument("GradedMap add: shift mismatch");
    GradedMap out = a;
    for (auto& [d, bb] : b.blocks) {
        auto it = out.blocks.find(d);
        if (it == out.blocks.end())
            out.blocks[d] = bb;
        else
            it->second = it->second + bb;
    }
    return out;
}

GradedMap zero_map(const GradedVectorSpace& src, const GradedVectorSpace& tgt, int shift) {
    GradedMap m;
    m.source = src;
    m.target = tgt;
    m.shift = shift;
    return m;
}

GradedMap identity_map(const GradedVectorSpace& v) {
    GradedMap m = zero_map(v, v, 0);
    for (auto& [d, n] : v.dims) m.blocks[d] = BitMatrix::identity(n);
    return m;
}

GradedVectorSpace homology_dims(const GradedMap& d_in, const GradedMap& d_out) {
    GradedVectorSpace h;
    h.lo = d_out.source.lo;
    h.hi = d_out.source.hi;
    /* composition must vanish blockwise */
    for (auto& [d, b] : d_in.blocks) {
        if (b.is_zero()) continue;
        BitMatrix c = d_out.block(d + d_in.shift).mul(b);
        if (!c.is_zero())
            throw invariant_error("homology_dims: d_out o d_in != 0 at degree " +
                                  std::to_string(d));
    }
    for (auto& [d, n] : d_out.source.dims) {
        int kq = n - rank(d_out.block(d));
        int im = rank(d_in.block(d - d_in.shift));
        int hd = kq - im;
        if (hd < 0)
            throw invariant_error("homology_dims: negative dimension at degree " +
                                  std::to_string(d));
        if (hd) h.dims[d] = hd;
    }
    return h;
}

}  // namespace pin2
