#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pin2 {

/* Thrown when a structural invariant fails (delta^2 != 0, action mismatch, ...).
** The message names the module and the offending degree. */
struct invariant_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Dense bit-packed matrix over F2, row-major, 64-bit words per row. */
class BitMatrix {
public:
    BitMatrix() : rows_(0), cols_(0), wpr_(0) {}
    BitMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), bits_(size_t(rows) * wpr_, 0) {
        if (rows < 0 || cols < 0)
            throw std::invalid_argument("BitMatrix: negative shape");
    }
    static BitMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const {
        return (word(r, c / 64) >> (c % 64)) & 1u;
    }
    void set(int r, int c, bool v) {
        uint64_t& w = word(r, c / 64);
        uint64_t m = uint64_t(1) << (c % 64);
        w = v ? (w | m) : (w & ~m);
    }
    void flip(int r, int c) { word(r, c / 64) ^= uint64_t(1) << (c % 64); }

    void xor_row_from(int dst, int src) {
        for (int w = 0; w < wpr_; ++w)
            bits_[size_t(dst) * wpr_ + w] ^= bits_[size_t(src) * wpr_ + w];
    }
    void swap_rows(int a, int b);

    bool row_is_zero(int r) const;
    bool is_zero() const;

    BitMatrix transpose() const;
    BitMatrix mul(const BitMatrix& rhs) const;
    BitMatrix operator+(const BitMatrix& rhs) const;
    bool operator==(const BitMatrix& rhs) const;

    std::vector<uint8_t> mul_vec(const std::vector<uint8_t>& x) const;

    /* Columns of `cols` appended on the right; rows must match. */
    BitMatrix hconcat(const BitMatrix& right) const;
    BitMatrix vconcat(const BitMatrix& below) const;
    BitMatrix column(int c) const;

private:
    uint64_t& word(int r, int w) { return bits_[size_t(r) * wpr_ + w]; }
    const uint64_t& word(int r, int w) const { return bits_[size_t(r) * wpr_ + w]; }

    int rows_, cols_, wpr_;
    std::vector<uint64_t> bits_;
};

int rank(const BitMatrix& m);

/* Columns form a basis of {x : m x = 0}; column count = cols - rank. */
BitMatrix kernel_basis(const BitMatrix& m);

/* Columns form a basis of the column space of m. */
BitMatrix image_basis(const BitMatrix& m);

/* One solution of m x = b, if any. Pivoting is deterministic (leftmost);
** pass a seed to permute the free-variable assignment (the solution then
** varies over the affine solution space, used by the Massey re-pivot trials). */
std::optional<std::vector<uint8_t>> solve(const BitMatrix& m, const std::vector<uint8_t>& b,
                                          uint64_t seed = 0);

/* rank of [A | B] minus rank of A, i.e. how much B adds to the column space. */
int rank_increase(const BitMatrix& a, const BitMatrix& b);

/* True iff the column spaces coincide. */
bool same_column_space(const BitMatrix& a, const BitMatrix& b);

/* Finite-window graded F2 vector space. dims vanish outside [lo, hi]. */
struct GradedVectorSpace {
    int lo = 0, hi = -1;
    std::map<int, int> dims;
    std::map<int, std::vector<std::string>> labels;  // optional, per-degree

    int dim(int d) const {
        auto it = dims.find(d);
        return it == dims.end() ? 0 : it->second;
    }
    void set_dim(int d, int n);
    int total_dim() const;
    bool in_window(int d) const { return lo <= d && d <= hi; }
};

/* Degree-homogeneous map between graded spaces: block in source degree d
** goes dim(d) -> dim(d + shift). Blocks are stored sparsely; a missing
** block is zero. */
struct GradedMap {
    GradedVectorSpace source, target;
    int shift = 0;
    std::map<int, BitMatrix> blocks;  // source degree -> (target.dim(d+shift) x source.dim(d))

    const BitMatrix& block(int d) const;  // materializes zero on demand
    BitMatrix& block_mut(int d);
    bool is_zero() const;
    void check_shapes(const std::string& who) const;
};

GradedMap compose(const GradedMap& g, const GradedMap& f);  // g after f
GradedMap add(const GradedMap& a, const GradedMap& b);
GradedMap zero_map(const GradedVectorSpace& src, const GradedVectorSpace& tgt, int shift);
GradedMap identity_map(const GradedVectorSpace& v);

/* Per-degree dim ker(d_out) - rank(d_in).  Requires d_out o d_in = 0; on
** violation throws invariant_error naming the degree. */
GradedVectorSpace homology_dims(const GradedMap& d_in, const GradedMap& d_out);

}  // namespace pin2
