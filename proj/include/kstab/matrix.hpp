// Dense matrices over Q and the exact elimination routines the rest of the
// library is built on. Pivot selection is fixed (leftmost nonzero column,
// topmost nonzero row) so every result is reproducible bit for bit.
#pragma once

#include "kstab/rational.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace kstab {

class QMatrix {
  public:
    QMatrix() = default;
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }

    static QMatrix identity(int k) {
        QMatrix m(k, k);
        for (int i = 0; i < k; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Rat& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    std::vector<Rat> row(int r) const {
        return std::vector<Rat>(a_.begin() + static_cast<std::size_t>(r) * cols_,
                                a_.begin() + static_cast<std::size_t>(r + 1) * cols_);
    }

    void set_row(int r, const std::vector<Rat>& v) {
        for (int c = 0; c < cols_; ++c) at(r, c) = v[c];
    }

    bool operator==(const QMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const QMatrix& o) const { return !(*this == o); }

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rat> a_;
};

// Strict weak order used to key flats and spans by their canonical matrix.
struct QMatrixLess {
    bool operator()(const QMatrix& x, const QMatrix& y) const {
        if (x.rows() != y.rows()) return x.rows() < y.rows();
        if (x.cols() != y.cols()) return x.cols() < y.cols();
        for (int r = 0; r < x.rows(); ++r)
            for (int c = 0; c < x.cols(); ++c) {
                const int s = cmp(x.at(r, c), y.at(r, c));
                if (s != 0) return s < 0;
            }
        return false;
    }
};

struct RrefResult {
    QMatrix matrix;           // same shape as the input, zero rows at the bottom
    int rank = 0;
    std::vector<int> pivots;  // pivot column of row i, ascending
};

inline RrefResult rref(QMatrix m) {
    const int rows = m.rows(), cols = m.cols();
    RrefResult out;
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int c = 0; c < cols; ++c) std::swap(m.at(piv, c), m.at(r, c));
        const Rat inv = 1 / m.at(r, col);
        for (int c = col; c < cols; ++c) m.at(r, c) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m.at(i, col) == 0) continue;
            const Rat f = m.at(i, col);
            for (int c = col; c < cols; ++c) m.at(i, c) -= f * m.at(r, c);
        }
        out.pivots.push_back(col);
        ++r;
    }
    out.rank = r;
    out.matrix = std::move(m);
    return out;
}

inline int rank_of(const QMatrix& m) { return rref(m).rank; }

// Nonzero rows of the reduced echelon form: the canonical basis of the row
// space. Two matrices have equal row spaces iff their bases compare equal.
inline QMatrix row_space_basis(const QMatrix& m) {
    RrefResult r = rref(m);
    QMatrix out(r.rank, m.cols());
    for (int i = 0; i < r.rank; ++i)
        for (int c = 0; c < m.cols(); ++c) out.at(i, c) = r.matrix.at(i, c);
    return out;
}

// basis must be a trimmed reduced echelon matrix. Reduces v against it;
// the result is zero exactly when v lies in the row space.
inline std::vector<Rat> reduce_against(const QMatrix& basis, std::vector<Rat> v) {
    for (int i = 0; i < basis.rows(); ++i) {
        int p = -1;
        for (int c = 0; c < basis.cols(); ++c)
            if (basis.at(i, c) != 0) { p = c; break; }
        if (p < 0 || v[p] == 0) continue;
        const Rat f = v[p];
        for (int c = p; c < basis.cols(); ++c) v[c] -= f * basis.at(i, c);
    }
    return v;
}

inline bool is_zero_vec(const std::vector<Rat>& v) {
    for (const Rat& x : v)
        if (x != 0) return false;
    return true;
}

inline bool in_row_space(const QMatrix& basis, const std::vector<Rat>& v) {
    return is_zero_vec(reduce_against(basis, v));
}

// Extends a trimmed reduced echelon basis by one independent vector,
// keeping the result in canonical reduced form. `reduced` must already be
// reduce_against(basis, v) and nonzero.
inline QMatrix extend_basis(const QMatrix& basis, std::vector<Rat> reduced) {
    const int cols = basis.cols();
    int p = -1;
    for (int c = 0; c < cols; ++c)
        if (reduced[c] != 0) { p = c; break; }
    if (p < 0) throw std::logic_error("extend_basis: dependent row");
    const Rat inv = 1 / reduced[p];
    for (int c = p; c < cols; ++c) reduced[c] *= inv;

    // insert position keeps pivot columns increasing
    int pos = 0;
    while (pos < basis.rows()) {
        int bp = -1;
        for (int c = 0; c < cols; ++c)
            if (basis.at(pos, c) != 0) { bp = c; break; }
        if (bp > p) break;
        ++pos;
    }
    QMatrix out(basis.rows() + 1, cols);
    for (int i = 0; i < pos; ++i)
        for (int c = 0; c < cols; ++c) out.at(i, c) = basis.at(i, c);
    for (int c = 0; c < cols; ++c) out.at(pos, c) = reduced[c];
    for (int i = pos; i < basis.rows(); ++i)
        for (int c = 0; c < cols; ++c) out.at(i + 1, c) = basis.at(i, c);
    // clear the new pivot column in every other row
    for (int i = 0; i < out.rows(); ++i) {
        if (i == pos || out.at(i, p) == 0) continue;
        const Rat f = out.at(i, p);
        for (int c = p; c < cols; ++c) out.at(i, c) -= f * out.at(pos, c);
    }
    return out;
}

// Basis of the right kernel via the standard free-variable construction:
// one row per free column f (ascending), with entry 1 at f and -R(i,f) at
// the i-th pivot column.
inline QMatrix kernel_basis(const QMatrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : r.pivots) is_pivot[p] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    QMatrix out(static_cast<int>(free_cols.size()), m.cols());
    for (int k = 0; k < static_cast<int>(free_cols.size()); ++k) {
        const int f = free_cols[k];
        out.at(k, f) = 1;
        for (int i = 0; i < r.rank; ++i) out.at(k, r.pivots[i]) = -r.matrix.at(i, f);
    }
    return out;
}

inline QMatrix vstack(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column count mismatch");
    QMatrix out(a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int c = 0; c < a.cols(); ++c) out.at(i, c) = a.at(i, c);
    for (int i = 0; i < b.rows(); ++i)
        for (int c = 0; c < b.cols(); ++c) out.at(a.rows() + i, c) = b.at(i, c);
    return out;
}

inline int stack_rank(const QMatrix& a, const QMatrix& b) { return rank_of(vstack(a, b)); }

inline QMatrix transpose(const QMatrix& m) {
    QMatrix out(m.cols(), m.rows());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out.at(c, r) = m.at(r, c);
    return out;
}

inline QMatrix mul(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mul: shape mismatch");
    QMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a.at(i, k) == 0) continue;
            for (int j = 0; j < b.cols(); ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return out;
}

}  // namespace kstab
