#include "qmink/qmatrix.hpp"

#include <utility>

#include "qmink/errors.hpp"

namespace qmink {

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m.at(k, k) = Scalar(1);
    return m;
}

bool QMatrix::is_zero() const {
    for (const auto& s : a_)
        if (!s.is_zero()) return false;
    return true;
}

QMatrix QMatrix::transpose() const {
    QMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
    return m;
}

QMatrix QMatrix::conj_transpose() const {
    QMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m.at(c, r) = at(r, c).conj();
    return m;
}

QMatrix QMatrix::operator-() const {
    QMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = -a_[k];
    return m;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    QMatrix m(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& s = a.at(r, k);
            if (s.is_zero()) continue;
            for (std::size_t c = 0; c < b.cols_; ++c) {
                const Scalar& t = b.at(k, c);
                if (!t.is_zero()) m.at(r, c) += s * t;
            }
        }
    return m;
}

QMatrix operator*(const Scalar& s, QMatrix m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) *= s;
    return m;
}

std::vector<Scalar> QMatrix::apply(const std::vector<Scalar>& v) const {
    std::vector<Scalar> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (!at(r, c).is_zero() && !v[c].is_zero()) out[r] += at(r, c) * v[c];
    return out;
}

QMatrix QMatrix::inverse() const {
    if (rows_ != cols_) throw SingularMetricError("inverse of non-square matrix");
    std::size_t n = rows_;
    QMatrix a = *this;
    QMatrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a.at(piv, col).is_zero()) ++piv;
        if (piv == n) throw SingularMetricError("matrix is singular");
        if (piv != col)
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a.at(piv, c), a.at(col, c));
                std::swap(inv.at(piv, c), inv.at(col, c));
            }
        Scalar scale = a.at(col, col).inverse();
        for (std::size_t c = 0; c < n; ++c) {
            a.at(col, c) *= scale;
            inv.at(col, c) *= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a.at(r, col).is_zero()) continue;
            Scalar f = a.at(r, col);
            for (std::size_t c = 0; c < n; ++c) {
                a.at(r, c) -= f * a.at(col, c);
                inv.at(r, c) -= f * inv.at(col, c);
            }
        }
    }
    return inv;
}

std::vector<std::size_t> QMatrix::rref() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
        std::size_t piv = row;
        while (piv < rows_ && at(piv, col).is_zero()) ++piv;
        if (piv == rows_) continue;
        if (piv != row)
            for (std::size_t c = 0; c < cols_; ++c) std::swap(at(piv, c), at(row, c));
        Scalar scale = at(row, col).inverse();
        for (std::size_t c = col; c < cols_; ++c) at(row, c) *= scale;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == row || at(r, col).is_zero()) continue;
            Scalar f = at(r, col);
            for (std::size_t c = col; c < cols_; ++c) at(r, c) -= f * at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t QMatrix::rank() const {
    QMatrix copy = *this;
    return copy.rref().size();
}

QMatrix kron(const QMatrix& a, const QMatrix& b) {
    QMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Scalar& s = a.at(ar, ac);
            if (s.is_zero()) continue;
            for (std::size_t br = 0; br < b.rows(); ++br)
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    const Scalar& t = b.at(br, bc);
                    if (!t.is_zero()) m.at(ar * b.rows() + br, ac * b.cols() + bc) = s * t;
                }
        }
    return m;
}

Congruence congruence_diagonalize(const QMatrix& g) {
    std::size_t n = g.rows();
    if (g.cols() != n) throw DomainError("congruence needs a square matrix");
    if (!(g == g.transpose())) throw DomainError("congruence needs a symmetric matrix");
    QMatrix a = g;
    QMatrix p = QMatrix::identity(n);
    auto add_row_col = [&](std::size_t dst, std::size_t src, const Scalar& f) {
        // congruence move: row_dst += f*row_src, col_dst += f*col_src
        for (std::size_t c = 0; c < n; ++c) a.at(dst, c) += f * a.at(src, c);
        for (std::size_t r = 0; r < n; ++r) a.at(r, dst) += f * a.at(r, src);
        for (std::size_t c = 0; c < n; ++c) p.at(dst, c) += f * p.at(src, c);
    };
    for (std::size_t k = 0; k < n; ++k) {
        if (a.at(k, k).is_zero()) {
            std::size_t j = k + 1;
            while (j < n && a.at(k, j).is_zero() && a.at(j, k).is_zero()) ++j;
            if (j == n) continue; // whole row/col zero from k on this index
            add_row_col(k, j, Scalar(1));
        }
        Scalar d = a.at(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            if (a.at(r, k).is_zero()) continue;
            add_row_col(r, k, -(a.at(r, k) / d));
        }
    }
    Congruence out;
    out.p = p;
    out.diag.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.diag[k] = a.at(k, k);
    return out;
}

} // namespace qmink
