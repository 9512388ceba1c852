// Dense exact matrices over Scalar with Gauss-Jordan elimination.
#pragma once

#include <cstddef>
#include <vector>

#include "qmink/scalar.hpp"

namespace qmink {

class QMatrix {
  public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static QMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool is_zero() const;
    QMatrix transpose() const;
    QMatrix conj_transpose() const;

    QMatrix operator-() const;
    QMatrix& operator+=(const QMatrix& o);
    QMatrix& operator-=(const QMatrix& o);
    friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
    friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator*(const Scalar& s, QMatrix m);
    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

    /// Exact inverse; throws SingularMetricError when not invertible.
    QMatrix inverse() const;

    /// In-place reduced row echelon form; returns the pivot column of each
    /// nonzero row in order.
    std::vector<std::size_t> rref();

    std::size_t rank() const;

  private:
    std::size_t rows_, cols_;
    std::vector<Scalar> a_;
};

QMatrix kron(const QMatrix& a, const QMatrix& b);

/// Symmetric congruence diagonalization: returns (P, d) with P g P^T = diag(d),
/// P exact and invertible. Requires g symmetric.
struct Congruence {
    QMatrix p;
    std::vector<Scalar> diag;
};
Congruence congruence_diagonalize(const QMatrix& g);

} // namespace qmink
