// Exact Gaussian-rational scalar: the coefficient field for all symbolic work.
#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace qmink {

/// Element of Q(i): exact rational real and imaginary parts.
/// GMP keeps every mpq_class canonical (lowest terms, positive denominator),
/// so arithmetic here is exact and closed.
class Scalar {
  public:
    Scalar() : re_(0), im_(0) {}
    Scalar(long v) : re_(v), im_(0) {}
    Scalar(const mpq_class& re) : re_(re), im_(0) {}
    Scalar(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) {}

    static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }
    bool is_imaginary() const { return re_ == 0; }

    Scalar conj() const { return Scalar(re_, -im_); }

    /// |z|^2 as an exact rational.
    mpq_class norm2() const { return re_ * re_ + im_ * im_; }

    Scalar inverse() const; // throws on zero

    Scalar operator-() const { return Scalar(-re_, -im_); }
    Scalar& operator+=(const Scalar& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i = re_ * o.im_ + im_ * o.re_;
        re_ = r;
        im_ = i;
        return *this;
    }
    Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    /// Complex literal: "<rat>", "<rat>+<rat>i" or "<rat>-<rat>i",
    /// <rat> = optionally signed p or p/q in lowest terms.
    static Scalar parse(const std::string& text);
    std::string str() const;

  private:
    mpq_class re_, im_;
};

/// Strict rational literal: optionally signed p or p/q, lowest terms only.
mpq_class parse_rational(const std::string& text);
std::string rational_str(const mpq_class& q);

} // namespace qmink
