// Words in the generators and noncommutative polynomials over Scalar.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "qmink/scalar.hpp"

namespace qmink {

/// A word in the generators: one byte per letter, values 0..N-1.
/// The empty word is the unit monomial.
using Word = std::string;

inline Word word_of(std::initializer_list<int> letters) {
    Word w;
    for (int k : letters) w.push_back(static_cast<char>(k));
    return w;
}

/// Graded lexicographic order with x0 < x1 < ... (shorter words first).
struct GradedLex {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

/// Finite Scalar-linear combination of words; zero coefficients are absent.
/// The normalized flag records whether the support is known to lie on the
/// engine's canonical complement basis.
class NCPoly {
  public:
    using Terms = std::map<Word, Scalar, GradedLex>;

    NCPoly() = default;
    static NCPoly zero() { return NCPoly(); }
    static NCPoly constant(const Scalar& c);
    static NCPoly monomial(const Word& w, const Scalar& c = Scalar(1));
    static NCPoly generator(int i) { return monomial(Word(1, static_cast<char>(i))); }

    bool is_zero() const { return terms_.empty(); }
    int degree() const; // degree of the zero polynomial is taken as 0
    const Terms& terms() const { return terms_; }

    bool normalized() const { return normalized_; }
    void set_normalized(bool v) { normalized_ = v; }

    void add_term(const Word& w, const Scalar& c);

    NCPoly operator-() const;
    NCPoly& operator+=(const NCPoly& o);
    NCPoly& operator-=(const NCPoly& o);
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }

    NCPoly scaled(const Scalar& c) const;

    /// Free (concatenation) product; no relations applied.
    NCPoly concat_mul(const NCPoly& o) const;

    /// Coefficients conjugated and words reversed; no relations applied.
    NCPoly star_raw() const;

    friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const NCPoly& a, const NCPoly& b) { return !(a == b); }

    /// Text form: '+'-separated terms "(<complex>)*x<i>*x<j>...". The printer
    /// emits leading terms first and always parenthesizes the coefficient;
    /// parse() also accepts bare coefficients and coefficient-free monomials.
    std::string str() const;
    static NCPoly parse(const std::string& text, int num_generators);

  private:
    Terms terms_;
    bool normalized_ = false;
};

} // namespace qmink
