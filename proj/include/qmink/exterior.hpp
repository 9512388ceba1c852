// Exterior algebra: R-deformed antisymmetrizers A_n, bases of im A_n, wedge
// products, the higher exterior derivative, and the graded star.
#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <vector>

#include "qmink/calculus.hpp"

namespace qmink {

using SparseVec = std::map<std::size_t, Scalar>;

/// Applies R_{nk} = 1^(k-1) x R x 1^(n-k-1) to a sparse vector over the
/// N^n tensor basis; k is 1-based, acting on slots (k-1, k) of the word
/// (most significant letter first).
SparseVec apply_rnk(const StructureData& sd, int n, int k, const SparseVec& v);

/// A_n = (1/n!) sum_pi sgn(pi) R_{n pi}, evaluated through the coset
/// factorization sum_{S_n} = sum_{S_{n-1}} . sum_j (-1)^j R_{n,n-1}...R_{n,n-j}
/// (each summand is the product over one canonical reduced word).
struct Antisymmetrizer {
    int n = 0;
    std::size_t dim = 1;                // N^n
    std::vector<SparseVec> cols;        // A_n column-sparse
    std::size_t rank = 0;
    std::vector<SparseVec> alpha;       // dual functionals, alpha^g A_n = alpha^g
    std::vector<SparseVec> alpha_prime; // basis of im A_n, alpha^g alpha'_d = delta
    std::vector<std::size_t> pivot_cols;
};

/// Exact A_n with rank and image basis; guard N^n <= 10^6.
Antisymmetrizer build_antisymmetrizer(const StructureData& sd, int n);

/// Degree-n form held by its coefficients over the alpha basis of im A_n
/// (right coefficients). Degree-0 forms carry one NCPoly.
struct Form {
    int degree = 0;
    std::vector<NCPoly> coeff;

    bool is_zero() const;
    Form& operator+=(const Form& o);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    Form scaled(const Scalar& c) const;
    friend bool operator==(const Form& a, const Form& b) {
        return a.degree == b.degree && a.coeff == b.coeff;
    }
};

class Exterior {
  public:
    explicit Exterior(const Calculus& calc) : calc_(calc), n_(calc.engine().num_generators()) {}

    const Calculus& calculus() const { return calc_; }
    const Antisymmetrizer& antisym(int degree) const;

    Form zero_form(int degree) const;
    Form from_poly(const NCPoly& a) const; // degree 0
    Form from_oneform(const OneForm& omega) const;
    OneForm to_oneform(const Form& f) const;

    /// dx-word coefficients -> canonical alpha coordinates (b = alpha' . c).
    Form from_raw(int degree, const std::vector<NCPoly>& raw) const;
    /// alpha coordinates -> dx-word coefficients (c = alpha^T b).
    std::vector<NCPoly> to_raw(const Form& f) const;

    /// Basis form dx^{w_1} ^ ... ^ dx^{w_m}, projected.
    Form basis_form(const Word& w) const;

    Form wedge(const Form& a, const Form& b) const;
    Form d(const Form& f) const;
    Form d(const NCPoly& a) const { return d(from_poly(a)); }
    Form star_form(const Form& f) const;

  private:
    const Calculus& calc_;
    int n_;
    mutable std::map<int, Antisymmetrizer> cache_;
    mutable std::mutex mutex_;
};

std::size_t word_index(const Word& w, int n);
Word index_word(std::size_t idx, int n, int degree);

} // namespace qmink
