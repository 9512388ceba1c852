// The N-dimensional covariant differential calculus: partial derivatives,
// twist maps rho, and the exterior derivative into the 1-form bimodule.
//
// Everything is computed through the unital homomorphism L sending a to the
// (N+1)x(N+1) matrix [[rho_i^j(a), partial_i(a)], [0, a]], determined by its
// values on the generators. Well-definedness (L applied to every relation
// generator gives the zero matrix) is checked at construction and failure
// aborts all dependent computations.
#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "qmink/engine.hpp"

namespace qmink {

/// A 1-form dx^i a_i held by its right-module coefficients a_i.
struct OneForm {
    std::vector<NCPoly> comp;

    explicit OneForm(int n = 0) : comp(n) {}
    bool is_zero() const;
    int max_degree() const;
    OneForm& operator+=(const OneForm& o);
    friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
    friend bool operator==(const OneForm& a, const OneForm& b) { return a.comp == b.comp; }
};

class Calculus {
  public:
    /// Runs the well-definedness gate; throws GateError with a diagnostic if
    /// the structure admits no N-dimensional covariant calculus.
    explicit Calculus(const NormalFormEngine& engine);

    const NormalFormEngine& engine() const { return eng_; }

    /// partial_i(a); partial_j(x^i) = delta^i_j, linear, partial_i(1) = 0.
    NCPoly partial(int i, const NCPoly& a) const;

    /// Twist coefficient: a dx^i = sum_j dx^j rho(i, j, a).
    /// For a generator, rho(i, j, x^k) = R^{ki}_{jl} x^l + Z^{ki}_j.
    NCPoly rho(int i, int j, const NCPoly& a) const { return rho_lower_upper(j, i, a); }

    /// rho_l^u(a), the (l, u) block entry of L(a).
    NCPoly rho_lower_upper(int l, int u, const NCPoly& a) const;

    /// da = dx^i partial_i(a).
    OneForm d0(const NCPoly& a) const;

    OneForm left_mul(const NCPoly& a, const OneForm& omega) const;
    OneForm right_mul(const OneForm& omega, const NCPoly& a) const;

    /// (dx^i a_i)^* = star(a_i) dx^i, rewritten back to basis form. Checks
    /// once that this defines an involution on 1-forms.
    OneForm star_oneform(const OneForm& omega) const;

    /// Throws StarError unless the star involution extends to 1-forms.
    void require_star_forms() const;

    /// Moves a polynomial through a string of basis forms:
    ///   a dx^{k_1} ... dx^{k_m} = sum_M dx^{m_1} ... dx^{m_m} c_M(a);
    /// returns the map M -> c_M(a). Used by the exterior algebra.
    std::map<Word, NCPoly, GradedLex> move_past(const NCPoly& a, const Word& k) const;

  private:
    struct LData {
        std::vector<NCPoly> rho; // N*N, row-major (lower, upper)
        std::vector<NCPoly> del; // N
    };
    const LData& ldata(const Word& w) const;
    void check_well_defined() const;

    const NormalFormEngine& eng_;
    int n_;
    std::vector<std::vector<NCPoly>> gen_rho_; // gen_rho_[k][l*N+u] = rho_l^u(x^k)
    mutable std::map<Word, LData, GradedLex> cache_;
    mutable std::mutex mutex_;
    mutable std::once_flag star_form_flag_;
    mutable bool star_form_ok_ = false;
    mutable std::string star_form_witness_;
};

} // namespace qmink
