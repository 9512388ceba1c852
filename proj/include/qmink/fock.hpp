// Braided tensor powers of the coordinate algebra: the particle-interchange
// operator K, the permutation representation, boson subspaces, and lifted
// n-particle operators.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qmink/engine.hpp"

namespace qmink {

/// Element of C^{(x) n}: finite map from n-tuples of words to Scalar, with
/// every slot held in normal form.
using TensorState = std::map<std::vector<Word>, Scalar>;

/// Interchange operator on C (x) C. The default is the flip K(a (x) b) =
/// b (x) a; alternatively a generator braid matrix B with K(x^i (x) x^j) =
/// B^{ij}_{kl} x^k (x) x^l, extended to words by elementary crossings.
/// Invariants (involution, braid relation, ideal compatibility) are checked
/// at construction; operations refuse to run when any failed.
class BraidOperator {
  public:
    static BraidOperator flip(const NormalFormEngine& eng);
    /// b is N^2 x N^2 with B^{ij}_{kl} at (i*N+j, k*N+l).
    static BraidOperator from_matrix(const NormalFormEngine& eng, const QMatrix& b);

    const ValidationReport& validation() const { return report_; }
    bool valid() const { return report_.all_pass(); }
    void require_valid() const;

    const NormalFormEngine& engine() const { return eng_; }

    /// K applied to one pair of words; slots are re-normalized by the caller.
    std::map<std::pair<Word, Word>, Scalar> cross(const Word& a, const Word& b) const;

  private:
    BraidOperator(const NormalFormEngine& eng, QMatrix b);
    void run_checks();

    const NormalFormEngine& eng_;
    QMatrix b_;
    ValidationReport report_;
};

/// A single-particle operator on the coordinate algebra.
using ParticleOp = std::function<NCPoly(const NCPoly&)>;

class Fock {
  public:
    Fock(const NormalFormEngine& eng, const BraidOperator& braid)
        : eng_(eng), braid_(braid) {}

    TensorState state_from_words(const std::vector<Word>& slots,
                                 const Scalar& c = Scalar(1)) const;
    TensorState add(TensorState a, const TensorState& b) const;
    TensorState scaled(const TensorState& a, const Scalar& c) const;

    /// K^{(m)}: K on slots (m, m+1), 0-based.
    TensorState apply_interchange(const TensorState& st, int slot) const;

    /// pi_sigma via a reduced word of sigma (one-line notation; sigma[i] is
    /// the image of slot i). Independent of the chosen reduced word once the
    /// braid checks hold.
    TensorState pi_sigma(const std::vector<int>& sigma, const TensorState& st) const;

    /// Boson projector (1/n!) sum_sigma pi_sigma; guard n <= 6.
    TensorState symmetrize(const TensorState& st, int slots) const;

    /// W^{(n)} on a symmetric state; evaluates both displayed formulas
    /// (transposition sum and the (n-1)!-averaged conjugation sum) and
    /// requires them to agree.
    TensorState lift_operator(const ParticleOp& w, int slots, const TensorState& st) const;

    TensorState apply_first_slot(const ParticleOp& w, const TensorState& st) const;

  private:
    const NormalFormEngine& eng_;
    const BraidOperator& braid_;
};

/// Adjacent-transposition decomposition (bubble sort, minimal length);
/// applying the returned slots left to right realizes sigma.
std::vector<int> reduced_word(std::vector<int> sigma);

/// Invariant suite used by the CLI and the acceptance tests: involution,
/// braid relation, ideal compatibility, representation property,
/// reduced-word independence, symmetrizer projection, and agreement of the
/// two n-particle lift formulas for every supplied operator.
ValidationReport fock_suite(const NormalFormEngine& eng, const BraidOperator& braid, int slots,
                            std::uint64_t seed,
                            const std::vector<std::pair<std::string, ParticleOp>>& ops);

} // namespace qmink
