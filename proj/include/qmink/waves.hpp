// Plane-wave machinery: the braided momentum algebra and exact series checks
// for the Z = 0 and R = tau cases, plus numeric evaluation of the deformed
// dispersion relation, propagator, and Dirac dispersion.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "qmink/calculus.hpp"
#include "qmink/operators.hpp"

namespace qmink {

/// Momenta p^0..p^{N-1} with relations p^k p^l = R^{lk}_{ji} p^i p^j,
/// realized as a normal-form engine over the flip-conjugate R' = tau R tau
/// (Z = 0, T = 0). For R = tau this is the commutative polynomial algebra.
class MomentumAlgebra {
  public:
    explicit MomentumAlgebra(const StructureData& sd);

    const NormalFormEngine& engine() const { return eng_; }

    /// p_a = g_{ab} p^b.
    NCPoly lowered(int a) const;

    /// s = p_i p^i = g_{ib} p^b p^i.
    NCPoly central_s() const;

    /// U_i^l = Z^{kl}_i p_k as elements of F; row-major (i, l).
    std::vector<NCPoly> u_matrix_symbolic(const StructureData& sd) const;

  private:
    StructureData msd_;
    NormalFormEngine eng_;
};

/// Element of C (x) F: finite map (x-word, p-word) -> Scalar, each factor in
/// its own normal form. x-factors and p-factors commute across the tensor.
using XPElem = std::map<std::pair<Word, Word>, Scalar>;

class XPAlgebra {
  public:
    XPAlgebra(const Calculus& xcalc, const MomentumAlgebra& palg)
        : xcalc_(xcalc), palg_(palg) {}

    XPElem tensor(const NCPoly& x, const NCPoly& p) const;
    /// x (x) p = x^a (x) p_a.
    XPElem coordinate_pairing() const;
    XPElem mul(const XPElem& a, const XPElem& b) const;
    XPElem scaled(const XPElem& a, const Scalar& c) const;
    XPElem add(XPElem a, const XPElem& b) const;
    /// (partial_j (x) id).
    XPElem apply_partial(int j, const XPElem& a) const;
    /// (box (x) id).
    XPElem apply_box(const Operators& ops, const XPElem& a) const;
    /// (1 (x) q) . a  (q multiplies the F factor from the left).
    XPElem mul_left_p(const NCPoly& q, const XPElem& a) const;

  private:
    const Calculus& xcalc_;
    const MomentumAlgebra& palg_;
};

/// Plane-wave series identities, order by order: (partial_j (x) id)(x (x) p)^n
/// equals n (1 (x) p_j)(x (x) p)^{n-1} and (box (x) id)(x (x) p)^n equals
/// n(n-1)(1 (x) s)(x (x) p)^{n-2}, exactly, plus centrality and hermiticity
/// of s. Requires Z = 0 and n_max <= D/2.
ValidationReport verify_z0_series(const StructureData& sd, int n_max);

/// R = tau closed form: partial_j (x.p)^n computed by the calculus engine
/// with symbolic momenta equals sum_k C(n,k) (U^{k-1})_j^b p_b (x.p)^{n-k}.
ValidationReport verify_u_algebra(const StructureData& sd, int n_max);

/// rho(x) = (e^x - 1)/x as a matrix function: eigendecomposition when the
/// eigenvector basis is well conditioned, scaled Taylor series otherwise.
Eigen::MatrixXcd matrix_rho(const Eigen::MatrixXcd& x);
/// h(x) = rho(-x) rho(x) = (sinh(x/2)/(x/2))^2; even.
Eigen::MatrixXcd matrix_h(const Eigen::MatrixXcd& x);

/// Numeric packaging of g, Z and the mass parameter for R = tau evaluation.
struct DispersionModel {
    int n = 0;
    Eigen::MatrixXcd g;                  // g^{ab}
    Eigen::MatrixXcd g_inv;              // g_{ab}
    std::vector<std::complex<double>> z; // Z^{ij}_k at (i*n+j)*n + k
    double mass = 0.0;

    std::complex<double> zval(int i, int j, int k) const {
        return z[(static_cast<std::size_t>(i) * n + j) * n + k];
    }
};

/// Requires R = tau; momenta are passed as lowered components p_a.
DispersionModel make_dispersion_model(const StructureData& sd, double mass);

/// U(p)_i^l = Z^{kl}_i p_k.
Eigen::MatrixXcd u_matrix(const DispersionModel& model, const std::vector<double>& p);

/// m^2 = g^{as} h(-iU)_s^b p_a p_b; throws RealityError when the imaginary
/// residual exceeds 1e-10 relative.
double mass_squared(const DispersionModel& model, const std::vector<double>& p);

/// i / (m^2(p) - M^2); throws PoleError within 1e-12 of the mass shell.
std::complex<double> propagator(const DispersionModel& model, const std::vector<double>& p);

struct DiracDispersion {
    std::vector<std::complex<double>> cal_p; // P_j = rho(-iU)_j^b p_b
    double mass_squared = 0.0;               // g^{js} P_j P_s (real)
    double mass = 0.0;                       // m = sqrt(g^{js} P_j P_s) >= 0
    Eigen::MatrixXcd pslash;
    std::vector<std::complex<double>> eigenvalues;
    Eigen::MatrixXcd eigenvectors; // columns, paired with eigenvalues
    int plus_multiplicity = 0;
    int minus_multiplicity = 0;
};

/// Checks pslash^2 = (g^{js} P_j P_s) 1 to 1e-10 and decomposes into the
/// +-m spinor subspaces.
DiracDispersion dirac_dispersion(const DispersionModel& model, const GammaSet& gs,
                                 const std::vector<double>& p);

Eigen::MatrixXcd to_complex(const QMatrix& m);

} // namespace qmink
