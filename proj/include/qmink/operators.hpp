// Metric-contracted operators: raised derivatives, the Laplacian, gamma
// matrices satisfying the R-deformed Clifford relations, and the Dirac
// operator squaring to the Laplacian.
#pragma once

#include <vector>

#include "qmink/calculus.hpp"
#include "qmink/qmatrix.hpp"

namespace qmink {

/// N gamma matrices gamma^a of size d x d over Scalar, satisfying
///   gamma^a gamma^b + R^{ba}_{dc} gamma^c gamma^d = 2 g^{ba} 1.
struct GammaSet {
    int dim = 0; // d
    std::vector<QMatrix> gamma;
};

/// C-valued spinor: d polynomial components.
using SpinorPoly = std::vector<NCPoly>;

class Operators {
  public:
    /// Requires the metric checks (Rg = g on top of the algebra gates).
    explicit Operators(const Calculus& calc);

    const Calculus& calculus() const { return calc_; }

    /// partial^j = g^{jb} partial_b.
    NCPoly partial_up(int j, const NCPoly& a) const;

    /// box = g^{ij} partial_j partial_i.
    NCPoly box(const NCPoly& a) const;
    /// The other contraction, g_{ij} partial^i partial^j; agrees with box.
    NCPoly box_alt(const NCPoly& a) const;

    /// (dirac phi)^r = partial_a(phi^s) (gamma^a)^r_s.
    SpinorPoly dirac(const GammaSet& gs, const SpinorPoly& phi) const;

  private:
    const Calculus& calc_;
    int n_;
};

/// Gamma matrices for R = tau and a real symmetric invertible metric that is
/// exactly congruent over Q(i) to a +/-1 diagonal: congruence-diagonalize,
/// scale square factors away, tensor-build Pauli-type generators, change
/// basis back, and verify the Clifford relation exactly. d = 2^floor(N/2).
GammaSet make_classical_gammas(const StructureData& sd);

/// Exact check of the deformed Clifford relation for arbitrary R; one report
/// entry per index pair (a, b).
ValidationReport verify_gammas(const StructureData& sd, const GammaSet& gs);

} // namespace qmink
