// Structure data (N, R, Z, T, g) for one quantum space, with matrix-level
// consistency checks.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmink/qmatrix.hpp"
#include "qmink/scalar.hpp"

namespace qmink {

/// The tuple defining one quantum space. Index conventions: generators are
/// numbered 0..N-1, pair indices flatten row-major (i,j) -> i*N+j.
struct StructureData {
    int n = 0;                 // number of generators
    QMatrix r;                 // N^2 x N^2, R^{ij}_{kl} at (i*N+j, k*N+l)
    QMatrix z;                 // N^2 x N,   Z^{ij}_k at (i*N+j, k)
    std::vector<Scalar> t;     // N^2,       T^{ij} at i*N+j
    QMatrix g;                 // N x N,     g^{ab}
    QMatrix g_inv;             // N x N,     g_{ab}, exact inverse of g
    std::optional<std::vector<QMatrix>> gammas; // optional d x d matrices, N of them
    std::optional<QMatrix> f_tilde;             // optional N^3 x N
    int degree_cutoff = 8;

    const Scalar& R(int i, int j, int k, int l) const { return r.at(i * n + j, k * n + l); }
    const Scalar& Z(int i, int j, int k) const { return z.at(i * n + j, k); }
    const Scalar& T(int i, int j) const { return t[i * n + j]; }
    const Scalar& G(int a, int b) const { return g.at(a, b); }
    const Scalar& Ginv(int a, int b) const { return g_inv.at(a, b); }

    bool is_r_flip() const;   // R^{ij}_{kl} = d^i_l d^j_k (the map tau)
    bool is_z_zero() const;
    bool is_t_zero() const;
    bool is_g_real_symmetric() const;

    bool operator==(const StructureData& o) const;
};

struct ValidationCheck {
    std::string name;
    bool pass = false;
    std::string witness;  // offending index tuple and residual, empty on pass
    bool skipped = false; // check not applicable; witness holds the reason
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_pass() const; // skipped checks do not count as failures
    const ValidationCheck* find(const std::string& name) const;
};

/// Parse a structure file (JSON, schema in the README). g's inverse is
/// computed exactly here; a non-invertible metric is rejected.
StructureData load_structure(const std::string& path);
StructureData parse_structure(const std::string& json_text);
std::string dump_structure(const StructureData& sd);

/// Matrix-level consistency checks:
///   r_squared_identity      R^2 = 1
///   rt_antisymmetry         RT = -T
///   a3_zt_condition         A3 (Z x 1 - 1 x Z) T = 0
///   metric_r_invariance     Rg = g (g as a vector in C^{N^2})
///   metric_hermitian        conj(g^{ji}) = g^{ij}            [star]
///   z_metric_compatibility  Z^{kl}_r g^{rj} = -Z^{kj}_s g^{ls} (only if R = tau) [star]
///   f_tilde_zero            F~ = 0 (only if the file supplied F~)
/// With with_star = false the two star checks are omitted.
ValidationReport validate(const StructureData& sd, bool with_star = true);

/// Checks required before the normal-form engine accepts the structure.
void require_algebra_gates(const StructureData& sd);
/// Additionally requires metric invariance (Rg = g).
void require_metric_gates(const StructureData& sd);

} // namespace qmink
