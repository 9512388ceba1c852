#include "qmink/operators.hpp"

#include <gmpxx.h>

#include "qmink/errors.hpp"

namespace qmink {

Operators::Operators(const Calculus& calc) : calc_(calc), n_(calc.engine().num_generators()) {
    require_metric_gates(calc.engine().structure());
}

NCPoly Operators::partial_up(int j, const NCPoly& a) const {
    const StructureData& sd = calc_.engine().structure();
    NCPoly out;
    for (int b = 0; b < n_; ++b) {
        const Scalar& c = sd.G(j, b);
        if (!c.is_zero()) out += calc_.partial(b, a).scaled(c);
    }
    out.set_normalized(true);
    return out;
}

NCPoly Operators::box(const NCPoly& a) const {
    const StructureData& sd = calc_.engine().structure();
    NCPoly out;
    for (int i = 0; i < n_; ++i) {
        NCPoly da = calc_.partial(i, a);
        if (da.is_zero()) continue;
        for (int j = 0; j < n_; ++j) {
            const Scalar& c = sd.G(i, j);
            if (!c.is_zero()) out += calc_.partial(j, da).scaled(c);
        }
    }
    out.set_normalized(true);
    return out;
}

NCPoly Operators::box_alt(const NCPoly& a) const {
    const StructureData& sd = calc_.engine().structure();
    NCPoly out;
    for (int j = 0; j < n_; ++j) {
        NCPoly da = partial_up(j, a);
        if (da.is_zero()) continue;
        for (int i = 0; i < n_; ++i) {
            const Scalar& c = sd.Ginv(i, j);
            if (!c.is_zero()) out += partial_up(i, da).scaled(c);
        }
    }
    out.set_normalized(true);
    return out;
}

SpinorPoly Operators::dirac(const GammaSet& gs, const SpinorPoly& phi) const {
    SpinorPoly out(gs.dim);
    for (int a = 0; a < n_; ++a) {
        std::vector<NCPoly> dphi(gs.dim);
        for (int s = 0; s < gs.dim; ++s) dphi[s] = calc_.partial(a, phi[s]);
        for (int r = 0; r < gs.dim; ++r)
            for (int s = 0; s < gs.dim; ++s) {
                const Scalar& c = gs.gamma[a].at(r, s);
                if (!c.is_zero()) out[r] += dphi[s].scaled(c);
            }
    }
    return out;
}

namespace {

// true when q = c^2 or q = -c^2 for rational c; returns c
bool rational_square_root_of_abs(const mpq_class& q, mpq_class& root) {
    mpq_class a = q < 0 ? mpq_class(-q) : q;
    mpz_class num = a.get_num(), den = a.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0)
        return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    root = mpq_class(rn, rd);
    return true;
}

// Pauli-type generators of the Clifford algebra of the identity form on C^N:
// Gamma_k Gamma_l + Gamma_l Gamma_k = 2 delta_kl, entries in {0, +-1, +-i}.
std::vector<QMatrix> euclidean_gammas(int n) {
    int m = n / 2;
    int d = 1 << m;
    QMatrix s1(2, 2), s2(2, 2), s3(2, 2), id2 = QMatrix::identity(2);
    s1.at(0, 1) = Scalar(1);
    s1.at(1, 0) = Scalar(1);
    s2.at(0, 1) = -Scalar::i();
    s2.at(1, 0) = Scalar::i();
    s3.at(0, 0) = Scalar(1);
    s3.at(1, 1) = Scalar(-1);
    std::vector<QMatrix> out;
    for (int a = 0; a < n; ++a) {
        QMatrix acc = QMatrix::identity(1);
        if (a == 2 * m) { // odd N: last generator is s3 x ... x s3
            for (int t = 0; t < m; ++t) acc = kron(acc, s3);
        } else {
            int block = a / 2;
            const QMatrix& mid = (a % 2 == 0) ? s1 : s2;
            for (int t = 0; t < block; ++t) acc = kron(acc, s3);
            acc = kron(acc, mid);
            for (int t = block + 1; t < m; ++t) acc = kron(acc, id2);
        }
        if (static_cast<int>(acc.rows()) != d) throw DomainError("gamma construction size error");
        out.push_back(acc);
    }
    return out;
}

} // namespace

GammaSet make_classical_gammas(const StructureData& sd) {
    if (!sd.is_r_flip()) throw DomainError("gamma construction requires R = tau");
    if (!sd.is_g_real_symmetric())
        throw DomainError("gamma construction requires a real symmetric metric");
    const int n = sd.n;

    Congruence cong = congruence_diagonalize(sd.g); // P g P^T = diag(d)
    QMatrix pinv = cong.p.inverse();
    std::vector<Scalar> scale(n);
    std::vector<bool> negative(n);
    for (int k = 0; k < n; ++k) {
        const Scalar& dk = cong.diag[k];
        if (dk.is_zero()) throw SingularMetricError("metric congruence produced a zero entry");
        mpq_class root;
        if (!rational_square_root_of_abs(dk.re(), root))
            throw DomainError("metric is not congruent to a +/-1 diagonal over Q(i): entry " +
                              dk.str());
        scale[k] = Scalar(root);
        negative[k] = dk.re() < 0;
    }

    std::vector<QMatrix> base = euclidean_gammas(n);
    GammaSet gs;
    gs.dim = static_cast<int>(base[0].rows());
    // gamma^a = sum_k S^a_k Gamma_k, S = P^{-1} C, with an extra i on the
    // negative-signature generators
    for (int a = 0; a < n; ++a) {
        QMatrix m(gs.dim, gs.dim);
        for (int k = 0; k < n; ++k) {
            Scalar s = pinv.at(a, k) * scale[k];
            if (negative[k]) s *= Scalar::i();
            if (s.is_zero()) continue;
            m += s * base[k];
        }
        gs.gamma.push_back(m);
    }
    ValidationReport rep = verify_gammas(sd, gs);
    if (!rep.all_pass())
        throw DomainError("constructed gammas fail the Clifford relation: " +
                          rep.checks.front().witness);
    return gs;
}

ValidationReport verify_gammas(const StructureData& sd, const GammaSet& gs) {
    ValidationReport rep;
    const int n = sd.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            QMatrix lhs = gs.gamma[a] * gs.gamma[b];
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    const Scalar& r = sd.R(b, a, d, c);
                    if (!r.is_zero()) lhs += r * (gs.gamma[c] * gs.gamma[d]);
                }
            QMatrix rhs = (Scalar(2) * sd.G(b, a)) * QMatrix::identity(gs.dim);
            ValidationCheck check{"clifford(" + std::to_string(a) + "," + std::to_string(b) + ")",
                                  true, ""};
            QMatrix diff = lhs - rhs;
            if (!diff.is_zero()) {
                check.pass = false;
                for (std::size_t r = 0; r < diff.rows() && check.witness.empty(); ++r)
                    for (std::size_t c = 0; c < diff.cols(); ++c)
                        if (!diff.at(r, c).is_zero()) {
                            check.witness = "residual " + diff.at(r, c).str() + " at entry (" +
                                            std::to_string(r) + "," + std::to_string(c) + ")";
                            break;
                        }
            }
            rep.checks.push_back(check);
        }
    return rep;
}

} // namespace qmink
