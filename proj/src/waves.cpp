#include "qmink/waves.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>

#include "qmink/errors.hpp"

namespace qmink {

namespace {

StructureData momentum_structure(const StructureData& sd) {
    StructureData msd;
    msd.n = sd.n;
    const int n = sd.n;
    const std::size_t n2 = static_cast<std::size_t>(n) * n;
    msd.r = QMatrix(n2, n2);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    msd.r.at(static_cast<std::size_t>(k) * n + l,
                             static_cast<std::size_t>(i) * n + j) = sd.R(l, k, j, i);
    msd.z = QMatrix(n2, n);
    msd.t.assign(n2, Scalar());
    msd.g = sd.g;
    msd.g_inv = sd.g_inv;
    msd.degree_cutoff = sd.degree_cutoff;
    return msd;
}

} // namespace

MomentumAlgebra::MomentumAlgebra(const StructureData& sd)
    : msd_(momentum_structure(sd)), eng_(msd_) {}

NCPoly MomentumAlgebra::lowered(int a) const {
    NCPoly out;
    for (int b = 0; b < msd_.n; ++b) {
        const Scalar& c = msd_.Ginv(a, b);
        if (!c.is_zero()) out.add_term(Word(1, static_cast<char>(b)), c);
    }
    return eng_.normal_form(out);
}

NCPoly MomentumAlgebra::central_s() const {
    // s = p_i p^i = g_{ib} p^b p^i
    NCPoly out;
    for (int i = 0; i < msd_.n; ++i)
        out += eng_.multiply(lowered(i), NCPoly::generator(i));
    return eng_.normal_form(out);
}

std::vector<NCPoly> MomentumAlgebra::u_matrix_symbolic(const StructureData& sd) const {
    const int n = msd_.n;
    std::vector<NCPoly> u(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
            NCPoly entry;
            for (int k = 0; k < n; ++k) {
                const Scalar& c = sd.Z(k, l, i);
                if (!c.is_zero()) entry += lowered(k).scaled(c);
            }
            u[static_cast<std::size_t>(i) * n + l] = eng_.normal_form(entry);
        }
    return u;
}

XPElem XPAlgebra::tensor(const NCPoly& x, const NCPoly& p) const {
    NCPoly xn = xcalc_.engine().normal_form(x);
    NCPoly pn = palg_.engine().normal_form(p);
    XPElem out;
    for (const auto& [wx, cx] : xn.terms())
        for (const auto& [wp, cp] : pn.terms()) out[{wx, wp}] = cx * cp;
    return out;
}

XPElem XPAlgebra::coordinate_pairing() const {
    XPElem out;
    const int n = xcalc_.engine().num_generators();
    for (int a = 0; a < n; ++a)
        out = add(std::move(out), tensor(NCPoly::generator(a), palg_.lowered(a)));
    return out;
}

XPElem XPAlgebra::add(XPElem a, const XPElem& b) const {
    for (const auto& [key, c] : b) {
        auto it = a.find(key);
        if (it == a.end()) a.emplace(key, c);
        else {
            it->second += c;
            if (it->second.is_zero()) a.erase(it);
        }
    }
    return a;
}

XPElem XPAlgebra::scaled(const XPElem& a, const Scalar& c) const {
    XPElem out;
    if (c.is_zero()) return out;
    for (const auto& [key, s] : a) out.emplace(key, s * c);
    return out;
}

XPElem XPAlgebra::mul(const XPElem& a, const XPElem& b) const {
    XPElem out;
    const auto& xe = xcalc_.engine();
    const auto& pe = palg_.engine();
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            NCPoly xprod = xe.multiply(NCPoly::monomial(ka.first), NCPoly::monomial(kb.first));
            NCPoly pprod = pe.multiply(NCPoly::monomial(ka.second), NCPoly::monomial(kb.second));
            Scalar c = ca * cb;
            for (const auto& [wx, cx] : xprod.terms())
                for (const auto& [wp, cp] : pprod.terms()) {
                    auto key = std::make_pair(wx, wp);
                    auto it = out.find(key);
                    Scalar v = c * cx * cp;
                    if (it == out.end()) out.emplace(key, v);
                    else {
                        it->second += v;
                        if (it->second.is_zero()) out.erase(it);
                    }
                }
        }
    return out;
}

XPElem XPAlgebra::apply_partial(int j, const XPElem& a) const {
    XPElem out;
    for (const auto& [key, c] : a) {
        NCPoly d = xcalc_.partial(j, NCPoly::monomial(key.first));
        if (d.is_zero()) continue;
        for (const auto& [wx, cx] : d.terms()) {
            auto k = std::make_pair(wx, key.second);
            auto it = out.find(k);
            Scalar v = c * cx;
            if (it == out.end()) out.emplace(k, v);
            else {
                it->second += v;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return out;
}

XPElem XPAlgebra::apply_box(const Operators& ops, const XPElem& a) const {
    XPElem out;
    for (const auto& [key, c] : a) {
        NCPoly d = ops.box(NCPoly::monomial(key.first));
        if (d.is_zero()) continue;
        for (const auto& [wx, cx] : d.terms()) {
            auto k = std::make_pair(wx, key.second);
            auto it = out.find(k);
            Scalar v = c * cx;
            if (it == out.end()) out.emplace(k, v);
            else {
                it->second += v;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return out;
}

XPElem XPAlgebra::mul_left_p(const NCPoly& q, const XPElem& a) const {
    XPElem out;
    const auto& pe = palg_.engine();
    for (const auto& [key, c] : a) {
        NCPoly prod = pe.multiply(q, NCPoly::monomial(key.second));
        for (const auto& [wp, cp] : prod.terms()) {
            auto k = std::make_pair(key.first, wp);
            auto it = out.find(k);
            Scalar v = c * cp;
            if (it == out.end()) out.emplace(k, v);
            else {
                it->second += v;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return out;
}

ValidationReport verify_z0_series(const StructureData& sd_in, int n_max) {
    if (!sd_in.is_z_zero()) throw DomainError("series check requires Z = 0");
    if (2 * n_max > sd_in.degree_cutoff)
        throw CutoffError("n_max exceeds half the degree cutoff");
    ValidationReport rep;

    StructureData sd = sd_in; // the check only needs words through degree n_max
    sd.degree_cutoff = std::max(2, n_max);
    NormalFormEngine xeng(sd);
    Calculus calc(xeng);
    Operators ops(calc);
    MomentumAlgebra palg(sd);
    XPAlgebra xp(calc, palg);

    // s is central and hermitian in F
    {
        NCPoly s = palg.central_s();
        ValidationCheck c{"momentum_s_central", true, ""};
        for (int k = 0; k < sd.n; ++k) {
            NCPoly pk = NCPoly::generator(k);
            NCPoly res = palg.engine().multiply(s, pk) - palg.engine().multiply(pk, s);
            res = palg.engine().normal_form(res);
            if (!res.is_zero()) {
                c.pass = false;
                c.witness = "[s, p^" + std::to_string(k) + "] = " + res.str();
                break;
            }
        }
        rep.checks.push_back(c);
        ValidationCheck h{"momentum_s_hermitian", true, ""};
        if (palg.engine().star_well_defined()) {
            if (!(palg.engine().star(s) == s)) {
                h.pass = false;
                h.witness = "s* = " + palg.engine().star(s).str();
            }
        } else {
            h.skipped = true;
            h.witness = "star undefined on the momentum algebra";
        }
        rep.checks.push_back(h);
    }

    XPElem xpn; // (x (x) p)^n, starting at n = 0 (the unit)
    xpn[{Word(), Word()}] = Scalar(1);
    XPElem base = xp.coordinate_pairing();
    std::vector<XPElem> powers{xpn};
    for (int n = 1; n <= n_max; ++n) powers.push_back(xp.mul(powers.back(), base));

    for (int n = 1; n <= n_max; ++n) {
        ValidationCheck c{"derivative_series n=" + std::to_string(n), true, ""};
        for (int j = 0; j < sd.n && c.pass; ++j) {
            XPElem lhs = xp.apply_partial(j, powers[n]);
            XPElem rhs = xp.scaled(xp.mul_left_p(palg.lowered(j), powers[n - 1]), Scalar(n));
            if (!(lhs == rhs)) {
                c.pass = false;
                c.witness = "mismatch at j=" + std::to_string(j);
            }
        }
        rep.checks.push_back(c);
    }
    NCPoly s = palg.central_s();
    for (int n = 1; n <= n_max; ++n) {
        ValidationCheck c{"laplacian_series n=" + std::to_string(n), true, ""};
        XPElem lhs = xp.apply_box(ops, powers[n]);
        XPElem rhs;
        if (n >= 2)
            rhs = xp.scaled(xp.mul_left_p(s, powers[n - 2]), Scalar(n) * Scalar(n - 1));
        if (!(lhs == rhs)) {
            c.pass = false;
            c.witness = "laplacian series coefficient mismatch";
        }
        rep.checks.push_back(c);
    }
    return rep;
}

ValidationReport verify_u_algebra(const StructureData& sd_in, int n_max) {
    if (!sd_in.is_r_flip()) throw DomainError("closed-form check requires R = tau");
    if (n_max > sd_in.degree_cutoff) throw CutoffError("n_max exceeds the degree cutoff");
    ValidationReport rep;

    StructureData sd = sd_in;
    sd.degree_cutoff = std::max(2, n_max);
    NormalFormEngine xeng(sd);
    Calculus calc(xeng);
    MomentumAlgebra palg(sd);
    XPAlgebra xp(calc, palg);
    const auto& pe = palg.engine();
    const int n = sd.n;

    std::vector<NCPoly> u = palg.u_matrix_symbolic(sd);

    XPElem unit;
    unit[{Word(), Word()}] = Scalar(1);
    XPElem base = xp.coordinate_pairing();
    std::vector<XPElem> powers{unit};
    for (int k = 1; k <= n_max; ++k) powers.push_back(xp.mul(powers.back(), base));

    // U^k over F, U^0 = 1
    std::vector<std::vector<NCPoly>> upow;
    std::vector<NCPoly> id(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) id[static_cast<std::size_t>(i) * n + i] = NCPoly::constant(Scalar(1));
    upow.push_back(id);
    for (int k = 1; k < n_max; ++k) {
        std::vector<NCPoly> next(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                NCPoly acc;
                for (int m = 0; m < n; ++m) {
                    const NCPoly& a = upow.back()[static_cast<std::size_t>(i) * n + m];
                    const NCPoly& b = u[static_cast<std::size_t>(m) * n + j];
                    if (!a.is_zero() && !b.is_zero()) acc += pe.multiply(a, b);
                }
                next[static_cast<std::size_t>(i) * n + j] = acc;
            }
        upow.push_back(std::move(next));
    }

    for (int deg = 1; deg <= n_max; ++deg) {
        ValidationCheck c{"binomial_closed_form n=" + std::to_string(deg), true, ""};
        for (int j = 0; j < n && c.pass; ++j) {
            XPElem lhs = xp.apply_partial(j, powers[deg]);
            XPElem rhs;
            for (int k = 1; k <= deg; ++k) {
                mpz_class binom;
                mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(deg),
                             static_cast<unsigned long>(k));
                Scalar cb{mpq_class(binom)};
                NCPoly factor;
                for (int b = 0; b < n; ++b) {
                    const NCPoly& ue = upow[k - 1][static_cast<std::size_t>(j) * n + b];
                    if (!ue.is_zero()) factor += pe.multiply(ue, palg.lowered(b));
                }
                if (factor.is_zero()) continue;
                rhs = xp.add(std::move(rhs), xp.scaled(xp.mul_left_p(factor, powers[deg - k]), cb));
            }
            if (!(lhs == rhs)) {
                c.pass = false;
                c.witness = "mismatch at j=" + std::to_string(j);
            }
        }
        rep.checks.push_back(c);
    }
    return rep;
}

namespace {

std::complex<double> scalar_rho(std::complex<double> lam) {
    if (std::abs(lam) < 0.25) {
        // series sum_{k>=1} lam^{k-1}/k! avoids cancellation near zero
        std::complex<double> term(1.0, 0.0), sum(0.0, 0.0);
        for (int k = 1; k < 25; ++k) {
            term = (k == 1) ? std::complex<double>(1.0, 0.0) : term * lam / double(k);
            // term = lam^{k-1}/k!
            sum += term;
            if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
        }
        return sum;
    }
    return (std::exp(lam) - 1.0) / lam;
}

Eigen::MatrixXcd rho_taylor(const Eigen::MatrixXcd& x) {
    const int d = static_cast<int>(x.rows());
    double norm = x.cwiseAbs().rowwise().sum().maxCoeff(); // infinity norm
    int s = 0;
    while (norm > 0.5) {
        norm /= 2;
        ++s;
    }
    Eigen::MatrixXcd y = x / std::pow(2.0, s);
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    // phi = sum_k y^k/(k+1)!; with |y| <= 1/2 thirty terms push the series
    // remainder far below 1e-14
    Eigen::MatrixXcd phi = Eigen::MatrixXcd::Zero(d, d);
    Eigen::MatrixXcd pow = id;
    double fact = 1.0;
    for (int k = 0; k <= 30; ++k) {
        fact *= (k + 1);
        phi += pow / fact;
        pow = pow * y;
    }
    // doubling: phi(2y) = phi(y)(e^y + 1)/2
    Eigen::MatrixXcd ey = y * phi + id;
    for (int k = 0; k < s; ++k) {
        phi = phi * (ey + id) / 2.0;
        ey = ey * ey;
    }
    return phi;
}

} // namespace

Eigen::MatrixXcd matrix_rho(const Eigen::MatrixXcd& x) {
    const int d = static_cast<int>(x.rows());
    if (x.isZero(0.0)) return Eigen::MatrixXcd::Identity(d, d);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(x);
    if (ces.info() == Eigen::Success) {
        const Eigen::MatrixXcd& v = ces.eigenvectors();
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
        double smin = svd.singularValues().minCoeff();
        double smax = svd.singularValues().maxCoeff();
        if (smin > 0 && smax / smin < 1e8) {
            Eigen::VectorXcd lam = ces.eigenvalues();
            Eigen::VectorXcd rl(d);
            for (int k = 0; k < d; ++k) rl[k] = scalar_rho(lam[k]);
            Eigen::MatrixXcd result = v * rl.asDiagonal() * v.inverse();
            double scale = std::max(1.0, x.norm());
            Eigen::MatrixXcd recon = v * lam.asDiagonal() * v.inverse();
            if ((recon - x).norm() / scale < 1e-12) return result;
        }
    }
    return rho_taylor(x);
}

Eigen::MatrixXcd matrix_h(const Eigen::MatrixXcd& x) {
    return matrix_rho(-x) * matrix_rho(x);
}

Eigen::MatrixXcd to_complex(const QMatrix& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m.at(r, c).to_complex();
    return out;
}

DispersionModel make_dispersion_model(const StructureData& sd, double mass) {
    if (!sd.is_r_flip()) throw DomainError("dispersion model requires R = tau");
    if (mass < 0) throw DomainError("mass parameter must be nonnegative");
    DispersionModel model;
    model.n = sd.n;
    model.g = to_complex(sd.g);
    model.g_inv = to_complex(sd.g_inv);
    model.z.resize(static_cast<std::size_t>(sd.n) * sd.n * sd.n);
    for (int i = 0; i < sd.n; ++i)
        for (int j = 0; j < sd.n; ++j)
            for (int k = 0; k < sd.n; ++k)
                model.z[(static_cast<std::size_t>(i) * sd.n + j) * sd.n + k] =
                    sd.Z(i, j, k).to_complex();
    model.mass = mass;
    return model;
}

Eigen::MatrixXcd u_matrix(const DispersionModel& model, const std::vector<double>& p) {
    const int n = model.n;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
            for (int k = 0; k < n; ++k) u(i, l) += model.zval(k, l, i) * p[k];
    return u;
}

double mass_squared(const DispersionModel& model, const std::vector<double>& p) {
    const int n = model.n;
    if (static_cast<int>(p.size()) != n) throw DomainError("momentum dimension mismatch");
    Eigen::MatrixXcd u = u_matrix(model, p);
    Eigen::MatrixXcd h = matrix_h(std::complex<double>(0, -1) * u);
    std::complex<double> m2(0, 0);
    for (int a = 0; a < n; ++a)
        for (int s = 0; s < n; ++s)
            for (int b = 0; b < n; ++b) m2 += model.g(a, s) * h(s, b) * p[a] * p[b];
    if (std::abs(m2.imag()) > 1e-10 * (1.0 + std::abs(m2)))
        throw RealityError("mass squared has imaginary residual " + std::to_string(m2.imag()));
    return m2.real();
}

std::complex<double> propagator(const DispersionModel& model, const std::vector<double>& p) {
    double m2 = mass_squared(model, p);
    double den = m2 - model.mass * model.mass;
    if (std::abs(den) < 1e-12)
        throw PoleError("momentum is on the mass shell (m^2 = M^2)");
    return std::complex<double>(0, 1) / den;
}

DiracDispersion dirac_dispersion(const DispersionModel& model, const GammaSet& gs,
                                 const std::vector<double>& p) {
    const int n = model.n;
    if (static_cast<int>(p.size()) != n) throw DomainError("momentum dimension mismatch");
    DiracDispersion out;
    Eigen::MatrixXcd u = u_matrix(model, p);
    Eigen::MatrixXcd r = matrix_rho(std::complex<double>(0, -1) * u);
    out.cal_p.assign(n, {0, 0});
    for (int j = 0; j < n; ++j)
        for (int b = 0; b < n; ++b) out.cal_p[j] += r(j, b) * p[b];

    const int d = gs.dim;
    out.pslash = Eigen::MatrixXcd::Zero(d, d);
    for (int j = 0; j < n; ++j) out.pslash += out.cal_p[j] * to_complex(gs.gamma[j]);

    std::complex<double> m2(0, 0);
    for (int j = 0; j < n; ++j)
        for (int s = 0; s < n; ++s) m2 += model.g(j, s) * out.cal_p[j] * out.cal_p[s];

    Eigen::MatrixXcd sq = out.pslash * out.pslash - m2 * Eigen::MatrixXcd::Identity(d, d);
    if (sq.norm() > 1e-10 * (1.0 + std::abs(m2)))
        throw DomainError("gamma set does not square the Dirac operator to m^2");
    if (std::abs(m2.imag()) > 1e-10 * (1.0 + std::abs(m2)))
        throw RealityError("Dirac mass squared has imaginary residual " +
                           std::to_string(m2.imag()));
    out.mass_squared = m2.real();
    if (m2.real() < 0)
        throw RealityError("Dirac mass squared is negative at this momentum (imaginary mass)");
    out.mass = std::sqrt(m2.real());

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(out.pslash);
    out.eigenvalues.assign(d, {0, 0});
    out.eigenvectors = ces.eigenvectors();
    double tol = 1e-8 * (1.0 + out.mass);
    for (int k = 0; k < d; ++k) {
        out.eigenvalues[k] = ces.eigenvalues()[k];
        if (std::abs(ces.eigenvalues()[k] - out.mass) < tol) ++out.plus_multiplicity;
        else if (std::abs(ces.eigenvalues()[k] + out.mass) < tol) ++out.minus_multiplicity;
    }
    return out;
}

} // namespace qmink
