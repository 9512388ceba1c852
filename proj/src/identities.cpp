#include "qmink/identities.hpp"

#include <algorithm>
#include <random>

#include "qmink/errors.hpp"
#include "qmink/exterior.hpp"

namespace qmink {

namespace {

NCPoly random_poly(std::mt19937& rng, const NormalFormEngine& eng, int maxdeg, int terms) {
    std::uniform_int_distribution<int> deg(0, maxdeg);
    std::uniform_int_distribution<int> letter(0, eng.num_generators() - 1);
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    NCPoly p;
    for (int t = 0; t < terms; ++t) {
        Word w;
        int d = deg(rng);
        for (int k = 0; k < d; ++k) w.push_back(static_cast<char>(letter(rng)));
        int nu = num(rng);
        if (nu == 0) nu = 1;
        mpq_class re(nu, den(rng)), im(num(rng), den(rng));
        re.canonicalize();
        im.canonicalize();
        p.add_term(w, Scalar(re, im));
    }
    return eng.normal_form(p);
}

std::vector<Word> monomials_through(int n, int maxdeg) {
    std::vector<Word> out;
    for (int d = 0; d <= maxdeg; ++d)
        for (const Word& w : all_words(n, d)) out.push_back(w);
    return out;
}

// metric exchange hypotheses used by the raised-index identities
bool metric_r_exchange(const StructureData& sd) {
    const int n = sd.n;
    for (int j = 0; j < n; ++j)
        for (int d = 0; d < n; ++d)
            for (int c = 0; c < n; ++c)
                for (int a = 0; a < n; ++a) {
                    Scalar lhs, rhs;
                    for (int b = 0; b < n; ++b) lhs += sd.G(j, b) * sd.R(d, c, b, a);
                    for (int k = 0; k < n; ++k) rhs += sd.R(j, d, a, k) * sd.G(k, c);
                    if (lhs != rhs) return false;
                }
    return true;
}

bool metric_z_exchange(const StructureData& sd) {
    const int n = sd.n;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int b = 0; b < n; ++b) {
                Scalar lhs, rhs;
                for (int i = 0; i < n; ++i)
                    for (int l = 0; l < n; ++l) lhs += sd.G(j, i) * sd.Z(k, l, i) * sd.Ginv(l, b);
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) rhs += sd.R(j, k, c, d) * sd.Z(c, d, b);
                if (lhs != -rhs) return false;
            }
    return true;
}

std::map<Word, Scalar, GradedLex> two_tensor(const StructureData& sd, int i, int k) {
    // omega^{ik} = dx^i (x) dx^k + R^{ik}_{ab} dx^a (x) dx^b, as word coefficients
    std::map<Word, Scalar, GradedLex> out;
    out[word_of({i, k})] += Scalar(1);
    for (int a = 0; a < sd.n; ++a)
        for (int b = 0; b < sd.n; ++b) {
            const Scalar& r = sd.R(i, k, a, b);
            if (r.is_zero()) continue;
            auto key = word_of({a, b});
            out[key] += r;
            if (out[key].is_zero()) out.erase(key);
        }
    return out;
}

} // namespace

std::optional<GammaSet> default_gammas(const StructureData& sd) {
    if (sd.gammas) {
        GammaSet gs;
        gs.dim = static_cast<int>((*sd.gammas)[0].rows());
        for (const QMatrix& m : *sd.gammas) {
            if (static_cast<int>(m.rows()) != gs.dim)
                throw ParseError("gamma matrices must share one dimension");
            gs.gamma.push_back(m);
        }
        return gs;
    }
    if (sd.is_r_flip() && sd.is_g_real_symmetric()) {
        try {
            return make_classical_gammas(sd);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

ValidationReport identity_suite(const StructureData& sd_in, const std::optional<GammaSet>& gammas,
                                const IdentitySuiteOptions& opts) {
    ValidationReport rep;
    const int n = sd_in.n;
    std::mt19937 rng(static_cast<std::uint32_t>(opts.seed));

    // the suite needs two extra degrees of headroom over its monomial range
    StructureData sd = sd_in;
    sd.degree_cutoff = std::min(sd.degree_cutoff, std::max(2, opts.max_degree + 2));
    NormalFormEngine eng(sd);
    std::optional<Calculus> calc;
    try {
        calc.emplace(eng);
    } catch (const GateError& e) {
        rep.checks.push_back({"calculus_gate", false, e.what(), false});
        return rep;
    }
    rep.checks.push_back({"calculus_gate", true, "", false});
    Operators ops(*calc);

    const int maxdeg = std::min(opts.max_degree, eng.cutoff() - 2);
    std::vector<Word> monos = monomials_through(n, maxdeg);

    // partial_j(x^i) = delta^i_j
    {
        ValidationCheck c{"partial_kronecker", true, "", false};
        for (int i = 0; i < n && c.pass; ++i)
            for (int j = 0; j < n; ++j) {
                NCPoly got = calc->partial(j, NCPoly::generator(i));
                NCPoly want = (i == j) ? NCPoly::constant(Scalar(1)) : NCPoly();
                if (!(got == want)) {
                    c.pass = false;
                    c.witness = "partial_" + std::to_string(j) + "(x^" + std::to_string(i) + ")";
                    break;
                }
            }
        rep.checks.push_back(c);
    }
    // partial_l partial_k = R^{ij}_{kl} partial_j partial_i
    {
        ValidationCheck c{"derivative_braid", true, "", false};
        for (const Word& w : monos) {
            NCPoly m = NCPoly::monomial(w);
            for (int k = 0; k < n && c.pass; ++k)
                for (int l = 0; l < n; ++l) {
                    NCPoly lhs = calc->partial(l, calc->partial(k, m));
                    NCPoly rhs;
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) {
                            const Scalar& r = sd.R(i, j, k, l);
                            if (!r.is_zero())
                                rhs += calc->partial(j, calc->partial(i, m)).scaled(r);
                        }
                    if (!(lhs == rhs)) {
                        c.pass = false;
                        c.witness = "monomial " + m.str() + " at (k,l)=(" + std::to_string(k) +
                                    "," + std::to_string(l) + ")";
                        break;
                    }
                }
            if (!c.pass) break;
        }
        rep.checks.push_back(c);
    }
    // partial_i(x^k a) = delta^k_i a + (R^{kl}_{in} x^n + Z^{kl}_i) partial_l(a)
    {
        ValidationCheck c{"derivative_recursion", true, "", false};
        for (const Word& w : monos) {
            if (static_cast<int>(w.size()) > maxdeg - 1) continue;
            NCPoly m = NCPoly::monomial(w);
            for (int i = 0; i < n && c.pass; ++i)
                for (int k = 0; k < n; ++k) {
                    NCPoly lhs = calc->partial(i, eng.multiply(NCPoly::generator(k), m));
                    NCPoly rhs = (i == k) ? eng.normal_form(m) : NCPoly();
                    for (int l = 0; l < n; ++l) {
                        NCPoly dl = calc->partial(l, m);
                        if (dl.is_zero()) continue;
                        NCPoly factor;
                        for (int nn = 0; nn < n; ++nn) {
                            const Scalar& r = sd.R(k, l, i, nn);
                            if (!r.is_zero()) factor.add_term(Word(1, static_cast<char>(nn)), r);
                        }
                        factor.add_term(Word(), sd.Z(k, l, i));
                        if (!factor.is_zero()) rhs += eng.multiply(eng.normal_form(factor), dl);
                    }
                    if (!(lhs == rhs)) {
                        c.pass = false;
                        c.witness = "monomial " + m.str() + " at (i,k)=(" + std::to_string(i) +
                                    "," + std::to_string(k) + ")";
                        break;
                    }
                }
            if (!c.pass) break;
        }
        rep.checks.push_back(c);
    }
    // box partial_k = partial_k box
    {
        ValidationCheck c{"laplacian_commutes", true, "", false};
        for (const Word& w : monos) {
            NCPoly m = NCPoly::monomial(w);
            for (int k = 0; k < n; ++k) {
                NCPoly lhs = ops.box(calc->partial(k, m));
                NCPoly rhs = calc->partial(k, ops.box(m));
                if (!(lhs == rhs)) {
                    c.pass = false;
                    c.witness = "monomial " + m.str() + " at k=" + std::to_string(k);
                    break;
                }
            }
            if (!c.pass) break;
        }
        rep.checks.push_back(c);
    }
    const bool h_r = metric_r_exchange(sd);
    const bool h_z = metric_z_exchange(sd);
    // partial^i partial^j = R^{ij}_{kl} partial^k partial^l
    {
        ValidationCheck c{"raised_derivative_braid", true, "", false};
        if (!h_r) {
            c.skipped = true;
            c.witness = "metric-R exchange hypothesis fails on this structure";
        } else {
            for (const Word& w : monos) {
                NCPoly m = NCPoly::monomial(w);
                for (int i = 0; i < n && c.pass; ++i)
                    for (int j = 0; j < n; ++j) {
                        NCPoly lhs = ops.partial_up(i, ops.partial_up(j, m));
                        NCPoly rhs;
                        for (int k = 0; k < n; ++k)
                            for (int l = 0; l < n; ++l) {
                                const Scalar& r = sd.R(i, j, k, l);
                                if (!r.is_zero())
                                    rhs += ops.partial_up(k, ops.partial_up(l, m)).scaled(r);
                            }
                        if (!(lhs == rhs)) {
                            c.pass = false;
                            c.witness = "monomial " + m.str();
                            break;
                        }
                    }
                if (!c.pass) break;
            }
        }
        rep.checks.push_back(c);
    }
    // partial^j x^k = g^{jk} + R^{jk}_{ab} x^a partial^b - (RZ)^{jk}_b partial^b
    {
        ValidationCheck c{"raised_derivative_recursion", true, "", false};
        if (!h_r || !h_z) {
            c.skipped = true;
            c.witness = "metric exchange hypotheses fail on this structure";
        } else {
            for (const Word& w : monos) {
                if (static_cast<int>(w.size()) > maxdeg - 1) continue;
                NCPoly m = NCPoly::monomial(w);
                for (int j = 0; j < n && c.pass; ++j)
                    for (int k = 0; k < n; ++k) {
                        NCPoly lhs = ops.partial_up(j, eng.multiply(NCPoly::generator(k), m));
                        NCPoly rhs = eng.normal_form(m).scaled(sd.G(j, k));
                        for (int b = 0; b < n; ++b) {
                            NCPoly db = ops.partial_up(b, m);
                            if (db.is_zero()) continue;
                            for (int a = 0; a < n; ++a) {
                                const Scalar& r = sd.R(j, k, a, b);
                                if (!r.is_zero())
                                    rhs += eng.multiply(NCPoly::generator(a), db).scaled(r);
                            }
                            Scalar rz;
                            for (int cGen = 0; cGen < n; ++cGen)
                                for (int d = 0; d < n; ++d)
                                    rz += sd.R(j, k, cGen, d) * sd.Z(cGen, d, b);
                            rhs -= db.scaled(rz);
                        }
                        if (!(lhs == rhs)) {
                            c.pass = false;
                            c.witness = "monomial " + m.str() + " at (j,k)=(" + std::to_string(j) +
                                        "," + std::to_string(k) + ")";
                            break;
                        }
                    }
                if (!c.pass) break;
            }
        }
        rep.checks.push_back(c);
    }
    // partial_c rho_a^t = rho_d^t partial_b R^{bd}_{ac}
    {
        ValidationCheck c{"twisted_derivative_exchange", true, "", false};
        for (const Word& w : monos) {
            NCPoly m = NCPoly::monomial(w);
            for (int a = 0; a < n && c.pass; ++a)
                for (int cc = 0; cc < n && c.pass; ++cc)
                    for (int t = 0; t < n; ++t) {
                        NCPoly lhs = calc->partial(cc, calc->rho_lower_upper(a, t, m));
                        NCPoly rhs;
                        for (int b = 0; b < n; ++b)
                            for (int d = 0; d < n; ++d) {
                                const Scalar& r = sd.R(b, d, a, cc);
                                if (!r.is_zero())
                                    rhs += calc->rho_lower_upper(d, t, calc->partial(b, m))
                                               .scaled(r);
                            }
                        if (!(lhs == rhs)) {
                            c.pass = false;
                            c.witness = "monomial " + m.str() + " at (a,c,t)=(" +
                                        std::to_string(a) + "," + std::to_string(cc) + "," +
                                        std::to_string(t) + ")";
                            break;
                        }
                    }
            if (!c.pass) break;
        }
        rep.checks.push_back(c);
    }
    // both contraction forms of the Laplacian agree
    {
        ValidationCheck c{"box_contraction_forms", true, "", false};
        for (int t = 0; t < 5 && c.pass; ++t) {
            NCPoly a = random_poly(rng, eng, maxdeg, 4);
            if (!(ops.box(a) == ops.box_alt(a))) {
                c.pass = false;
                c.witness = "random polynomial " + a.str();
            }
        }
        rep.checks.push_back(c);
    }
    // d0 product rule on random pairs
    {
        ValidationCheck c{"product_rule", true, "", false};
        for (int t = 0; t < 5 && c.pass; ++t) {
            NCPoly a = random_poly(rng, eng, std::min(2, maxdeg), 3);
            NCPoly b = random_poly(rng, eng, std::min(2, maxdeg), 3);
            OneForm lhs = calc->d0(eng.multiply(a, b));
            OneForm rhs = calc->left_mul(a, calc->d0(b)) + calc->right_mul(calc->d0(a), b);
            if (!(lhs == rhs)) {
                c.pass = false;
                c.witness = "pair (" + a.str() + ", " + b.str() + ")";
            }
        }
        rep.checks.push_back(c);
    }
    // x^m dx^i moved to basis form matches the generator relation
    {
        ValidationCheck c{"form_coefficient_move", true, "", false};
        for (int m = 0; m < n && c.pass; ++m)
            for (int i = 0; i < n; ++i) {
                OneForm dxi(n);
                dxi.comp[i] = NCPoly::constant(Scalar(1));
                OneForm got = calc->left_mul(NCPoly::generator(m), dxi);
                OneForm want(n);
                for (int k = 0; k < n; ++k) {
                    NCPoly e;
                    for (int l = 0; l < n; ++l) {
                        const Scalar& r = sd.R(m, i, k, l);
                        if (!r.is_zero()) e.add_term(Word(1, static_cast<char>(l)), r);
                    }
                    e.add_term(Word(), sd.Z(m, i, k));
                    want.comp[k] = eng.normal_form(e);
                }
                if (!(got == want)) {
                    c.pass = false;
                    c.witness = "x^" + std::to_string(m) + " dx^" + std::to_string(i);
                    break;
                }
            }
        rep.checks.push_back(c);
    }
    if (gammas) {
        ValidationCheck c{"clifford_relation", true, "", false};
        ValidationReport sub = verify_gammas(sd, *gammas);
        if (!sub.all_pass()) {
            c.pass = false;
            for (const auto& s : sub.checks)
                if (!s.pass) {
                    c.witness = s.name + ": " + s.witness;
                    break;
                }
        }
        rep.checks.push_back(c);

        ValidationCheck c2{"dirac_square", true, "", false};
        for (int t = 0; t < 4 && c2.pass; ++t) {
            SpinorPoly phi(gammas->dim);
            for (int s = 0; s < gammas->dim; ++s) phi[s] = random_poly(rng, eng, maxdeg, 3);
            SpinorPoly twice = ops.dirac(*gammas, ops.dirac(*gammas, phi));
            for (int s = 0; s < gammas->dim; ++s)
                if (!(twice[s] == ops.box(phi[s]))) {
                    c2.pass = false;
                    c2.witness = "spinor component " + std::to_string(s);
                    break;
                }
        }
        rep.checks.push_back(c2);
    } else {
        rep.checks.push_back({"clifford_relation", true, "no gamma set available", true});
        rep.checks.push_back({"dirac_square", true, "no gamma set available", true});
    }
    if (opts.with_exterior) {
        Exterior ext(*calc);
        // dd = 0 on random polynomials and random 1-forms
        {
            ValidationCheck c{"dd_zero", true, "", false};
            for (int t = 0; t < 4 && c.pass; ++t) {
                NCPoly a = random_poly(rng, eng, maxdeg, 4);
                Form dda = ext.d(ext.d(ext.from_poly(a)));
                if (!dda.is_zero()) {
                    c.pass = false;
                    c.witness = "polynomial " + a.str();
                }
            }
            for (int t = 0; t < 3 && c.pass; ++t) {
                OneForm omega(n);
                for (int i = 0; i < n; ++i)
                    omega.comp[i] = random_poly(rng, eng, std::min(2, maxdeg), 2);
                Form f = ext.from_oneform(omega);
                if (!ext.d(ext.d(f)).is_zero()) {
                    c.pass = false;
                    c.witness = "random 1-form";
                }
            }
            rep.checks.push_back(c);
        }
        // graded product rule
        {
            ValidationCheck c{"graded_leibniz", true, "", false};
            for (int t = 0; t < 3 && c.pass; ++t) {
                NCPoly a = random_poly(rng, eng, std::min(2, maxdeg), 2);
                OneForm omega(n);
                for (int i = 0; i < n; ++i)
                    omega.comp[i] = random_poly(rng, eng, std::min(2, maxdeg), 2);
                Form f0 = ext.from_poly(a);
                Form f1 = ext.from_oneform(omega);
                // (0,1): d(a w) = da ^ w + a dw
                Form lhs = ext.d(ext.wedge(f0, f1));
                Form rhs = ext.wedge(ext.d(f0), f1) + ext.wedge(f0, ext.d(f1));
                if (!(lhs == rhs)) {
                    c.pass = false;
                    c.witness = "degree (0,1) pair";
                    break;
                }
                // (1,1): d(w ^ w') = dw ^ w' - w ^ dw'
                OneForm omega2(n);
                for (int i = 0; i < n; ++i)
                    omega2.comp[i] = random_poly(rng, eng, std::min(1, maxdeg), 2);
                Form f2 = ext.from_oneform(omega2);
                Form lhs2 = ext.d(ext.wedge(f1, f2));
                Form rhs2 = ext.wedge(ext.d(f1), f2) + ext.wedge(f1, ext.d(f2)).scaled(Scalar(-1));
                if (!(lhs2 == rhs2)) {
                    c.pass = false;
                    c.witness = "degree (1,1) pair";
                }
            }
            rep.checks.push_back(c);
        }
        // dx^i ^ dx^j = -R^{ij}_{kl} dx^k ^ dx^l after projection
        {
            ValidationCheck c{"wedge_antisymmetry", true, "", false};
            for (int i = 0; i < n && c.pass; ++i)
                for (int j = 0; j < n; ++j) {
                    Form lhs = ext.wedge(ext.basis_form(Word(1, static_cast<char>(i))),
                                         ext.basis_form(Word(1, static_cast<char>(j))));
                    Form rhs = ext.zero_form(2);
                    for (int k = 0; k < n; ++k)
                        for (int l = 0; l < n; ++l) {
                            const Scalar& r = sd.R(i, j, k, l);
                            if (r.is_zero()) continue;
                            rhs += ext.wedge(ext.basis_form(Word(1, static_cast<char>(k))),
                                             ext.basis_form(Word(1, static_cast<char>(l))))
                                       .scaled(-r);
                        }
                    if (!(lhs == rhs)) {
                        c.pass = false;
                        c.witness = "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")";
                        break;
                    }
                }
            rep.checks.push_back(c);
        }
        // x^m omega^{ik} = R^{sk}_{nb} R^{mi}_{js} omega^{jn} x^b + omega^{ab} l^{mik}_{ab}
        {
            ValidationCheck c{"bimodule_two_tensor_move", true, "", false};
            for (int m = 0; m < n && c.pass; ++m)
                for (int i = 0; i < n && c.pass; ++i)
                    for (int k = 0; k < n; ++k) {
                        std::map<Word, NCPoly, GradedLex> lhs;
                        for (const auto& [w, cw] : two_tensor(sd, i, k)) {
                            for (auto& [mw, poly] :
                                 calc->move_past(NCPoly::generator(m).scaled(cw), w)) {
                                lhs[mw] += poly;
                            }
                        }
                        std::map<Word, NCPoly, GradedLex> rhs;
                        for (int j = 0; j < n; ++j)
                            for (int nn = 0; nn < n; ++nn) {
                                for (int b = 0; b < n; ++b) {
                                    Scalar coef;
                                    for (int s = 0; s < n; ++s)
                                        coef += sd.R(s, k, nn, b) * sd.R(m, i, j, s);
                                    if (coef.is_zero()) continue;
                                    for (const auto& [w, cw] : two_tensor(sd, j, nn))
                                        rhs[w] += NCPoly::monomial(Word(1, static_cast<char>(b)),
                                                                   coef * cw);
                                }
                                Scalar lcoef = sd.Z(m, i, j) * Scalar((k == nn) ? 1 : 0);
                                for (int s = 0; s < n; ++s)
                                    lcoef += sd.R(m, i, j, s) * sd.Z(s, k, nn);
                                if (!lcoef.is_zero())
                                    for (const auto& [w, cw] : two_tensor(sd, j, nn))
                                        rhs[w] += NCPoly::constant(lcoef * cw);
                            }
                        bool equal = true;
                        for (const Word& w : all_words(n, 2)) {
                            NCPoly l = lhs.count(w) ? eng.normal_form(lhs[w]) : NCPoly();
                            NCPoly r = rhs.count(w) ? eng.normal_form(rhs[w]) : NCPoly();
                            if (!(l == r)) {
                                equal = false;
                                break;
                            }
                        }
                        if (!equal) {
                            c.pass = false;
                            c.witness = "(m,i,k)=(" + std::to_string(m) + "," + std::to_string(i) +
                                        "," + std::to_string(k) + ")";
                        }
                    }
            rep.checks.push_back(c);
        }
        // star compatibility with d, on functions and forms
        {
            ValidationCheck c{"star_derivative_compat", true, "", false};
            ValidationCheck c2{"star_form_d_compat", true, "", false};
            try {
                for (int t = 0; t < 4 && c.pass; ++t) {
                    NCPoly a = random_poly(rng, eng, maxdeg, 3);
                    OneForm lhs = calc->star_oneform(calc->d0(a));
                    OneForm rhs = calc->d0(eng.star(a));
                    if (!(lhs == rhs)) {
                        c.pass = false;
                        c.witness = "polynomial " + a.str();
                    }
                }
                for (int t = 0; t < 3 && c2.pass; ++t) {
                    OneForm omega(n);
                    for (int i = 0; i < n; ++i)
                        omega.comp[i] = random_poly(rng, eng, std::min(2, maxdeg), 2);
                    Form f = ext.from_oneform(omega);
                    Form lhs = ext.d(ext.star_form(f));
                    Form rhs = ext.star_form(ext.d(f));
                    if (!(lhs == rhs)) {
                        c2.pass = false;
                        c2.witness = "random 1-form";
                    }
                }
            } catch (const StarError& e) {
                c.pass = c2.pass = true;
                c.skipped = c2.skipped = true;
                c.witness = c2.witness = e.what();
            }
            rep.checks.push_back(c);
            rep.checks.push_back(c2);
        }
    }
    return rep;
}

} // namespace qmink
