#include "qmink/calculus.hpp"

#include <algorithm>

#include "qmink/errors.hpp"

namespace qmink {

bool OneForm::is_zero() const {
    for (const auto& p : comp)
        if (!p.is_zero()) return false;
    return true;
}

int OneForm::max_degree() const {
    int d = 0;
    for (const auto& p : comp) d = std::max(d, p.degree());
    return d;
}

OneForm& OneForm::operator+=(const OneForm& o) {
    for (std::size_t k = 0; k < comp.size(); ++k) comp[k] += o.comp[k];
    return *this;
}

Calculus::Calculus(const NormalFormEngine& engine) : eng_(engine), n_(engine.num_generators()) {
    gen_rho_.resize(n_);
    for (int k = 0; k < n_; ++k) {
        gen_rho_[k].resize(static_cast<std::size_t>(n_) * n_);
        for (int l = 0; l < n_; ++l)
            for (int u = 0; u < n_; ++u) {
                NCPoly entry;
                for (int m = 0; m < n_; ++m) {
                    const Scalar& c = eng_.structure().R(k, u, l, m);
                    if (!c.is_zero()) entry.add_term(Word(1, static_cast<char>(m)), c);
                }
                entry.add_term(Word(), eng_.structure().Z(k, u, l));
                gen_rho_[k][static_cast<std::size_t>(l) * n_ + u] = eng_.normal_form(entry);
            }
    }
    {
        LData unit;
        unit.rho.resize(static_cast<std::size_t>(n_) * n_);
        unit.del.resize(n_);
        for (int l = 0; l < n_; ++l)
            unit.rho[static_cast<std::size_t>(l) * n_ + l] = NCPoly::constant(Scalar(1));
        cache_.emplace(Word(), std::move(unit));
    }
    check_well_defined();
}

const Calculus::LData& Calculus::ldata(const Word& w) const {
    std::lock_guard<std::mutex> lock(mutex_);
    // longest cached prefix, then extend one letter at a time
    std::size_t have = w.size();
    while (have > 0 && cache_.find(w.substr(0, have)) == cache_.end()) --have;
    const LData* cur = &cache_.at(w.substr(0, have));
    for (std::size_t pos = have; pos < w.size(); ++pos) {
        int letter = static_cast<int>(w[pos]);
        const std::vector<NCPoly>& km = gen_rho_[letter];
        LData next;
        next.rho.resize(static_cast<std::size_t>(n_) * n_);
        next.del.resize(n_);
        NCPoly gen = NCPoly::generator(letter);
        for (int l = 0; l < n_; ++l) {
            for (int u = 0; u < n_; ++u) {
                NCPoly acc;
                for (int m = 0; m < n_; ++m) {
                    const NCPoly& a = cur->rho[static_cast<std::size_t>(l) * n_ + m];
                    const NCPoly& b = km[static_cast<std::size_t>(m) * n_ + u];
                    if (!a.is_zero() && !b.is_zero()) acc += eng_.multiply(a, b);
                }
                next.rho[static_cast<std::size_t>(l) * n_ + u] = std::move(acc);
            }
            NCPoly d = cur->rho[static_cast<std::size_t>(l) * n_ + letter];
            if (!cur->del[l].is_zero()) d += eng_.multiply(cur->del[l], gen);
            next.del[l] = std::move(d);
        }
        cur = &cache_.emplace(w.substr(0, pos + 1), std::move(next)).first->second;
    }
    return *cur;
}

void Calculus::check_well_defined() const {
    const auto& rels = eng_.relation_generators();
    for (std::size_t b = 0; b < rels.size(); ++b) {
        for (int l = 0; l < n_; ++l) {
            NCPoly d = partial(l, rels[b]);
            if (!d.is_zero())
                throw GateError("derivative homomorphism gate failed: partial_" +
                                std::to_string(l) + " applied to relation generator " +
                                std::to_string(b) + " gives " + d.str() +
                                "; the structure admits no covariant calculus");
            for (int u = 0; u < n_; ++u) {
                NCPoly r = rho_lower_upper(l, u, rels[b]);
                if (!r.is_zero())
                    throw GateError("derivative homomorphism gate failed: rho_" +
                                    std::to_string(l) + "^" + std::to_string(u) +
                                    " applied to relation generator " + std::to_string(b) +
                                    " gives " + r.str() +
                                    "; the structure admits no covariant calculus");
            }
        }
    }
}

NCPoly Calculus::partial(int i, const NCPoly& a) const {
    if (a.degree() > eng_.cutoff()) throw CutoffError("partial: degree exceeds cutoff");
    NCPoly out;
    for (const auto& [w, c] : a.terms()) out += ldata(w).del[i].scaled(c);
    out.set_normalized(true);
    return out;
}

NCPoly Calculus::rho_lower_upper(int l, int u, const NCPoly& a) const {
    if (a.degree() > eng_.cutoff()) throw CutoffError("rho: degree exceeds cutoff");
    NCPoly out;
    for (const auto& [w, c] : a.terms())
        out += ldata(w).rho[static_cast<std::size_t>(l) * n_ + u].scaled(c);
    out.set_normalized(true);
    return out;
}

OneForm Calculus::d0(const NCPoly& a) const {
    OneForm omega(n_);
    for (int i = 0; i < n_; ++i) omega.comp[i] = partial(i, a);
    return omega;
}

OneForm Calculus::left_mul(const NCPoly& a, const OneForm& omega) const {
    OneForm out(n_);
    for (int j = 0; j < n_; ++j)
        for (int i = 0; i < n_; ++i) {
            if (omega.comp[i].is_zero()) continue;
            NCPoly r = rho_lower_upper(j, i, a);
            if (!r.is_zero()) out.comp[j] += eng_.multiply(r, omega.comp[i]);
        }
    return out;
}

OneForm Calculus::right_mul(const OneForm& omega, const NCPoly& a) const {
    OneForm out(n_);
    for (int i = 0; i < n_; ++i)
        if (!omega.comp[i].is_zero()) out.comp[i] = eng_.multiply(omega.comp[i], a);
    return out;
}

void Calculus::require_star_forms() const {
    std::call_once(star_form_flag_, [this] {
        star_form_ok_ = true;
        // the 1-form star exists iff rho_s^k(rho_k^u(a)^*) = a^* d^u_s; it is
        // multiplicative in a, so generators suffice
        for (int i = 0; i < n_ && star_form_ok_; ++i)
            for (int s = 0; s < n_ && star_form_ok_; ++s)
                for (int u = 0; u < n_; ++u) {
                    NCPoly acc;
                    for (int k = 0; k < n_; ++k) {
                        const NCPoly& inner = gen_rho_[i][static_cast<std::size_t>(k) * n_ + u];
                        if (!inner.is_zero())
                            acc += rho_lower_upper(s, k, eng_.star(inner));
                    }
                    NCPoly want = (s == u) ? NCPoly::generator(i) : NCPoly();
                    if (!(acc == want)) {
                        star_form_ok_ = false;
                        star_form_witness_ = "rho_s^k((rho_k^u x^" + std::to_string(i) +
                                             ")^*) != x^" + std::to_string(i) +
                                             " delta at (s,u)=(" + std::to_string(s) + "," +
                                             std::to_string(u) + ")";
                        break;
                    }
                }
    });
    if (!star_form_ok_)
        throw StarError("star is not defined on 1-forms: " + star_form_witness_);
}

OneForm Calculus::star_oneform(const OneForm& omega) const {
    eng_.require_star();
    require_star_forms();
    OneForm out(n_);
    for (int j = 0; j < n_; ++j)
        for (int i = 0; i < n_; ++i) {
            if (omega.comp[i].is_zero()) continue;
            out.comp[j] += rho_lower_upper(j, i, eng_.star(omega.comp[i]));
        }
    return out;
}

std::map<Word, NCPoly, GradedLex> Calculus::move_past(const NCPoly& a, const Word& k) const {
    std::map<Word, NCPoly, GradedLex> cur;
    cur.emplace(Word(), a);
    for (char raw : k) {
        int letter = static_cast<int>(raw);
        std::map<Word, NCPoly, GradedLex> next;
        for (const auto& [prefix, poly] : cur) {
            if (poly.is_zero()) continue;
            for (int m = 0; m < n_; ++m) {
                NCPoly r = rho_lower_upper(m, letter, poly);
                if (r.is_zero()) continue;
                Word key = prefix + Word(1, static_cast<char>(m));
                auto it = next.find(key);
                if (it == next.end()) next.emplace(std::move(key), std::move(r));
                else it->second += r;
            }
        }
        cur = std::move(next);
    }
    return cur;
}

} // namespace qmink
