#include "qmink/engine.hpp"

#include <gmpxx.h>

#include "qmink/errors.hpp"

namespace qmink {

std::vector<Word> all_words(int n, int d) {
    std::vector<Word> out;
    if (d == 0) {
        out.push_back(Word());
        return out;
    }
    std::vector<Word> prev = all_words(n, d - 1);
    out.reserve(prev.size() * n);
    for (int letter = 0; letter < n; ++letter)
        for (const Word& w : prev) out.push_back(Word(1, static_cast<char>(letter)) + w);
    return out;
}

NormalFormEngine::NormalFormEngine(const StructureData& sd)
    : sd_(sd), cutoff_(sd.degree_cutoff) {
    if (cutoff_ < 2) throw CutoffError("degree cutoff must be at least 2");
    require_algebra_gates(sd_);

    const int n = sd_.n;
    const std::size_t n2 = static_cast<std::size_t>(n) * n;

    // Relation generators: one q_beta per row of a row basis of (R - 1).
    QMatrix rm1 = sd_.r - QMatrix::identity(n2);
    QMatrix basis = rm1;
    basis.rref();
    for (std::size_t row = 0; row < n2; ++row) {
        NCPoly q;
        bool nonzero = false;
        for (std::size_t kl = 0; kl < n2; ++kl) {
            const Scalar& b = basis.at(row, kl);
            if (b.is_zero()) continue;
            nonzero = true;
            int k = static_cast<int>(kl) / n, l = static_cast<int>(kl) % n;
            q.add_term(word_of({k, l}), b);
            for (int s = 0; s < n; ++s) q.add_term(Word(1, static_cast<char>(s)), -(b * sd_.Z(k, l, s)));
            q.add_term(Word(), b * sd_.T(k, l));
        }
        if (nonzero) relations_.push_back(q);
    }

    pivots_per_degree_.assign(cutoff_ + 1, 0);
    for (int deg = 2; deg <= cutoff_; ++deg) {
        for (const NCPoly& q : relations_) {
            for (int left = 0; left + 2 <= deg; ++left) {
                int right = deg - 2 - left;
                for (const Word& ml : all_words(n, left))
                    for (const Word& mr : all_words(n, right)) {
                        NCPoly row = NCPoly::monomial(ml).concat_mul(q).concat_mul(
                            NCPoly::monomial(mr));
                        insert_row(std::move(row));
                    }
            }
        }
    }
    for (const auto& [w, repl] : rewrite_) pivots_per_degree_[w.size()]++;

    // Quotient dimensions are expected to match the classical count
    // C(N+d-1, d); a mismatch is reported, not silently ignored.
    for (int d = 0; d <= cutoff_; ++d) {
        mpz_class expected;
        mpz_bin_uiui(expected.get_mpz_t(), static_cast<unsigned long>(n + d - 1),
                     static_cast<unsigned long>(d));
        mpz_class actual(static_cast<unsigned long>(complement_dimension(d)));
        if (actual != expected) {
            warnings_.push_back("quotient dimension at degree " + std::to_string(d) + " is " +
                                actual.get_str() + ", classical value is " + expected.get_str());
        }
    }
}

NCPoly NormalFormEngine::reduce(NCPoly p) const {
    // Substitute the greatest pivot word present until only complement words
    // remain. Each step replaces a word by strictly smaller ones, so the
    // loop terminates.
    while (true) {
        const Word* pivot = nullptr;
        Scalar coeff;
        for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
            auto hit = rewrite_.find(it->first);
            if (hit != rewrite_.end()) {
                pivot = &hit->first;
                coeff = it->second;
                break;
            }
        }
        if (!pivot) break;
        Word w = *pivot;
        p.add_term(w, -coeff);
        p += rewrite_.at(w).scaled(coeff);
    }
    return p;
}

void NormalFormEngine::insert_row(NCPoly row) {
    row = reduce(std::move(row));
    if (row.is_zero()) return;
    auto lead = row.terms().rbegin();
    Word w = lead->first;
    Scalar c = lead->second;
    row.add_term(w, -c);
    rewrite_.emplace(std::move(w), row.scaled(Scalar(-1) / c));
}

NCPoly NormalFormEngine::normal_form(NCPoly p) const {
    if (p.degree() > cutoff_)
        throw CutoffError("polynomial degree " + std::to_string(p.degree()) +
                          " exceeds cutoff " + std::to_string(cutoff_));
    NCPoly out = reduce(std::move(p));
    out.set_normalized(true);
    return out;
}

NCPoly NormalFormEngine::multiply(const NCPoly& a, const NCPoly& b) const {
    if (a.degree() + b.degree() > cutoff_)
        throw CutoffError("product degree " + std::to_string(a.degree() + b.degree()) +
                          " exceeds cutoff " + std::to_string(cutoff_));
    return normal_form(a.concat_mul(b));
}

bool NormalFormEngine::star_well_defined() const {
    std::call_once(star_flag_, [this] {
        star_ok_ = true;
        for (std::size_t k = 0; k < relations_.size(); ++k) {
            NCPoly res = reduce(relations_[k].star_raw());
            if (!res.is_zero()) {
                star_ok_ = false;
                star_witness_ = "star of relation generator " + std::to_string(k) +
                                " reduces to " + res.str();
                return;
            }
        }
    });
    return star_ok_;
}

void NormalFormEngine::require_star() const {
    if (!star_well_defined())
        throw StarError("star involution is not defined on this structure: " + star_witness_);
}

NCPoly NormalFormEngine::star(const NCPoly& a) const {
    require_star();
    return normal_form(a.star_raw());
}

std::size_t NormalFormEngine::complement_dimension(int d) const {
    std::size_t total = 1;
    for (int k = 0; k < d; ++k) total *= static_cast<std::size_t>(sd_.n);
    return total - pivots_per_degree_[d];
}

std::vector<Word> NormalFormEngine::complement_words(int d) const {
    std::vector<Word> out;
    for (const Word& w : all_words(sd_.n, d))
        if (is_complement_word(w)) out.push_back(w);
    return out;
}

} // namespace qmink
