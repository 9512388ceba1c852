#include "qmink/exterior.hpp"

#include <gmpxx.h>

#include "qmink/errors.hpp"

namespace qmink {

std::size_t word_index(const Word& w, int n) {
    std::size_t idx = 0;
    for (char c : w) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(c);
    return idx;
}

Word index_word(std::size_t idx, int n, int degree) {
    Word w(degree, 0);
    for (int pos = degree - 1; pos >= 0; --pos) {
        w[pos] = static_cast<char>(idx % n);
        idx /= static_cast<std::size_t>(n);
    }
    return w;
}

SparseVec apply_rnk(const StructureData& sd, int n_slots, int k, const SparseVec& v) {
    const int n = sd.n;
    // stride of slot s (0-based): n^(n_slots-1-s); R acts on slots (k-1, k)
    std::size_t stride_b = 1;
    for (int s = k + 1; s < n_slots; ++s) stride_b *= static_cast<std::size_t>(n);
    std::size_t stride_a = stride_b * static_cast<std::size_t>(n);
    SparseVec out;
    for (const auto& [idx, c] : v) {
        int a = static_cast<int>(idx / stride_a % static_cast<std::size_t>(n));
        int b = static_cast<int>(idx / stride_b % static_cast<std::size_t>(n));
        std::size_t base = idx - static_cast<std::size_t>(a) * stride_a -
                           static_cast<std::size_t>(b) * stride_b;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Scalar& r = sd.R(i, j, a, b);
                if (r.is_zero()) continue;
                std::size_t tgt = base + static_cast<std::size_t>(i) * stride_a +
                                  static_cast<std::size_t>(j) * stride_b;
                auto it = out.find(tgt);
                if (it == out.end()) out.emplace(tgt, r * c);
                else {
                    it->second += r * c;
                    if (it->second.is_zero()) out.erase(it);
                }
            }
    }
    return out;
}

namespace {

void sparse_add(SparseVec& acc, const SparseVec& v, const Scalar& scale) {
    for (const auto& [idx, c] : v) {
        auto it = acc.find(idx);
        if (it == acc.end()) acc.emplace(idx, c * scale);
        else {
            it->second += c * scale;
            if (it->second.is_zero()) acc.erase(it);
        }
    }
}

// sum_{pi in S_k} sgn(pi) R_{n pi} v, acting on the first k slots
SparseVec signed_sum(const StructureData& sd, int n_slots, int k, SparseVec v) {
    while (k > 1) {
        SparseVec dk = v; // j = 0 term
        for (int j = 1; j <= k - 1; ++j) {
            SparseVec term = v;
            for (int t = k - j; t <= k - 1; ++t) term = apply_rnk(sd, n_slots, t, term);
            sparse_add(dk, term, Scalar((j % 2 == 0) ? 1 : -1));
        }
        v = std::move(dk);
        --k;
    }
    return v;
}

} // namespace

Antisymmetrizer build_antisymmetrizer(const StructureData& sd, int n) {
    Antisymmetrizer an;
    an.n = n;
    an.dim = 1;
    for (int k = 0; k < n; ++k) {
        an.dim *= static_cast<std::size_t>(sd.n);
        if (an.dim > 1000000u) throw SizeError("antisymmetrizer dimension exceeds guard 10^6");
    }
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
    Scalar inv_fact(mpq_class(1, fact));

    an.cols.resize(an.dim);
    for (std::size_t col = 0; col < an.dim; ++col) {
        SparseVec e;
        e.emplace(col, Scalar(1));
        SparseVec sum = signed_sum(sd, n, n, std::move(e));
        SparseVec scaled;
        for (const auto& [idx, c] : sum) scaled.emplace(idx, c * inv_fact);
        an.cols[col] = std::move(scaled);
    }

    // RREF of the rows of A_n. Pivot rows stay fully reduced against each
    // other (tails never touch a pivot column); leftmost-column pivots.
    std::map<std::size_t, SparseVec> pivrows; // pivot col -> monic row
    for (std::size_t r = 0; r < an.dim; ++r) {
        SparseVec row;
        for (std::size_t c = 0; c < an.dim; ++c) {
            auto it = an.cols[c].find(r);
            if (it != an.cols[c].end()) row.emplace(c, it->second);
        }
        // Eliminate every entry sitting on an existing pivot column. Each
        // substitution only introduces entries further right, so scanning
        // from the left terminates.
        while (true) {
            auto hit = pivrows.end();
            std::size_t col = 0;
            for (const auto& [c, s] : row) {
                hit = pivrows.find(c);
                if (hit != pivrows.end()) {
                    col = c;
                    break;
                }
            }
            if (hit == pivrows.end()) break;
            Scalar f = row.at(col);
            row.erase(col);
            SparseVec tail = hit->second;
            tail.erase(col);
            sparse_add(row, tail, -f);
        }
        if (row.empty()) continue;
        Scalar inv = row.begin()->second.inverse();
        SparseVec monic;
        for (const auto& [c, s] : row) monic.emplace(c, s * inv);
        std::size_t pcol = monic.begin()->first;
        // back-substitute the new pivot into the rows found so far
        for (auto& [pc, prow] : pivrows) {
            auto it = prow.find(pcol);
            if (it == prow.end()) continue;
            Scalar f = it->second;
            prow.erase(it);
            SparseVec tail = monic;
            tail.erase(pcol);
            sparse_add(prow, tail, -f);
        }
        pivrows.emplace(pcol, std::move(monic));
    }

    an.rank = pivrows.size();
    for (auto& [pcol, row] : pivrows) {
        an.pivot_cols.push_back(pcol);
        an.alpha.push_back(row);
        an.alpha_prime.push_back(an.cols[pcol]); // A e_{pcol} lies in im A_n
    }
    return an;
}

bool Form::is_zero() const {
    for (const auto& p : coeff)
        if (!p.is_zero()) return false;
    return true;
}

Form& Form::operator+=(const Form& o) {
    for (std::size_t k = 0; k < coeff.size(); ++k) coeff[k] += o.coeff[k];
    return *this;
}

Form Form::scaled(const Scalar& c) const {
    Form f;
    f.degree = degree;
    f.coeff.reserve(coeff.size());
    for (const auto& p : coeff) f.coeff.push_back(p.scaled(c));
    return f;
}

const Antisymmetrizer& Exterior::antisym(int degree) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(degree);
    if (it == cache_.end())
        it = cache_.emplace(degree, build_antisymmetrizer(calc_.engine().structure(), degree)).first;
    return it->second;
}

Form Exterior::zero_form(int degree) const {
    Form f;
    f.degree = degree;
    f.coeff.resize(antisym(degree).rank);
    return f;
}

Form Exterior::from_poly(const NCPoly& a) const {
    Form f;
    f.degree = 0;
    f.coeff.push_back(calc_.engine().normal_form(a));
    return f;
}

Form Exterior::from_raw(int degree, const std::vector<NCPoly>& raw) const {
    const Antisymmetrizer& an = antisym(degree);
    Form f;
    f.degree = degree;
    f.coeff.resize(an.rank);
    for (std::size_t g = 0; g < an.rank; ++g)
        for (const auto& [idx, c] : an.alpha_prime[g])
            if (!raw[idx].is_zero()) f.coeff[g] += raw[idx].scaled(c);
    return f;
}

std::vector<NCPoly> Exterior::to_raw(const Form& f) const {
    const Antisymmetrizer& an = antisym(f.degree);
    std::vector<NCPoly> raw(an.dim);
    for (std::size_t g = 0; g < an.rank; ++g)
        for (const auto& [idx, c] : an.alpha[g])
            if (!f.coeff[g].is_zero()) raw[idx] += f.coeff[g].scaled(c);
    return raw;
}

Form Exterior::basis_form(const Word& w) const {
    std::vector<NCPoly> raw(antisym(static_cast<int>(w.size())).dim);
    raw[word_index(w, n_)] = NCPoly::constant(Scalar(1));
    return from_raw(static_cast<int>(w.size()), raw);
}

Form Exterior::from_oneform(const OneForm& omega) const {
    std::vector<NCPoly> raw(omega.comp.begin(), omega.comp.end());
    return from_raw(1, raw);
}

OneForm Exterior::to_oneform(const Form& f) const {
    std::vector<NCPoly> raw = to_raw(f);
    OneForm omega(n_);
    for (int i = 0; i < n_; ++i) omega.comp[i] = raw[i];
    return omega;
}

Form Exterior::wedge(const Form& a, const Form& b) const {
    const int k = a.degree, l = b.degree;
    const Antisymmetrizer& out_an = antisym(k + l);
    std::vector<NCPoly> ra = to_raw(a), rb = to_raw(b);
    std::vector<NCPoly> out(out_an.dim);
    const auto& eng = calc_.engine();
    std::size_t nl = antisym(l).dim;
    for (std::size_t ja = 0; ja < ra.size(); ++ja) {
        if (ra[ja].is_zero()) continue;
        for (std::size_t kb = 0; kb < rb.size(); ++kb) {
            if (rb[kb].is_zero()) continue;
            Word wk = index_word(kb, n_, l);
            auto moved = calc_.move_past(ra[ja], wk);
            for (const auto& [m, c] : moved) {
                if (c.is_zero()) continue;
                out[ja * nl + word_index(m, n_)] += eng.multiply(c, rb[kb]);
            }
        }
    }
    return from_raw(k + l, out);
}

Form Exterior::d(const Form& f) const {
    std::vector<NCPoly> raw = to_raw(f);
    const Antisymmetrizer& out_an = antisym(f.degree + 1);
    std::vector<NCPoly> out(out_an.dim);
    Scalar sign((f.degree % 2 == 0) ? 1 : -1);
    for (std::size_t j = 0; j < raw.size(); ++j) {
        if (raw[j].is_zero()) continue;
        for (int i = 0; i < n_; ++i) {
            NCPoly di = calc_.partial(i, raw[j]);
            if (!di.is_zero())
                out[j * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i)] +=
                    di.scaled(sign);
        }
    }
    return from_raw(f.degree + 1, out);
}

Form Exterior::star_form(const Form& f) const {
    const auto& eng = calc_.engine();
    eng.require_star();
    calc_.require_star_forms();
    std::vector<NCPoly> raw = to_raw(f);
    std::vector<NCPoly> out(raw.size());
    const int m = f.degree;
    Scalar sign(((m * (m - 1) / 2) % 2 == 0) ? 1 : -1);
    for (std::size_t idx = 0; idx < raw.size(); ++idx) {
        if (raw[idx].is_zero()) continue;
        Word w = index_word(idx, n_, m);
        Word rev(w.rbegin(), w.rend());
        NCPoly st = eng.star(raw[idx]);
        for (const auto& [mw, c] : calc_.move_past(st, rev)) {
            if (c.is_zero()) continue;
            out[word_index(mw, n_)] += c.scaled(sign);
        }
    }
    return from_raw(m, out);
}

} // namespace qmink
