#include "qmink/fock.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "qmink/errors.hpp"

namespace qmink {

namespace {

QMatrix flip_matrix(int n) {
    QMatrix b(static_cast<std::size_t>(n) * n, static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b.at(static_cast<std::size_t>(i) * n + j, static_cast<std::size_t>(j) * n + i) =
                Scalar(1);
    return b;
}

using PairMap = std::map<std::pair<Word, Word>, Scalar>;

void pair_add(PairMap& acc, const std::pair<Word, Word>& key, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = acc.find(key);
    if (it == acc.end()) acc.emplace(key, c);
    else {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

} // namespace

BraidOperator BraidOperator::flip(const NormalFormEngine& eng) {
    return BraidOperator(eng, flip_matrix(eng.num_generators()));
}

BraidOperator BraidOperator::from_matrix(const NormalFormEngine& eng, const QMatrix& b) {
    const std::size_t n2 =
        static_cast<std::size_t>(eng.num_generators()) * eng.num_generators();
    if (b.rows() != n2 || b.cols() != n2)
        throw ParseError("braid matrix must be N^2 x N^2");
    return BraidOperator(eng, b);
}

BraidOperator::BraidOperator(const NormalFormEngine& eng, QMatrix b)
    : eng_(eng), b_(std::move(b)) {
    run_checks();
}

void BraidOperator::require_valid() const {
    if (!valid()) {
        for (const auto& c : report_.checks)
            if (!c.pass)
                throw GateError("braid operator failed check '" + c.name + "': " + c.witness);
    }
}

std::map<std::pair<Word, Word>, Scalar> BraidOperator::cross(const Word& a,
                                                             const Word& b) const {
    const int n = eng_.num_generators();
    const std::size_t r = a.size(), s = b.size();
    // Work on the concatenated word; move the block a rightward past b via
    // elementary B-moves, last letter of a first.
    std::map<Word, Scalar> cur;
    cur.emplace(a + b, Scalar(1));
    for (std::size_t i = r; i >= 1; --i) {
        // letter at 1-based position i crosses s letters
        for (std::size_t pos = i; pos <= i + s - 1 && s > 0; ++pos) {
            std::map<Word, Scalar> next;
            for (const auto& [w, c] : cur) {
                int li = static_cast<int>(w[pos - 1]);
                int lj = static_cast<int>(w[pos]);
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        const Scalar& coeff = b_.at(static_cast<std::size_t>(li) * n + lj,
                                                    static_cast<std::size_t>(k) * n + l);
                        if (coeff.is_zero()) continue;
                        Word nw = w;
                        nw[pos - 1] = static_cast<char>(k);
                        nw[pos] = static_cast<char>(l);
                        auto it = next.find(nw);
                        if (it == next.end()) next.emplace(std::move(nw), coeff * c);
                        else {
                            it->second += coeff * c;
                            if (it->second.is_zero()) next.erase(it);
                        }
                    }
            }
            cur = std::move(next);
        }
        if (i == 1) break;
    }
    PairMap out;
    for (const auto& [w, c] : cur)
        pair_add(out, {w.substr(0, s), w.substr(s)}, c);
    return out;
}

namespace {

// bi-normal form of a pair map; zero means membership in I(x)C + C(x)I
PairMap binormalize(const NormalFormEngine& eng, const PairMap& in) {
    PairMap out;
    for (const auto& [key, c] : in) {
        NCPoly na = eng.normal_form(NCPoly::monomial(key.first));
        NCPoly nb = eng.normal_form(NCPoly::monomial(key.second));
        for (const auto& [wa, ca] : na.terms())
            for (const auto& [wb, cb] : nb.terms()) pair_add(out, {wa, wb}, c * ca * cb);
    }
    return out;
}

PairMap cross_poly_pair(const BraidOperator& k, const NCPoly& a, const NCPoly& b) {
    PairMap out;
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) {
            for (const auto& [key, c] : k.cross(wa, wb)) pair_add(out, key, c * ca * cb);
        }
    return out;
}

} // namespace

void BraidOperator::run_checks() {
    const int n = eng_.num_generators();
    // involution on degree (1,1)
    {
        ValidationCheck c{"braid_involution", true, ""};
        for (int i = 0; i < n && c.pass; ++i)
            for (int j = 0; j < n && c.pass; ++j) {
                PairMap once = cross(Word(1, static_cast<char>(i)), Word(1, static_cast<char>(j)));
                PairMap twice;
                for (const auto& [key, coeff] : once)
                    for (const auto& [k2, c2] : cross(key.first, key.second))
                        pair_add(twice, k2, c2 * coeff);
                PairMap want;
                want[{Word(1, static_cast<char>(i)), Word(1, static_cast<char>(j))}] = Scalar(1);
                if (!(twice == want)) {
                    c.pass = false;
                    c.witness = "K^2 != id on x" + std::to_string(i) + " (x) x" + std::to_string(j);
                }
            }
        report_.checks.push_back(c);
    }
    // braid relation on degree (1,1,1): compare both composites on triples
    {
        ValidationCheck c{"braid_relation", true, ""};
        auto apply_at = [&](const std::map<Word, Scalar>& st, int pos) {
            std::map<Word, Scalar> out;
            for (const auto& [w, coeff] : st) {
                int li = static_cast<int>(w[pos]);
                int lj = static_cast<int>(w[pos + 1]);
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        const Scalar& bc = b_.at(static_cast<std::size_t>(li) * n + lj,
                                                 static_cast<std::size_t>(k) * n + l);
                        if (bc.is_zero()) continue;
                        Word nw = w;
                        nw[pos] = static_cast<char>(k);
                        nw[pos + 1] = static_cast<char>(l);
                        auto it = out.find(nw);
                        if (it == out.end()) out.emplace(std::move(nw), bc * coeff);
                        else {
                            it->second += bc * coeff;
                            if (it->second.is_zero()) out.erase(it);
                        }
                    }
            }
            return out;
        };
        for (const Word& w : all_words(n, 3)) {
            std::map<Word, Scalar> st{{w, Scalar(1)}};
            auto lhs = apply_at(apply_at(apply_at(st, 0), 1), 0);
            auto rhs = apply_at(apply_at(apply_at(st, 1), 0), 1);
            if (!(lhs == rhs)) {
                c.pass = false;
                c.witness = "K1 K2 K1 != K2 K1 K2 on a degree (1,1,1) tensor";
                break;
            }
        }
        report_.checks.push_back(c);
    }
    // ideal compatibility: K maps relation (x) C + C (x) relation into itself
    {
        ValidationCheck c{"braid_ideal_compatibility", true, ""};
        const auto& rels = eng_.relation_generators();
        for (std::size_t b = 0; b < rels.size() && c.pass; ++b)
            for (int i = 0; i < n; ++i) {
                NCPoly gen = NCPoly::generator(i);
                PairMap left = binormalize(eng_, cross_poly_pair(*this, rels[b], gen));
                PairMap right = binormalize(eng_, cross_poly_pair(*this, gen, rels[b]));
                if (!left.empty() || !right.empty()) {
                    c.pass = false;
                    c.witness = "K moved relation generator " + std::to_string(b) +
                                " out of the relation subspace";
                    break;
                }
            }
        report_.checks.push_back(c);
    }
}

TensorState Fock::state_from_words(const std::vector<Word>& slots, const Scalar& c) const {
    TensorState st;
    // normalize each slot and expand
    std::vector<NCPoly> polys;
    for (const Word& w : slots) polys.push_back(eng_.normal_form(NCPoly::monomial(w)));
    std::vector<std::vector<std::pair<Word, Scalar>>> expanded;
    for (const NCPoly& p : polys) {
        std::vector<std::pair<Word, Scalar>> terms(p.terms().begin(), p.terms().end());
        if (terms.empty()) return st; // a slot normalized to zero
        expanded.push_back(std::move(terms));
    }
    std::vector<std::size_t> idx(slots.size(), 0);
    while (true) {
        Scalar coeff = c;
        std::vector<Word> key(slots.size());
        for (std::size_t s = 0; s < slots.size(); ++s) {
            key[s] = expanded[s][idx[s]].first;
            coeff *= expanded[s][idx[s]].second;
        }
        auto it = st.find(key);
        if (it == st.end()) st.emplace(std::move(key), coeff);
        else {
            it->second += coeff;
            if (it->second.is_zero()) st.erase(it);
        }
        std::size_t s = 0;
        while (s < slots.size() && ++idx[s] == expanded[s].size()) {
            idx[s] = 0;
            ++s;
        }
        if (s == slots.size()) break;
    }
    return st;
}

TensorState Fock::add(TensorState a, const TensorState& b) const {
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

TensorState Fock::scaled(const TensorState& a, const Scalar& c) const {
    TensorState out;
    if (c.is_zero()) return out;
    for (const auto& [key, s] : a) out.emplace(key, s * c);
    return out;
}

TensorState Fock::apply_interchange(const TensorState& st, int slot) const {
    braid_.require_valid();
    TensorState out;
    for (const auto& [key, c] : st) {
        for (const auto& [pair, cc] : braid_.cross(key[slot], key[slot + 1])) {
            // re-normalize the two touched slots, then expand
            NCPoly na = eng_.normal_form(NCPoly::monomial(pair.first));
            NCPoly nb = eng_.normal_form(NCPoly::monomial(pair.second));
            for (const auto& [wa, ca] : na.terms())
                for (const auto& [wb, cb] : nb.terms()) {
                    std::vector<Word> nk = key;
                    nk[slot] = wa;
                    nk[slot + 1] = wb;
                    Scalar v = c * cc * ca * cb;
                    auto it = out.find(nk);
                    if (it == out.end()) out.emplace(std::move(nk), v);
                    else {
                        it->second += v;
                        if (it->second.is_zero()) out.erase(it);
                    }
                }
        }
    }
    return out;
}

std::vector<int> reduced_word(std::vector<int> sigma) {
    std::vector<int> word;
    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (std::size_t j = 0; j + 1 < sigma.size(); ++j)
            if (sigma[j] > sigma[j + 1]) {
                std::swap(sigma[j], sigma[j + 1]);
                word.push_back(static_cast<int>(j));
                swapped = true;
            }
    }
    return word;
}

TensorState Fock::pi_sigma(const std::vector<int>& sigma, const TensorState& st) const {
    braid_.require_valid();
    TensorState out = st;
    for (int m : reduced_word(sigma)) out = apply_interchange(out, m);
    return out;
}

TensorState Fock::symmetrize(const TensorState& st, int slots) const {
    if (slots > 6) throw SizeError("symmetrizer guard: more than 6 slots");
    std::vector<int> sigma(slots);
    std::iota(sigma.begin(), sigma.end(), 0);
    TensorState acc;
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(slots));
    do {
        acc = add(std::move(acc), pi_sigma(sigma, st));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return scaled(acc, Scalar(mpq_class(1, fact)));
}

TensorState Fock::apply_first_slot(const ParticleOp& w, const TensorState& st) const {
    TensorState out;
    for (const auto& [key, c] : st) {
        NCPoly img = w(NCPoly::monomial(key.front()));
        img = eng_.normal_form(img);
        for (const auto& [wd, cw] : img.terms()) {
            std::vector<Word> nk = key;
            nk[0] = wd;
            Scalar v = c * cw;
            auto it = out.find(nk);
            if (it == out.end()) out.emplace(std::move(nk), v);
            else {
                it->second += v;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return out;
}

TensorState Fock::lift_operator(const ParticleOp& w, int slots, const TensorState& st) const {
    braid_.require_valid();
    if (slots > 6) throw SizeError("lift guard: more than 6 slots");
    if (!(symmetrize(st, slots) == st))
        throw DomainError("lift_operator requires a symmetric state");

    // transposition-sum formula
    TensorState first;
    for (int m = 1; m <= slots; ++m) {
        std::vector<int> tr(slots);
        std::iota(tr.begin(), tr.end(), 0);
        if (m > 1) std::swap(tr[0], tr[m - 1]);
        TensorState moved = pi_sigma(tr, st);
        moved = apply_first_slot(w, moved);
        first = add(std::move(first), pi_sigma(tr, moved));
    }

    // averaged conjugation formula
    TensorState second;
    std::vector<int> sigma(slots);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        std::vector<int> inv(slots);
        for (int i = 0; i < slots; ++i) inv[sigma[i]] = i;
        TensorState moved = pi_sigma(inv, st);
        moved = apply_first_slot(w, moved);
        second = add(std::move(second), pi_sigma(sigma, moved));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(slots - 1));
    second = scaled(second, Scalar(mpq_class(1, fact)));

    if (!(first == second))
        throw DomainError("the two n-particle lift formulas disagree on this state");
    return first;
}

namespace {

Word random_word(std::mt19937& rng, int n, int deg) {
    Word w;
    std::uniform_int_distribution<int> letter(0, n - 1);
    for (int k = 0; k < deg; ++k) w.push_back(static_cast<char>(letter(rng)));
    return w;
}

TensorState random_state(std::mt19937& rng, const Fock& fock, int n, int slots, int deg) {
    std::uniform_int_distribution<int> small(-3, 3);
    TensorState st;
    for (int t = 0; t < 3; ++t) {
        std::vector<Word> key;
        for (int s = 0; s < slots; ++s) key.push_back(random_word(rng, n, deg));
        int c = small(rng);
        if (c == 0) c = 1;
        st = fock.add(std::move(st), fock.state_from_words(key, Scalar(c)));
    }
    return st;
}

} // namespace

ValidationReport fock_suite(const NormalFormEngine& eng, const BraidOperator& braid, int slots,
                            std::uint64_t seed,
                            const std::vector<std::pair<std::string, ParticleOp>>& ops) {
    ValidationReport rep = braid.validation();
    if (!rep.all_pass()) return rep;

    Fock fock(eng, braid);
    std::mt19937 rng(static_cast<std::uint32_t>(seed));
    const int n = eng.num_generators();

    // representation property on random states
    {
        ValidationCheck c{"representation_property", true, ""};
        for (int trial = 0; trial < 4 && c.pass; ++trial) {
            TensorState st = random_state(rng, fock, n, slots, 1);
            std::vector<int> s1(slots), s2(slots);
            std::iota(s1.begin(), s1.end(), 0);
            std::iota(s2.begin(), s2.end(), 0);
            std::shuffle(s1.begin(), s1.end(), rng);
            std::shuffle(s2.begin(), s2.end(), rng);
            std::vector<int> prod(slots);
            for (int i = 0; i < slots; ++i) prod[i] = s1[s2[i]];
            TensorState lhs = fock.pi_sigma(s1, fock.pi_sigma(s2, st));
            TensorState rhs = fock.pi_sigma(prod, st);
            if (!(lhs == rhs)) {
                c.pass = false;
                c.witness = "pi_s1 pi_s2 != pi_(s1 s2) on a random state";
            }
        }
        rep.checks.push_back(c);
    }
    // distinct transposition words of the same permutation agree
    if (slots >= 3) {
        ValidationCheck c{"reduced_word_independence", true, ""};
        TensorState st = random_state(rng, fock, n, 3, 1);
        // the reversal of three slots has the two reduced words t0 t1 t0 and
        // t1 t0 t1; an unreduced word of the identity must act trivially
        TensorState a = st, b = st;
        for (int m : {0, 1, 0}) a = fock.apply_interchange(a, m);
        for (int m : {1, 0, 1}) b = fock.apply_interchange(b, m);
        TensorState idw = st;
        for (int m : {1, 1}) idw = fock.apply_interchange(idw, m);
        if (!(a == b) || !(idw == st)) {
            c.pass = false;
            c.witness = "transposition words of the same permutation disagree";
        }
        rep.checks.push_back(c);
    }
    // symmetrizer is a projection and its image is invariant
    {
        ValidationCheck c{"symmetrizer_projection", true, ""};
        TensorState st = random_state(rng, fock, n, slots, 2);
        TensorState sym = fock.symmetrize(st, slots);
        if (!(fock.symmetrize(sym, slots) == sym)) {
            c.pass = false;
            c.witness = "symmetrize is not idempotent";
        } else {
            std::vector<int> tr(slots);
            std::iota(tr.begin(), tr.end(), 0);
            if (slots >= 2) {
                std::swap(tr[0], tr[1]);
                if (!(fock.pi_sigma(tr, sym) == sym)) {
                    c.pass = false;
                    c.witness = "symmetrized state is not invariant under a transposition";
                }
            }
        }
        rep.checks.push_back(c);
    }
    // both n-particle lift formulas agree (checked inside lift_operator),
    // and the lift preserves the boson subspace
    for (const auto& [name, op] : ops) {
        ValidationCheck c{"lift_agreement(" + name + ")", true, ""};
        try {
            TensorState st = fock.symmetrize(random_state(rng, fock, n, slots, 2), slots);
            TensorState lifted = fock.lift_operator(op, slots, st);
            if (!(fock.symmetrize(lifted, slots) == lifted)) {
                c.pass = false;
                c.witness = "lifted operator left the boson subspace";
            }
        } catch (const std::exception& e) {
            c.pass = false;
            c.witness = e.what();
        }
        rep.checks.push_back(c);
    }
    return rep;
}

} // namespace qmink
