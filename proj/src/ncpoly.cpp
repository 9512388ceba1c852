#include "qmink/ncpoly.hpp"

#include <algorithm>
#include <cctype>

#include "qmink/errors.hpp"

namespace qmink {

NCPoly NCPoly::constant(const Scalar& c) {
    NCPoly p;
    p.add_term(Word(), c);
    return p;
}

NCPoly NCPoly::monomial(const Word& w, const Scalar& c) {
    NCPoly p;
    p.add_term(w, c);
    return p;
}

int NCPoly::degree() const {
    if (terms_.empty()) return 0;
    return static_cast<int>(terms_.rbegin()->first.size());
}

void NCPoly::add_term(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

NCPoly NCPoly::operator-() const {
    NCPoly p;
    for (const auto& [w, c] : terms_) p.terms_.emplace(w, -c);
    p.normalized_ = normalized_;
    return p;
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    normalized_ = normalized_ && o.normalized_;
    return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    normalized_ = normalized_ && o.normalized_;
    return *this;
}

NCPoly NCPoly::scaled(const Scalar& c) const {
    NCPoly p;
    if (c.is_zero()) return p;
    for (const auto& [w, s] : terms_) p.terms_.emplace(w, s * c);
    p.normalized_ = normalized_;
    return p;
}

NCPoly NCPoly::concat_mul(const NCPoly& o) const {
    NCPoly p;
    for (const auto& [w1, c1] : terms_)
        for (const auto& [w2, c2] : o.terms_) p.add_term(w1 + w2, c1 * c2);
    return p;
}

NCPoly NCPoly::star_raw() const {
    NCPoly p;
    for (const auto& [w, c] : terms_) {
        Word rev(w.rbegin(), w.rend());
        p.add_term(rev, c.conj());
    }
    return p;
}

std::string NCPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    // leading (graded-lex greatest) term first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) out += " + ";
        first = false;
        out += "(" + it->second.str() + ")";
        for (char letter : it->first) out += "*x" + std::to_string(static_cast<int>(letter));
    }
    return out;
}

namespace {

std::string strip_ws(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

// splits on '+' at paren depth zero
std::vector<std::string> split_terms(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == '+' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

} // namespace

NCPoly NCPoly::parse(const std::string& text, int num_generators) {
    std::string s = strip_ws(text);
    if (s.empty()) throw ParseError("empty polynomial");
    NCPoly p;
    for (const std::string& term : split_terms(s)) {
        if (term.empty()) throw ParseError("empty term in polynomial '" + text + "'");
        std::size_t pos = 0;
        Scalar coeff(1);
        bool have_coeff = false;
        if (term[0] == '(') {
            auto close = term.find(')');
            if (close == std::string::npos) throw ParseError("unbalanced '(' in '" + term + "'");
            coeff = Scalar::parse(term.substr(1, close - 1));
            have_coeff = true;
            pos = close + 1;
            if (pos < term.size()) {
                if (term[pos] != '*') throw ParseError("expected '*' after coefficient in '" + term + "'");
                ++pos;
            }
        } else if (term[0] != 'x') {
            auto star = term.find('*');
            std::string lit = term.substr(0, star);
            coeff = Scalar::parse(lit);
            have_coeff = true;
            pos = (star == std::string::npos) ? term.size() : star + 1;
        }
        Word w;
        while (pos < term.size()) {
            if (term[pos] != 'x') throw ParseError("expected generator in '" + term + "'");
            ++pos;
            std::size_t start = pos;
            while (pos < term.size() && std::isdigit(static_cast<unsigned char>(term[pos]))) ++pos;
            if (start == pos) throw ParseError("missing generator index in '" + term + "'");
            int idx = std::stoi(term.substr(start, pos - start));
            if (idx < 0 || idx >= num_generators)
                throw ParseError("generator x" + std::to_string(idx) + " out of range");
            w.push_back(static_cast<char>(idx));
            if (pos < term.size()) {
                if (term[pos] != '*') throw ParseError("expected '*' in '" + term + "'");
                ++pos;
                if (pos == term.size()) throw ParseError("dangling '*' in '" + term + "'");
            }
        }
        if (w.empty() && !have_coeff) throw ParseError("term '" + term + "' has no content");
        p.add_term(w, coeff);
    }
    return p;
}

} // namespace qmink
