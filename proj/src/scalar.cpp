#include "qmink/scalar.hpp"

#include <cctype>
#include <cstddef>

#include "qmink/errors.hpp"

namespace qmink {

Scalar Scalar::inverse() const {
    if (is_zero()) throw SingularMetricError("division by zero scalar");
    mpq_class n = norm2();
    return Scalar(re_ / n, -im_ / n);
}

namespace {

bool valid_integer(const std::string& s) {
    std::size_t k = 0;
    if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
    if (k == s.size()) return false;
    for (; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
    return true;
}

} // namespace

mpq_class parse_rational(const std::string& text) {
    std::string num = text, den = "1";
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    if (!valid_integer(num) || !valid_integer(den))
        throw ParseError("malformed rational literal '" + text + "'");
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw ParseError("malformed rational literal '" + text + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
    mpq_class canon = q;
    canon.canonicalize();
    if (canon.get_num() != q.get_num() || canon.get_den() != q.get_den())
        throw ParseError("rational literal '" + text + "' is not in lowest terms");
    return canon;
}

std::string rational_str(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Scalar Scalar::parse(const std::string& text) {
    if (text.empty()) throw ParseError("empty complex literal");
    if (text.back() == 'i') {
        // Split "<rat><sign><rat>i" at the sign that separates the two parts.
        std::string body = text.substr(0, text.size() - 1);
        // Find the separating '+'/'-': scan from position 1 so a leading sign
        // of the real part is skipped; the separator is never right after '/'.
        std::size_t sep = std::string::npos;
        for (std::size_t k = 1; k < body.size(); ++k) {
            if ((body[k] == '+' || body[k] == '-') && body[k - 1] != '/' && body[k - 1] != '+' &&
                body[k - 1] != '-') {
                sep = k; // rightmost such sign separates the imaginary part
            }
        }
        if (sep == std::string::npos)
            throw ParseError("malformed complex literal '" + text +
                             "' (pure imaginary must be written 0+<rat>i)");
        std::string re = body.substr(0, sep);
        std::string im = body.substr(sep); // keep the sign
        if (im.size() > 1 && im[0] == '+') im = im.substr(1);
        return Scalar(parse_rational(re), parse_rational(im));
    }
    return Scalar(parse_rational(text));
}

std::string Scalar::str() const {
    if (im_ == 0) return rational_str(re_);
    std::string s = rational_str(re_);
    if (im_ > 0) s += "+" + rational_str(im_) + "i";
    else s += "-" + rational_str(mpq_class(-im_)) + "i";
    return s;
}

} // namespace qmink
