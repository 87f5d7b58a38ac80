#include "chred/rational.hpp"

namespace chred {

namespace {

bool valid_int_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

}  // namespace

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!valid_int_token(s)) throw std::invalid_argument("rational: bad literal '" + s + "'");
        return Rational(mpz_class(s));
    }
    std::string p = s.substr(0, slash);
    std::string q = s.substr(slash + 1);
    if (!valid_int_token(p) || !valid_int_token(q))
        throw std::invalid_argument("rational: bad literal '" + s + "'");
    mpz_class den(q);
    if (den == 0) throw std::invalid_argument("rational: zero denominator in '" + s + "'");
    return Rational(mpz_class(p), den);
}

std::string Rational::str() const {
    if (is_integer()) return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

}  // namespace chred
