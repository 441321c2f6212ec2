#include "bitcomp/rational.hpp"

#include <stdexcept>

namespace bitcomp {

std::string to_decimal_string(const Rational& r, int digits) {
    if (digits < 0) digits = 0;
    const bool neg = r < 0;
    Rational a = neg ? Rational(-r) : r;
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    // round(|r| * 10^digits), half away from zero
    BigInt num = boost::multiprecision::numerator(a) * scale * 2 +
                 boost::multiprecision::denominator(a);
    BigInt scaled = num / (boost::multiprecision::denominator(a) * 2);
    BigInt ipart = scaled / scale;
    BigInt fpart = scaled % scale;
    std::string out = neg && scaled != 0 ? "-" : "";
    out += ipart.str();
    if (digits > 0) {
        std::string frac = fpart.str();
        out += "." + std::string(digits - frac.size(), '0') + frac;
    }
    return out;
}

BigInt binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    BigInt c;
    mpz_bin_uiui(c.backend().data(), n, k);
    return c;
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + text);
    }
}

} // namespace bitcomp
