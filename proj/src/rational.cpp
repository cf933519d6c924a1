#include "steiner/rational.hpp"

#include <cctype>

namespace steiner {

namespace {

bool valid_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s = s.substr(1);
    }
    if (s.empty()) throw input_error("empty number: '" + text + "'");

    Rational value;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!valid_digits(num) || !valid_digits(den))
            throw input_error("malformed rational: '" + text + "'");
        BigInt d(den);
        if (d == 0) throw input_error("zero denominator: '" + text + "'");
        value = Rational(BigInt(num), d);
    } else if (dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (!valid_digits(whole) || (!frac.empty() && !valid_digits(frac)))
            throw input_error("malformed decimal: '" + text + "'");
        BigInt scale = 1;
        for (size_t i = 0; i < frac.size(); i++) scale *= 10;
        value = Rational(BigInt(whole) * scale + (frac.empty() ? BigInt(0) : BigInt(frac)), scale);
    } else {
        if (!valid_digits(s)) throw input_error("malformed integer: '" + text + "'");
        value = Rational(BigInt(s));
    }
    return negative ? -value : value;
}

std::string format_rational(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

BigInt rational_floor(const Rational& x) {
    BigInt q = numerator(x) / denominator(x);
    if (x < 0 && q * denominator(x) != numerator(x)) q -= 1;
    return q;
}

BigInt rational_ceil(const Rational& x) {
    BigInt q = numerator(x) / denominator(x);
    if (x > 0 && q * denominator(x) != numerator(x)) q += 1;
    return q;
}

namespace {

// Integer sqrt bracketing of num/den scaled by 4^bits.
std::pair<Rational, Rational> sqrt_bounds(const Rational& x, unsigned bits) {
    if (x < 0) throw input_error("sqrt of negative value");
    if (x == 0) return {Rational(0), Rational(0)};
    BigInt a = numerator(x), b = denominator(x);
    // sqrt(a/b) = sqrt(a*b)/b
    BigInt n = a * b;
    BigInt scaled = n << (2 * bits);
    BigInt m = boost::multiprecision::sqrt(scaled);
    BigInt den = b << bits;
    Rational lo(m, den);
    if (m * m == scaled) return {lo, lo};
    return {lo, Rational(m + 1, den)};
}

}  // namespace

Rational sqrt_upper_bound(const Rational& x, unsigned bits) {
    return sqrt_bounds(x, bits).second;
}

Rational sqrt_lower_bound(const Rational& x, unsigned bits) {
    return sqrt_bounds(x, bits).first;
}

}  // namespace steiner
