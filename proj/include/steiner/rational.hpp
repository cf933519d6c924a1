#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace steiner {

// et_off: plain value semantics; the expression-template variant miscompiles
// mixed int/rational chains on the Boost shipped here.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct infeasible_error : std::runtime_error {
    explicit infeasible_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Accepts "12", "-3", "7/4", "0.25", "12.". No exponents.
Rational parse_rational(const std::string& text);

// Canonical form: "n" when the denominator is 1, else "n/d".
std::string format_rational(const Rational& x);

BigInt rational_floor(const Rational& x);
BigInt rational_ceil(const Rational& x);

// Upper bound on sqrt(x) within 2^-bits, exact when x is a perfect square
// of a rational. Requires x >= 0.
Rational sqrt_upper_bound(const Rational& x, unsigned bits);
Rational sqrt_lower_bound(const Rational& x, unsigned bits);

}  // namespace steiner
