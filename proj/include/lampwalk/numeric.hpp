#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace lampwalk {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// 2^e for any integer e.
Rational pow2(int e);
BigInt ipow(const BigInt& base, unsigned e);

// Accepts "p/q", an integer, or a decimal such as "1e-6" / "0.25"; always exact.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

Rational abs(const Rational& q);

}  // namespace lampwalk
