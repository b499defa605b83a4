#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace g2forge {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) { return r.str(); }

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

} // namespace g2forge
