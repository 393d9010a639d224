#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace prat {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline std::string to_decimal(const BigInt& v) { return v.str(); }

/// Natural log of a non-negative big integer (v > 0).
double log_big(const BigInt& v);

}  // namespace prat
