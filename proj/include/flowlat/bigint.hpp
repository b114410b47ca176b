#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace flowlat {

// All counts and eliminations run on arbitrary-precision integers; several
// appendix-scale values and Bareiss intermediates do not fit in 64 bits.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline std::string to_decimal(const BigInt& v) { return v.str(); }

}  // namespace flowlat
