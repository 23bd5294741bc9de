#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;

inline Rational frac(long long p, long long q) { return Rational(p) / q; }

} // namespace oracle
