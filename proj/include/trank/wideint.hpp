#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace trank {

// Exact arbitrary-precision integer / rational. All counting and threshold
// arithmetic is exact; floating point appears only in report columns.
using WideInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

}  // namespace trank
