#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <string>

#include "cantorqc/rational.hpp"

namespace cantorqc {

// Working type for every transcendental evaluation: 128 bits of mantissa,
// wide exponent range. This alias is the precision knob for the whole
// library.
using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<128, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

inline Real real_pi() { return boost::math::constants::pi<Real>(); }

inline Real to_real(const Rational& q) { return static_cast<Real>(q); }

/// Round-trippable decimal rendering with the given significant digits.
std::string real_str(const Real& x, int digits = 17);

}  // namespace cantorqc
