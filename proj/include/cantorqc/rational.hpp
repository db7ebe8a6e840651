#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "cantorqc/errors.hpp"

namespace cantorqc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat_pow(const Rational& base, unsigned exp) {
  namespace mp = boost::multiprecision;
  return Rational(mp::pow(mp::numerator(base), exp),
                  mp::pow(mp::denominator(base), exp));
}

inline bool in_open_unit(const Rational& q) {
  return q > 0 && q < 1;
}

/// Exact k-th root of a non-negative integer, or nullopt if n is not a
/// perfect k-th power.
std::optional<BigInt> integer_kth_root(const BigInt& n, unsigned k);

/// Parses "p/q", an integer, or a finite decimal ("0.25", "1.5") exactly.
Rational parse_rational(const std::string& text);

/// "p/q" for non-integers, plain "p" otherwise.
std::string rat_str(const Rational& q);

}  // namespace cantorqc
