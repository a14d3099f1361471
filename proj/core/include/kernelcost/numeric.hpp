#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace kernelcost {

/// Exact integer and rational types used throughout the counting engine.
/// Counts routinely exceed 2^63 once polynomial bounds are composed, so all
/// symbolic arithmetic is arbitrary precision; doubles appear only at the
/// model layer.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool rat_is_integer(const Rat& r) { return rat_den(r) == 1; }

/// Floor division with sign-correct semantics for negative operands.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

/// Floor of a rational value.
inline Int rat_floor(const Rat& r) { return floor_div(rat_num(r), rat_den(r)); }

inline Int rat_to_int(const Rat& r) {
  if (!rat_is_integer(r))
    throw std::logic_error("expected integral rational, got " + r.str());
  return rat_num(r);
}

inline std::int64_t to_int64(const Int& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("count does not fit in 64 bits: " + v.str());
  return static_cast<std::int64_t>(v);
}

inline std::string rat_str(const Rat& r) {
  if (rat_is_integer(r)) return rat_num(r).str();
  return rat_num(r).str() + "/" + rat_den(r).str();
}

}  // namespace kernelcost
