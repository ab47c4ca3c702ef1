#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace incseq {

// Exact arithmetic everywhere: counts are arbitrary-precision integers,
// probabilities and moments are rationals kept in lowest terms with a
// positive denominator (cpp_rational canonicalizes on every operation).
using BigCount = boost::multiprecision::cpp_int;
using ExactRatio = boost::multiprecision::cpp_rational;

// A computation was refused because it exceeds a configured desk-scale
// budget. Callers may retry with a larger budget / --force.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// An internal cross-check failed; the process state cannot be trusted.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

inline double to_double(const BigCount& x) { return x.convert_to<double>(); }
inline double to_double(const ExactRatio& x) { return x.convert_to<double>(); }

// Natural log of a positive big integer. Values may far exceed the double
// range, so take the top bits and add back the discarded exponent.
inline double log_big(const BigCount& x) {
  if (x <= 0) throw std::domain_error("log_big: argument must be positive");
  const auto bits = boost::multiprecision::msb(x);  // floor(log2 x)
  if (bits <= 960) return std::log(to_double(x));
  const unsigned shift = static_cast<unsigned>(bits) - 63;
  const BigCount top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * 0.6931471805599453;
}

inline double log_ratio(const ExactRatio& x) {
  return log_big(boost::multiprecision::numerator(x)) -
         log_big(boost::multiprecision::denominator(x));
}

inline std::string to_string(const BigCount& x) { return x.str(); }

}  // namespace incseq
