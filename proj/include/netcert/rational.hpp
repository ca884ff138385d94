#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace netcert {

// Every scalar in the system (distances, weights, radii, budgets) is an
// exact rational. cpp_rational keeps lowest terms and a positive
// denominator by construction, so comparisons are decidable everywhere.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "num", "-num" or "num/den" (den > 0). Throws Error on anything else.
Rational parse_rational(std::string_view text);

/// Renders in lowest terms: "3/4", "2", "-1/2". Never a decimal point.
std::string to_string(const Rational& r);

/// Renders with an explicit slash even for integers: "2/1".
std::string to_fraction_string(const Rational& r);

/// floor(r) as an exact integer.
BigInt floor_div(const Rational& r);

/// base^exp, exact (exp >= 0).
Rational rational_pow(const Rational& base, std::size_t exp);

/// Parses a nonnegative decimal index. Throws Error on anything else.
std::size_t parse_index(std::string_view text);

}  // namespace netcert
