#include "netcert/rational.hpp"

#include <cctype>

namespace netcert {

Rational parse_rational(std::string_view text) {
  // Accept exactly: -?digits(/digits)?  The denominator may not be 0 and may
  // not carry its own sign.
  auto fail = [&] { throw Error("malformed rational '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  std::size_t i = 0;
  if (text[0] == '-') i = 1;
  std::size_t digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    ++i;
    ++digits;
  }
  if (digits == 0) fail();
  if (i == text.size()) return Rational(std::string(text));
  if (text[i] != '/') fail();
  ++i;
  std::size_t den_digits = 0;
  std::size_t den_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    ++i;
    ++den_digits;
  }
  if (den_digits == 0 || i != text.size()) fail();
  BigInt den(std::string(text.substr(den_start)));
  if (den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  return Rational(std::string(text));
}

std::string to_string(const Rational& r) { return r.str(); }

std::string to_fraction_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

BigInt floor_div(const Rational& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  BigInt q = num / den;
  if (num < 0 && q * den != num) --q;
  return q;
}

std::size_t parse_index(std::string_view text) {
  if (text.empty() || text.size() > 9) throw Error("malformed index '" + std::string(text) + "'");
  std::size_t value = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw Error("malformed index '" + std::string(text) + "'");
    value = value * 10 + static_cast<std::size_t>(c - '0');
  }
  return value;
}

Rational rational_pow(const Rational& base, std::size_t exp) {
  BigInt num = boost::multiprecision::pow(numerator(base), static_cast<unsigned>(exp));
  BigInt den = boost::multiprecision::pow(denominator(base), static_cast<unsigned>(exp));
  return Rational(num, den);
}

}  // namespace netcert
