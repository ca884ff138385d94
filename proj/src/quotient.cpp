#include "netcert/quotient.hpp"

#include <utility>

namespace netcert {

namespace {

Rational half_pow(std::size_t i) { return rational_pow(Rational(1, 2), i); }

Rational abs_diff(const Rational& a, const Rational& b) {
  return a >= b ? Rational(a - b) : Rational(b - a);
}

}  // namespace

BinarySeq::BinarySeq(std::vector<int> prefix, int tail) : prefix_(std::move(prefix)), tail_(tail) {
  if (tail_ != 0 && tail_ != 1) throw Error("tail bit must be 0 or 1");
  for (int b : prefix_)
    if (b != 0 && b != 1) throw Error("sequence bits must be 0 or 1");
  while (!prefix_.empty() && prefix_.back() == tail_) prefix_.pop_back();
}

int BinarySeq::bit(std::size_t i) const {
  if (i == 0) throw Error("sequence coordinates are 1-based");
  return i <= prefix_.size() ? prefix_[i - 1] : tail_;
}

Dyadic::Dyadic(Rational value) : value_(std::move(value)) {
  if (value_ < 0 || value_ > 1)
    throw Error("dyadic value " + to_string(value_) + " is outside [0, 1]");
  BigInt den = denominator(value_);
  if ((den & (den - 1)) != 0)
    throw Error("denominator of " + to_string(value_) + " is not a power of two");
}

Dyadic f_eval(const BinarySeq& x) {
  Rational sum(0);
  for (std::size_t i = 1; i <= x.prefix().size(); ++i)
    if (x.prefix()[i - 1]) sum += half_pow(i);
  if (x.tail()) sum += half_pow(x.prefix().size());  // geometric tail past the prefix
  return Dyadic(sum);
}

std::vector<BinarySeq> f_preimages(const Dyadic& q) {
  const Rational& v = q.value();
  if (v == 0) return {BinarySeq({}, 0)};
  if (v == 1) return {BinarySeq({}, 1)};

  BigInt num = numerator(v);
  BigInt den = denominator(v);
  std::size_t k = boost::multiprecision::msb(den);  // den = 2^k, k >= 1
  std::vector<int> bits(k);
  for (std::size_t j = 0; j < k; ++j)
    bits[j] = boost::multiprecision::bit_test(num, static_cast<unsigned>(k - 1 - j)) ? 1 : 0;

  std::vector<int> flipped = bits;
  flipped.back() = 0;  // ...b1000... = ...b0111...
  return {BinarySeq(bits, 0), BinarySeq(std::move(flipped), 1)};
}

bool equiv_wrt_f(const BinarySeq& x, const BinarySeq& y) {
  return f_eval(x).value() == f_eval(y).value();
}

Rational binary_product_distance(const BinarySeq& x, const BinarySeq& y) {
  const std::size_t m = std::max(x.prefix().size(), y.prefix().size());
  Rational sum(0);
  for (std::size_t i = 1; i <= m; ++i)
    if (x.bit(i) != y.bit(i)) sum += half_pow(i);
  if (x.tail() != y.tail()) sum += half_pow(m);  // all later coordinates differ
  return sum;
}

LipschitzWitness lipschitz_witness(const BinarySeq& x, const BinarySeq& y) {
  LipschitzWitness w;
  w.image_distance = abs_diff(f_eval(x).value(), f_eval(y).value());
  w.domain_distance = binary_product_distance(x, y);
  w.bounded = w.image_distance <= w.domain_distance;
  return w;
}

BinarySeq canonical_representative(const Dyadic& q) {
  return f_preimages(q).front();  // the terminating expansion; all-ones for q = 1
}

}  // namespace netcert
