#pragma once

#include <cstdint>
#include <vector>

#include "netcert/rational.hpp"

namespace netcert {

/// An eventually-constant binary sequence, normalized so the prefix never
/// ends with the tail bit. Normalized forms are unique, so structural
/// equality is sequence equality.
class BinarySeq {
 public:
  BinarySeq() = default;  // all zeros
  BinarySeq(std::vector<int> prefix, int tail);

  const std::vector<int>& prefix() const { return prefix_; }
  int tail() const { return tail_; }
  /// Coordinate i, 1-based.
  int bit(std::size_t i) const;

  bool operator==(const BinarySeq& other) const = default;

 private:
  std::vector<int> prefix_;
  int tail_ = 0;
};

/// A rational in [0, 1] whose lowest-terms denominator is a power of two --
/// exactly the values the evaluation map takes on eventually-constant
/// sequences.
class Dyadic {
 public:
  explicit Dyadic(Rational value);
  const Rational& value() const { return value_; }

  bool operator==(const Dyadic& other) const = default;

 private:
  Rational value_;
};

/// f(x) = sum_i 2^-i x_i, evaluated exactly (prefix sum plus geometric tail).
Dyadic f_eval(const BinarySeq& x);

/// All eventually-constant expansions of q: the terminating form and, for
/// 0 < q < 1, the form ending in repeating ones. Exactly two inside (0, 1),
/// exactly one at the endpoints.
std::vector<BinarySeq> f_preimages(const Dyadic& q);

/// x ~ y iff f(x) = f(y), exactly.
bool equiv_wrt_f(const BinarySeq& x, const BinarySeq& y);

/// The weighted product distance sum_i 2^-i |x_i - y_i|, exact.
Rational binary_product_distance(const BinarySeq& x, const BinarySeq& y);

/// |f(x) - f(y)|, D(x, y), and the contraction flag |f(x)-f(y)| <= D(x, y)
/// (always true; returned so callers can audit the inequality).
struct LipschitzWitness {
  Rational image_distance;
  Rational domain_distance;
  bool bounded = false;
};

LipschitzWitness lipschitz_witness(const BinarySeq& x, const BinarySeq& y);

/// Canonical class representative: the terminating (0-tail) expansion,
/// except q = 1 which has only the all-ones form.
BinarySeq canonical_representative(const Dyadic& q);

}  // namespace netcert
