#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "netcert/rational.hpp"
#include "netcert/space.hpp"

namespace netcert {

/// Geometric weight family l_i = scale * ratio^i, 0 < ratio < 1. Total mass
/// L = scale * ratio / (1 - ratio) and every tail is a closed-form rational.
struct WeightSequence {
  Rational ratio;
  Rational scale;

  Rational weight(std::size_t i) const;  // l_i, 1-based
  Rational total() const;                // L
  Rational tail(std::size_t n) const;    // sum over i > n
};

/// The component family (X_i, d_i): component i is cycle[(i-1) mod |cycle|].
struct ComponentGenerator {
  std::vector<Space> cycle;
};

/// Builds the countable product presentation under
///   D(x, y) = sum_i l_i d_i(x_i, y_i) / M_i.
Space countable_product(std::string id, const ComponentGenerator& gen, const WeightSequence& w,
                        std::vector<std::size_t> anchor_order = {});

/// Exact D(x, y): explicit terms over the prefixes plus closed-form geometric
/// tails per cycle residue class for the anchor tails.
Rational product_metric_D(const Space& product, const Point& x, const Point& y);

/// Exact sum of weights beyond coordinate n (n >= 1); strictly decreasing.
Rational tail_bound(const Space& product, std::size_t n);

/// Partial sum over coordinates 1..n of the weighted component distances.
Rational truncated_sum(const Space& product, const Point& x, const Point& y, std::size_t n);

/// A product-topology basic open: restricts coordinates 1..depth by
///   sum_{i<=depth} l_i d_i(center_i, y_i) / M_i < budget,
/// coordinates beyond depth unrestricted. Membership is exactly decidable.
struct BasicOpen {
  Point center;
  std::size_t depth = 1;
  Rational budget;
};

bool basic_open_contains(const Space& product, const BasicOpen& open, const Point& y);

/// Metric ball -> basic open (one direction of the topology equivalence):
/// depth = minimal n with tail_bound(n) < eps/2, budget = eps/2. Every member
/// of the returned open lies in the D-ball of radius eps around x.
BasicOpen ball_to_open(const Space& product, const Point& x, const Rational& eps);

/// Basic open -> metric ball (the other direction): returns eps such that
/// D(center, y) < eps implies membership in the open. The truncated sum never
/// exceeds D, so the open's own budget works.
Rational open_to_ball(const Space& product, const BasicOpen& open);

/// The depth-n truncation: a finite product of the first n components under
/// the same weights.
Space truncate_product(const Space& product, std::size_t depth);

/// Thrown when the claimed Cauchy modulus fails on the given evidence.
class ModulusViolation : public Error {
 public:
  ModulusViolation(std::size_t j, std::size_t k, Rational distance, Rational allowed);
  std::size_t first_index;   // 1-based positions of the witness pair
  std::size_t second_index;
  Rational distance;
  Rational allowed;
};

/// Thrown when some coordinate (or the anchor tail) never reaches its
/// stabilization threshold within the evidence.
class InsufficientEvidence : public Error {
 public:
  explicit InsufficientEvidence(const std::string& what) : Error(what) {}
};

/// Componentwise limit of a finite Cauchy prefix: verifies
/// D(seq[j], seq[k]) < modulus[min(j,k)] exactly on every pair, then reads
/// each coordinate off the first term whose modulus drops strictly below the
/// stabilization threshold l_i * (min positive distance of component i) / M_i,
/// and the anchor tail off the threshold given by the smallest positive tail
/// distance. Throws ModulusViolation or InsufficientEvidence.
Point cauchy_limit(const Space& product, const std::vector<Point>& seq,
                   const std::vector<Rational>& modulus);

}  // namespace netcert
