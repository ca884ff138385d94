#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netcert/rational.hpp"
#include "netcert/report.hpp"

namespace netcert {

class Space;

/// A bounded-metric transform h: [0,inf) -> [0,a]. The catalog is closed so
/// that subadditivity and monotonicity are library guarantees, not user
/// obligations; the checkers below re-verify them on any grid.
///
/// Catalog:
///   cap(a):         h(t) = min(t, a),   a > 0, strictly increasing on [0, a]
///   rational-bend:  h(t) = t / (1 + t), a = 1, strictly increasing everywhere
///                   (eta is declared by the caller; any positive value is valid)
class Gauge {
 public:
  enum class Kind { cap, rational_bend };

  static Gauge cap(Rational a);
  static Gauge rational_bend(Rational eta = Rational(1));

  Kind kind() const { return kind_; }
  /// Upper bound a with h(t) <= a for all t >= 0.
  const Rational& bound() const { return bound_; }
  /// Injectivity radius: h is strictly increasing and invertible on [0, eta].
  const Rational& eta() const { return eta_; }

  /// h(t). Throws on t < 0.
  Rational apply(const Rational& t) const;

  /// Largest open-ball preimage: a radius rho with  d < rho  <=>  h(d) < eps
  /// for all d >= 0. Returns nullopt when h(d) < eps holds for every d (the
  /// whole space lies inside the transformed ball).
  std::optional<Rational> ball_preimage(const Rational& eps) const;

  std::string describe() const;

 private:
  Gauge(Kind k, Rational bound, Rational eta)
      : kind_(k), bound_(std::move(bound)), eta_(std::move(eta)) {}

  Kind kind_;
  Rational bound_;
  Rational eta_;
};

/// h(t), exact.
Rational gauge_apply(const Gauge& g, const Rational& t);

/// Checks h(b+c) <= h(b) + h(c) over all ordered grid pairs, and that h is
/// nondecreasing over the sorted grid. Violations are data, not errors.
AxiomReport check_subadditivity(const Gauge& g, const std::vector<Rational>& grid);

/// Exact forward difference quotients (h(t+step) - h(t)) / step at each grid
/// point; reports any strict increase between consecutive quotients. The grid
/// must be sorted ascending and step > 0.
AxiomReport check_derivative_nonincreasing(const Gauge& g, const std::vector<Rational>& grid,
                                           const Rational& step);

/// The d-radius eps corresponds to the d'-radius h(eps): the two balls have
/// identical membership. Requires 0 < eps < eta; larger radii are refused
/// because h need not be injective there.
Rational ball_radius_map(const Gauge& g, const Rational& eps);

/// New presentation whose distances are h of the old ones. Finite-discrete
/// tables are rewritten in place; intervals carry the gauge alongside the
/// endpoints. Product presentations are refused (transform the components
/// first). The declared diameter bound becomes min(h(M), a).
Space transform_metric(const Space& space, const Gauge& g);

}  // namespace netcert
