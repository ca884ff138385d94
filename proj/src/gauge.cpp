#include "netcert/gauge.hpp"

#include <algorithm>
#include <utility>

#include "netcert/space.hpp"

namespace netcert {

Gauge Gauge::cap(Rational a) {
  if (a <= 0) throw Error("cap gauge needs a positive bound");
  Rational eta = a;  // min(t, a) is strictly increasing exactly on [0, a]
  return Gauge(Kind::cap, std::move(a), std::move(eta));
}

Gauge Gauge::rational_bend(Rational eta) {
  if (eta <= 0) throw Error("rational-bend gauge needs a positive eta");
  return Gauge(Kind::rational_bend, Rational(1), std::move(eta));
}

Rational Gauge::apply(const Rational& t) const {
  if (t < 0) throw Error("gauge applied to negative value " + to_string(t));
  switch (kind_) {
    case Kind::cap:
      return std::min(t, bound_);
    case Kind::rational_bend:
      return Rational(t / (1 + t));
  }
  throw Error("unreachable gauge kind");
}

std::optional<Rational> Gauge::ball_preimage(const Rational& eps) const {
  if (eps <= 0) throw Error("ball preimage needs a positive radius");
  switch (kind_) {
    case Kind::cap:
      // min(d, a) < eps  <=>  d < eps   when eps <= a; always true past a.
      if (eps > bound_) return std::nullopt;
      return eps;
    case Kind::rational_bend:
      // d/(1+d) < eps  <=>  d < eps/(1-eps); always true once eps >= 1.
      if (eps >= 1) return std::nullopt;
      return Rational(eps / (1 - eps));
  }
  throw Error("unreachable gauge kind");
}

std::string Gauge::describe() const {
  switch (kind_) {
    case Kind::cap:
      return "cap(" + to_string(bound_) + ")";
    case Kind::rational_bend:
      return "rational-bend(eta=" + to_string(eta_) + ")";
  }
  return "?";
}

Rational gauge_apply(const Gauge& g, const Rational& t) { return g.apply(t); }

AxiomReport check_subadditivity(const Gauge& g, const std::vector<Rational>& grid) {
  AxiomReport report;
  for (const Rational& t : grid) {
    if (t < 0) throw Error("subadditivity grid contains negative value " + to_string(t));
  }
  for (const Rational& b : grid) {
    for (const Rational& c : grid) {
      Rational lhs = g.apply(Rational(b + c));
      Rational rhs = g.apply(b) + g.apply(c);
      ++report.triples_checked;
      if (lhs > rhs) {
        report.violations.push_back(
            {"subadditivity", {to_string(b), to_string(c), ""}, lhs, rhs});
      }
    }
  }
  std::vector<Rational> sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    Rational lo = g.apply(sorted[i]);
    Rational hi = g.apply(sorted[i + 1]);
    ++report.triples_checked;
    if (lo > hi) {
      report.violations.push_back(
          {"monotonicity", {to_string(sorted[i]), to_string(sorted[i + 1]), ""}, lo, hi});
    }
  }
  return report;
}

AxiomReport check_derivative_nonincreasing(const Gauge& g, const std::vector<Rational>& grid,
                                           const Rational& step) {
  if (step <= 0) throw Error("difference quotient step must be positive");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw Error("difference quotient grid must be sorted ascending");
  AxiomReport report;
  std::vector<Rational> quotients;
  quotients.reserve(grid.size());
  for (const Rational& t : grid) {
    if (t < 0) throw Error("difference quotient grid contains negative value " + to_string(t));
    quotients.push_back(Rational((g.apply(Rational(t + step)) - g.apply(t)) / step));
  }
  for (std::size_t i = 0; i + 1 < quotients.size(); ++i) {
    ++report.triples_checked;
    if (quotients[i + 1] > quotients[i]) {
      report.violations.push_back(
          {"derivative", {to_string(grid[i]), to_string(grid[i + 1]), ""}, quotients[i + 1],
           quotients[i]});
    }
  }
  return report;
}

Rational ball_radius_map(const Gauge& g, const Rational& eps) {
  if (eps <= 0) throw Error("ball radius must be positive");
  if (eps >= g.eta())
    throw Error("radius " + to_string(eps) + " is not below the injectivity radius " +
                to_string(g.eta()));
  return g.apply(eps);
}

Space transform_metric(const Space& space, const Gauge& g) {
  switch (space.kind()) {
    case SpaceKind::finite_discrete: {
      const auto& labels = space.labels();
      std::vector<std::vector<Rational>> table = space.table();
      for (auto& row : table)
        for (auto& entry : row) entry = g.apply(entry);
      std::vector<std::string> anchors;
      for (std::size_t j = 0; j < space.anchor_count(); ++j)
        anchors.push_back(std::get<std::string>(space.anchor_point(j)));
      Rational bound = std::min(g.apply(space.bound()), g.bound());
      return Space::finite_discrete(space.id(), labels, std::move(table), std::move(anchors),
                                    bound);
    }
    case SpaceKind::interval: {
      if (space.interval_gauge())
        throw Error("space '" + space.id() + "' already carries a gauge");
      std::vector<Rational> anchors;
      for (std::size_t j = 0; j < space.anchor_count(); ++j)
        anchors.push_back(std::get<Rational>(space.anchor_point(j)));
      Rational bound = std::min(g.apply(space.bound()), g.bound());
      return Space::interval(space.id(), space.lo(), space.hi(), std::move(anchors), bound, g);
    }
    default:
      throw Error("transform the components of a product, not the product itself");
  }
}

}  // namespace netcert
