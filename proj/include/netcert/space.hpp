#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "netcert/gauge.hpp"
#include "netcert/rational.hpp"
#include "netcert/report.hpp"

namespace netcert {

/// A point of a simple presentation: a label (finite-discrete) or a rational
/// (interval).
using Coord = std::variant<std::string, Rational>;

/// A point of a product presentation: explicit coordinates 1..m, then the
/// selected anchor of every later component. Two points are equal exactly
/// when all coordinates agree after anchor padding; `prefix` is kept as
/// written (certificates stay auditable) and comparison normalizes.
struct ProductPoint {
  std::vector<Coord> prefix;
  std::size_t tail_anchor = 0;
};

using Point = std::variant<std::string, Rational, ProductPoint>;

Point point_from_coord(const Coord& c);
Coord coord_from_point(const Point& p);

/// Compact textual form: label, rational, or "c1,c2,...@anchor" ("@a" for an
/// empty prefix).
std::string render_point(const Point& p);
std::string render_coord(const Coord& c);

enum class SpaceKind { finite_discrete, interval, finite_product, countable_product };

/// A finitely-described metric space: a distance table, a rational interval,
/// or a (finite or countable) weighted product of such spaces. Immutable
/// after construction; every operation on it is pure.
class Space {
 public:
  /// Checked constructor: enforces zero diagonal, symmetry, positive
  /// off-diagonal entries, the triangle inequality for every triple, and
  /// max entry <= bound. Throws Error naming the first witness otherwise.
  static Space finite_discrete(std::string id, std::vector<std::string> labels,
                               std::vector<std::vector<Rational>> table,
                               std::vector<std::string> anchors,
                               std::optional<Rational> bound = std::nullopt);

  /// Structure-only variant (square table, known labels). Lets the axiom
  /// checker report violations on deliberately broken tables.
  static Space finite_discrete_unchecked(std::string id, std::vector<std::string> labels,
                                         std::vector<std::vector<Rational>> table,
                                         std::vector<std::string> anchors,
                                         std::optional<Rational> bound = std::nullopt);

  /// Rational points of [lo, hi] under |x - y|, or h(|x - y|) when a gauge is
  /// attached. Default bound: the exact diameter.
  static Space interval(std::string id, Rational lo, Rational hi, std::vector<Rational> anchors,
                        std::optional<Rational> bound = std::nullopt,
                        std::optional<Gauge> gauge = std::nullopt);

  /// Product of finitely many simple spaces under sum_i w_i d_i(x_i,y_i)/M_i.
  static Space finite_product(std::string id, std::vector<Space> components,
                              std::vector<Rational> weights,
                              std::vector<std::size_t> anchor_order = {});

  /// Countable product with component i = cycle[(i-1) mod |cycle|] and
  /// weights l_i = scale * ratio^i, 0 < ratio < 1. Declared bound is
  /// L = scale * ratio / (1 - ratio).
  static Space countable_product(std::string id, std::vector<Space> cycle, Rational ratio,
                                 Rational scale, std::vector<std::size_t> anchor_order = {});

  SpaceKind kind() const { return kind_; }
  const std::string& id() const { return id_; }
  /// Declared diameter bound M.
  const Rational& bound() const { return bound_; }

  bool is_simple() const {
    return kind_ == SpaceKind::finite_discrete || kind_ == SpaceKind::interval;
  }
  bool is_product() const { return !is_simple(); }
  /// True when the space has exactly one presentable point.
  bool is_single_point() const;

  // --- anchors -------------------------------------------------------------
  std::size_t anchor_count() const;
  Point anchor_point(std::size_t j) const;
  /// Product only: component-level anchor indices in designated order;
  /// element 0 is the padding anchor used by net synthesis.
  const std::vector<std::size_t>& anchor_order() const;
  std::size_t default_anchor() const;

  // --- simple-space access ---------------------------------------------------
  const std::vector<std::string>& labels() const;  // finite-discrete
  const std::vector<std::vector<Rational>>& table() const;
  const Rational& lo() const;  // interval
  const Rational& hi() const;
  const std::optional<Gauge>& interval_gauge() const;
  /// All points of a finite-discrete space, declaration order.
  std::vector<Point> points() const;
  /// Smallest positive distance between presentable points, when one exists
  /// (finite-discrete with >= 2 points). nullopt for single-point spaces;
  /// throws for nondegenerate intervals.
  std::optional<Rational> min_positive_distance() const;

  // --- product access --------------------------------------------------------
  /// finite-product: number of coordinates. Throws for other kinds.
  std::size_t arity() const;
  std::size_t cycle_length() const;
  /// Component space of coordinate i (1-based; cycles for countable products).
  const Space& component(std::size_t i) const;
  /// Weight l_i of coordinate i (1-based).
  Rational weight(std::size_t i) const;
  const Rational& weight_ratio() const;   // countable only
  const Rational& weight_scale() const;

  // --- points ----------------------------------------------------------------
  bool is_point(const Point& p) const;
  /// Throws Error with a reason when p is not presentable in this space.
  void require_point(const Point& p) const;
  /// Coordinate i of a product point, anchor padding resolved (1-based).
  Coord coordinate(const ProductPoint& p, std::size_t i) const;
  /// Exact semantic equality (coordinates agree after padding). Decidable
  /// without evaluating the metric.
  bool points_equal(const Point& a, const Point& b) const;
  /// Drops trailing prefix coordinates equal to the tail anchor.
  ProductPoint normalized(const ProductPoint& p) const;

 private:
  struct FiniteDiscreteData {
    std::vector<std::string> labels;
    std::vector<std::vector<Rational>> table;
    std::map<std::string, std::size_t> index;
    std::vector<std::size_t> anchors;  // indices into labels
  };
  struct IntervalData {
    Rational lo, hi;
    std::vector<Rational> anchors;
    std::optional<Gauge> gauge;
  };
  struct ProductData {
    std::vector<std::shared_ptr<const Space>> parts;  // components / cycle
    std::vector<Rational> weights;                    // finite product only
    Rational ratio, scale;                            // countable product only
    std::vector<std::size_t> anchor_order;
    std::size_t min_anchors = 0;  // anchor indices valid for every part
  };

  Space(SpaceKind k, std::string id, Rational bound) : kind_(k), id_(std::move(id)), bound_(std::move(bound)) {}

  const FiniteDiscreteData& fd() const;
  const IntervalData& iv() const;
  const ProductData& pd() const;
  std::size_t label_index(const std::string& label) const;
  Rational simple_distance(const Coord& a, const Coord& b) const;

  friend Rational metric_eval(const Space&, const Point&, const Point&);
  friend Space transform_metric(const Space&, const Gauge&);

  SpaceKind kind_;
  std::string id_;
  Rational bound_;
  std::variant<FiniteDiscreteData, IntervalData, ProductData> data_;
};

/// Exact d(p, q). Throws when either point is not presentable.
Rational metric_eval(const Space& space, const Point& p, const Point& q);

/// Exhaustive axiom check over all ordered point triples. Finite-discrete
/// spaces only.
AxiomReport check_metric_axioms(const Space& space);

/// Axiom check over all ordered triples of the probe set: identity of
/// indiscernibles (both directions, using exact point equality), symmetry,
/// and the triangle inequality. triples_checked = |probes|^3.
AxiomReport check_metric_axioms(const Space& space, const std::vector<Point>& probes);

/// Declared bound M; for finite-discrete also re-verifies the table against
/// it (throws when the declaration is violated).
Rational diameter_bound(const Space& space);

}  // namespace netcert
