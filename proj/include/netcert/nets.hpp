#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "netcert/rational.hpp"
#include "netcert/space.hpp"

namespace netcert {

/// A finite eps-net claim: every point of the space is strictly within eps of
/// some listed point. Independently verifiable with verify_coverage.
struct NetCertificate {
  std::string space_id;
  Rational eps;
  std::vector<Point> points;
};

struct CoverageMiss {
  Point probe;
  std::optional<Rational> min_distance;  // empty for an empty net
};

struct CoverageReport {
  std::size_t probes_checked = 0;
  std::vector<CoverageMiss> uncovered;

  bool ok() const { return uncovered.empty(); }
};

/// Probe universe for coverage verification.
///  - explicit list of points
///  - exhaustive: all points (finite-discrete), or the exact continuum check
///    on intervals (sorted centers, endpoint and gap inequalities)
///  - support(K): products only; every combination of component points in
///    coordinates 1..K crossed with every designated tail anchor
class ProbeSpec {
 public:
  static ProbeSpec explicit_points(std::vector<Point> points);
  static ProbeSpec exhaustive();
  static ProbeSpec support(std::size_t bound);

  bool is_explicit() const { return mode_ == Mode::explicit_points; }
  bool is_exhaustive() const { return mode_ == Mode::exhaustive; }
  bool is_support() const { return mode_ == Mode::support; }
  const std::vector<Point>& list() const { return points_; }
  std::size_t support_bound() const { return bound_; }

 private:
  enum class Mode { explicit_points, exhaustive, support };
  ProbeSpec() = default;
  Mode mode_ = Mode::exhaustive;
  std::vector<Point> points_;
  std::size_t bound_ = 0;
};

/// Synthesizes an eps-net certificate (eps > 0):
///   finite-discrete: all points;
///   interval: a rational grid with spacing < eps (through the gauge
///             preimage radius when gauged);
///   finite-product: component nets at radius delta_i = eps*M_i/(n*w_i),
///             combined as a grid (first coordinate slowest);
///   countable-product: minimal depth n with tail_bound(n) < eps/2, the
///             (eps/2)-net of the depth-n truncation, every element padded
///             with the designated anchor tail.
NetCertificate net_of(const Space& space, const Rational& eps);

/// For each probe, the exact minimal distance to the net; covered means
/// strictly < eps. Failures are data in the report, never errors.
CoverageReport verify_coverage(const Space& space, const NetCertificate& cert,
                               const ProbeSpec& probes);

/// The support-K probe universe of a product space (also used by the CLI).
std::vector<Point> support_universe(const Space& product, std::size_t bound);

/// A certified finite-horizon cluster point: at least support_count of the
/// examined terms lie strictly within eps of point. chain holds the selected
/// centers y_1..y_N of the nested-ball refinement (radius 1/(2n) at level n).
struct ClusterPoint {
  Point point;
  Rational eps;
  std::size_t support_count = 0;
  std::vector<Point> chain;
};

/// Nested-ball extraction over seq[1..horizon]: at level n the net point at
/// radius 1/(2n) whose ball keeps the most surviving terms is selected
/// (pigeonhole keeps at least ceil(|survivors|/|net|); ties break to the
/// lowest net index), survivors are intersected, and the last center is
/// returned with eps = 1/levels.
ClusterPoint bw_extract(const Space& space, const std::function<Point(std::size_t)>& seq,
                        std::size_t horizon, std::size_t levels);

/// Line-oriented certificate text:
///   <space-id> <num/den> <count>
///   <coords> <anchor>        (one line per point; "-" for an empty prefix)
std::string write_certificate(const NetCertificate& cert);

/// Certificate with coordinates still unresolved (labels vs rationals need
/// the space).
struct RawCertificate {
  std::string space_id;
  Rational eps;
  struct RawPoint {
    std::vector<std::string> coords;
    std::size_t tail_anchor = 0;
  };
  std::vector<RawPoint> points;
};

RawCertificate read_certificate(const std::string& text);

/// Resolves raw coordinates against the space's components. Throws Error on
/// a space-id mismatch or an unpresentable point.
NetCertificate bind_certificate(const Space& space, const RawCertificate& raw);

}  // namespace netcert
