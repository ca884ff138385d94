#include "netcert/nets.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "netcert/product.hpp"

namespace netcert {

namespace {

constexpr std::size_t kMaxPoints = 2000000;  // refuse absurd enumerations

std::size_t checked_count(const Rational& width, const Rational& rho) {
  BigInt k = floor_div(width / rho) + 1;
  if (k > kMaxPoints) throw Error("net would need more than " + std::to_string(kMaxPoints) +
                                  " grid points; radius too small");
  return static_cast<std::size_t>(k);
}

std::vector<Point> interval_grid(const Space& space, const Rational& eps) {
  const Rational& lo = space.lo();
  const Rational& hi = space.hi();
  Rational width = hi - lo;
  std::optional<Rational> rho = eps;
  if (space.interval_gauge()) rho = space.interval_gauge()->ball_preimage(eps);
  if (!rho) return {Point(lo)};  // every distance already beats eps
  if (width == 0) return {Point(lo)};
  std::size_t k = checked_count(width, *rho);
  Rational spacing = width / Rational(k);
  std::vector<Point> out;
  out.reserve(k + 1);
  for (std::size_t j = 0; j <= k; ++j) out.emplace_back(Rational(lo + spacing * Rational(j)));
  return out;
}

std::vector<Point> cartesian_net(const Space& product, const Rational& eps) {
  const std::size_t n = product.arity();
  std::vector<std::vector<Point>> nets(n);
  std::size_t total = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    const Space& c = product.component(i);
    Rational delta = c.is_single_point()
                         ? Rational(1)
                         : Rational(eps * c.bound() / (Rational(n) * product.weight(i)));
    nets[i - 1] = net_of(c, delta).points;
    total *= nets[i - 1].size();
    if (total > kMaxPoints)
      throw Error("net would need more than " + std::to_string(kMaxPoints) + " points");
  }
  std::vector<Point> out;
  out.reserve(total);
  std::vector<std::size_t> odo(n, 0);
  for (;;) {
    ProductPoint p;
    p.tail_anchor = product.default_anchor();
    for (std::size_t i = 0; i < n; ++i) p.prefix.push_back(coord_from_point(nets[i][odo[i]]));
    out.emplace_back(std::move(p));
    std::size_t i = n;
    while (i > 0 && ++odo[i - 1] == nets[i - 1].size()) odo[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

}  // namespace

ProbeSpec ProbeSpec::explicit_points(std::vector<Point> points) {
  ProbeSpec s;
  s.mode_ = Mode::explicit_points;
  s.points_ = std::move(points);
  return s;
}

ProbeSpec ProbeSpec::exhaustive() {
  ProbeSpec s;
  s.mode_ = Mode::exhaustive;
  return s;
}

ProbeSpec ProbeSpec::support(std::size_t bound) {
  ProbeSpec s;
  s.mode_ = Mode::support;
  s.bound_ = bound;
  return s;
}

NetCertificate net_of(const Space& space, const Rational& eps) {
  if (eps <= 0) throw Error("net radius must be positive");
  switch (space.kind()) {
    case SpaceKind::finite_discrete:
      return {space.id(), eps, space.points()};
    case SpaceKind::interval:
      return {space.id(), eps, interval_grid(space, eps)};
    case SpaceKind::finite_product:
      return {space.id(), eps, cartesian_net(space, eps)};
    case SpaceKind::countable_product: {
      Rational half = eps / 2;
      std::size_t depth = 1;
      while (tail_bound(space, depth) >= half) ++depth;
      Space truncation = truncate_product(space, depth);
      NetCertificate finite = net_of(truncation, half);
      // The truncation shares the anchor order, so its points already carry
      // the padding anchor; only the space id changes.
      return {space.id(), eps, std::move(finite.points)};
    }
  }
  throw Error("unreachable space kind");
}

std::vector<Point> support_universe(const Space& product, std::size_t bound) {
  if (product.is_simple())
    throw Error("space '" + product.id() + "': support universes are a product notion");
  std::size_t k = bound;
  if (product.kind() == SpaceKind::finite_product) k = std::min(k, product.cycle_length());
  std::vector<std::vector<Point>> columns(k);
  std::size_t combos = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const Space& c = product.component(i);
    if (c.kind() != SpaceKind::finite_discrete)
      throw Error("space '" + product.id() + "': coordinate " + std::to_string(i) +
                  " is not finite-discrete; no finite probe universe exists");
    columns[i - 1] = c.points();
    combos *= columns[i - 1].size();
    if (combos > kMaxPoints)
      throw Error("probe universe would exceed " + std::to_string(kMaxPoints) + " points");
  }
  std::vector<Point> out;
  out.reserve(combos * product.anchor_count());
  std::vector<std::size_t> odo(k, 0);
  for (;;) {
    std::vector<Coord> prefix;
    prefix.reserve(k);
    for (std::size_t i = 0; i < k; ++i) prefix.push_back(coord_from_point(columns[i][odo[i]]));
    for (std::size_t j = 0; j < product.anchor_count(); ++j) {
      const auto& anchor = std::get<ProductPoint>(product.anchor_point(j));
      out.emplace_back(ProductPoint{prefix, anchor.tail_anchor});
    }
    std::size_t i = k;
    while (i > 0 && ++odo[i - 1] == columns[i - 1].size()) odo[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

namespace {

void scan_probes(const Space& space, const NetCertificate& cert, const std::vector<Point>& probes,
                 CoverageReport& report) {
  for (const Point& probe : probes) {
    space.require_point(probe);
    ++report.probes_checked;
    std::optional<Rational> best;
    bool covered = false;
    for (const Point& center : cert.points) {
      Rational d = metric_eval(space, probe, center);
      if (d < cert.eps) {
        covered = true;
        break;
      }
      if (!best || d < *best) best = d;
    }
    if (!covered) report.uncovered.push_back({probe, best});
  }
}

void scan_interval(const Space& space, const NetCertificate& cert, CoverageReport& report) {
  std::optional<Rational> rho = cert.eps;
  if (space.interval_gauge()) rho = space.interval_gauge()->ball_preimage(cert.eps);
  std::vector<Rational> centers;
  for (const Point& p : cert.points) centers.push_back(std::get<Rational>(p));
  std::sort(centers.begin(), centers.end());

  auto min_distance = [&](const Rational& x) -> std::optional<Rational> {
    std::optional<Rational> best;
    for (const Rational& c : centers) {
      Rational d = metric_eval(space, Point(x), Point(c));
      if (!best || d < *best) best = d;
    }
    return best;
  };

  if (centers.empty()) {
    report.probes_checked = 1;
    report.uncovered.push_back({Point(space.lo()), std::nullopt});
    return;
  }
  if (!rho) {  // the gauge keeps every distance below eps
    report.probes_checked = 1;
    return;
  }
  report.probes_checked = centers.size() + 1;
  if (centers.front() - space.lo() >= *rho)
    report.uncovered.push_back({Point(space.lo()), min_distance(space.lo())});
  for (std::size_t j = 0; j + 1 < centers.size(); ++j) {
    Rational gap = centers[j + 1] - centers[j];
    if (gap >= 2 * *rho) {
      Rational mid = (centers[j] + centers[j + 1]) / 2;
      report.uncovered.push_back({Point(mid), min_distance(mid)});
    }
  }
  if (space.hi() - centers.back() >= *rho)
    report.uncovered.push_back({Point(space.hi()), min_distance(space.hi())});
}

}  // namespace

CoverageReport verify_coverage(const Space& space, const NetCertificate& cert,
                               const ProbeSpec& probes) {
  if (cert.space_id != space.id())
    throw Error("certificate is for '" + cert.space_id + "', not '" + space.id() + "'");
  if (cert.eps <= 0) throw Error("certificate radius must be positive");
  for (const Point& p : cert.points) space.require_point(p);

  CoverageReport report;
  if (probes.is_explicit()) {
    scan_probes(space, cert, probes.list(), report);
  } else if (probes.is_support()) {
    scan_probes(space, cert, support_universe(space, probes.support_bound()), report);
  } else {
    switch (space.kind()) {
      case SpaceKind::finite_discrete:
        scan_probes(space, cert, space.points(), report);
        break;
      case SpaceKind::interval:
        scan_interval(space, cert, report);
        break;
      default:
        throw Error("space '" + space.id() +
                    "': exhaustive product coverage needs a support bound");
    }
  }
  return report;
}

ClusterPoint bw_extract(const Space& space, const std::function<Point(std::size_t)>& seq,
                        std::size_t horizon, std::size_t levels) {
  if (horizon == 0) throw Error("the horizon must cover at least one term");
  if (levels == 0) throw Error("at least one refinement level is needed");

  std::vector<Point> terms;
  terms.reserve(horizon);
  for (std::size_t k = 1; k <= horizon; ++k) {
    terms.push_back(seq(k));
    space.require_point(terms.back());
  }

  std::vector<std::size_t> survivors(horizon);
  for (std::size_t k = 0; k < horizon; ++k) survivors[k] = k;

  ClusterPoint result;
  for (std::size_t n = 1; n <= levels; ++n) {
    Rational radius(1, static_cast<unsigned>(2 * n));
    NetCertificate net = net_of(space, radius);
    std::size_t best = 0;
    std::size_t best_count = 0;
    std::vector<std::size_t> best_kept;
    for (std::size_t c = 0; c < net.points.size(); ++c) {
      std::vector<std::size_t> kept;
      for (std::size_t k : survivors)
        if (metric_eval(space, net.points[c], terms[k]) < radius) kept.push_back(k);
      if (kept.size() > best_count) {
        best = c;
        best_count = kept.size();
        best_kept = std::move(kept);
      }
    }
    if (best_count == 0)
      throw Error("no ball of radius " + to_string(radius) + " keeps a surviving term");
    survivors = std::move(best_kept);
    result.chain.push_back(net.points[best]);
  }
  result.point = result.chain.back();
  result.eps = Rational(1, static_cast<unsigned>(levels));
  result.support_count = survivors.size();
  return result;
}

// --- serialization -----------------------------------------------------------

namespace {

void check_token(const std::string& token) {
  if (token.empty()) throw Error("empty coordinate token");
  for (char ch : token)
    if (ch == ' ' || ch == '\t' || ch == ',' || ch == '#' || ch == '\n' || ch == '\r')
      throw Error("coordinate '" + token + "' cannot be serialized");
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

std::string write_certificate(const NetCertificate& cert) {
  check_token(cert.space_id);
  std::string out = cert.space_id + " " + to_fraction_string(cert.eps) + " " +
                    std::to_string(cert.points.size()) + "\n";
  for (const Point& p : cert.points) {
    if (std::holds_alternative<ProductPoint>(p)) {
      const auto& pp = std::get<ProductPoint>(p);
      if (pp.prefix.empty()) {
        out += "-";
      } else {
        for (std::size_t i = 0; i < pp.prefix.size(); ++i) {
          std::string tok = render_coord(pp.prefix[i]);
          check_token(tok);
          if (i) out += ',';
          out += tok;
        }
      }
      out += " " + std::to_string(pp.tail_anchor) + "\n";
    } else {
      std::string tok = render_point(p);
      check_token(tok);
      out += tok + " 0\n";
    }
  }
  return out;
}

RawCertificate read_certificate(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string stripped = line.substr(0, line.find('#'));
    if (split_ws(stripped).empty()) continue;
    lines.push_back(stripped);
  }
  if (lines.empty()) throw Error("certificate text is empty");

  auto header = split_ws(lines[0]);
  if (header.size() != 3)
    throw Error("certificate header needs '<space> <eps> <count>', got '" + lines[0] + "'");
  RawCertificate raw;
  raw.space_id = header[0];
  raw.eps = parse_rational(header[1]);
  if (raw.eps <= 0) throw Error("certificate radius " + to_string(raw.eps) + " is not positive");
  std::size_t count = parse_index(header[2]);
  if (lines.size() != count + 1)
    throw Error("certificate announces " + std::to_string(count) + " points but carries " +
                std::to_string(lines.size() - 1));

  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = split_ws(lines[i]);
    if (fields.size() != 2)
      throw Error("certificate point needs '<coords> <anchor>', got '" + lines[i] + "'");
    RawCertificate::RawPoint point;
    if (fields[0] != "-") {
      std::string coord;
      std::istringstream coords(fields[0]);
      while (std::getline(coords, coord, ',')) {
        if (coord.empty()) throw Error("empty coordinate in '" + fields[0] + "'");
        point.coords.push_back(coord);
      }
    }
    point.tail_anchor = parse_index(fields[1]);
    raw.points.push_back(std::move(point));
  }
  return raw;
}

NetCertificate bind_certificate(const Space& space, const RawCertificate& raw) {
  if (raw.space_id != space.id())
    throw Error("certificate is for '" + raw.space_id + "', not '" + space.id() + "'");
  NetCertificate cert;
  cert.space_id = raw.space_id;
  cert.eps = raw.eps;
  for (const auto& rp : raw.points) {
    if (space.is_simple()) {
      if (rp.coords.size() != 1)
        throw Error("points of '" + space.id() + "' carry exactly one coordinate");
      Point p = space.kind() == SpaceKind::finite_discrete ? Point(rp.coords[0])
                                                           : Point(parse_rational(rp.coords[0]));
      space.require_point(p);
      cert.points.push_back(std::move(p));
    } else {
      ProductPoint pp;
      pp.tail_anchor = rp.tail_anchor;
      for (std::size_t i = 0; i < rp.coords.size(); ++i) {
        const Space& c = space.component(i + 1);
        if (c.kind() == SpaceKind::finite_discrete)
          pp.prefix.emplace_back(rp.coords[i]);
        else
          pp.prefix.emplace_back(parse_rational(rp.coords[i]));
      }
      Point p(std::move(pp));
      space.require_point(p);
      cert.points.push_back(std::move(p));
    }
  }
  return cert;
}

}  // namespace netcert
