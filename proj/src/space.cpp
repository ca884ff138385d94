#include "netcert/space.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace netcert {

namespace {

Rational abs_diff(const Rational& a, const Rational& b) {
  return a >= b ? Rational(a - b) : Rational(b - a);
}

Rational max_table_entry(const std::vector<std::vector<Rational>>& table) {
  Rational best(0);
  for (const auto& row : table)
    for (const auto& entry : row)
      if (entry > best) best = entry;
  return best;
}

void validate_anchor_order(std::vector<std::size_t>& order, std::size_t min_anchors,
                           const std::string& id) {
  if (order.empty()) {
    for (std::size_t j = 0; j < min_anchors; ++j) order.push_back(j);
    return;
  }
  std::set<std::size_t> seen;
  for (std::size_t j : order) {
    if (j >= min_anchors)
      throw Error("space '" + id + "': anchor index " + std::to_string(j) +
                  " is not valid for every component");
    if (!seen.insert(j).second)
      throw Error("space '" + id + "': duplicate anchor index " + std::to_string(j));
  }
}

}  // namespace

Point point_from_coord(const Coord& c) {
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return std::get<Rational>(c);
}

Coord coord_from_point(const Point& p) {
  if (std::holds_alternative<std::string>(p)) return std::get<std::string>(p);
  if (std::holds_alternative<Rational>(p)) return std::get<Rational>(p);
  throw Error("a product point cannot be used as a coordinate");
}

std::string render_coord(const Coord& c) {
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return to_string(std::get<Rational>(c));
}

std::string render_point(const Point& p) {
  if (std::holds_alternative<std::string>(p)) return std::get<std::string>(p);
  if (std::holds_alternative<Rational>(p)) return to_string(std::get<Rational>(p));
  const auto& pp = std::get<ProductPoint>(p);
  std::string out;
  for (std::size_t i = 0; i < pp.prefix.size(); ++i) {
    if (i) out += ',';
    out += render_coord(pp.prefix[i]);
  }
  out += '@';
  out += std::to_string(pp.tail_anchor);
  return out;
}

// --- factories ---------------------------------------------------------------

Space Space::finite_discrete_unchecked(std::string id, std::vector<std::string> labels,
                                       std::vector<std::vector<Rational>> table,
                                       std::vector<std::string> anchors,
                                       std::optional<Rational> bound) {
  if (labels.empty()) throw Error("space '" + id + "': needs at least one point");
  const std::size_t n = labels.size();
  if (table.size() != n) throw Error("space '" + id + "': table is not " +
                                     std::to_string(n) + "x" + std::to_string(n));
  for (const auto& row : table)
    if (row.size() != n)
      throw Error("space '" + id + "': table is not " + std::to_string(n) + "x" +
                  std::to_string(n));

  FiniteDiscreteData data;
  data.labels = std::move(labels);
  data.table = std::move(table);
  for (std::size_t i = 0; i < n; ++i) {
    if (!data.index.emplace(data.labels[i], i).second)
      throw Error("space '" + id + "': duplicate point label '" + data.labels[i] + "'");
  }
  if (anchors.empty()) throw Error("space '" + id + "': needs at least one anchor");
  for (const auto& a : anchors) {
    auto it = data.index.find(a);
    if (it == data.index.end())
      throw Error("space '" + id + "': anchor '" + a + "' is not a point");
    data.anchors.push_back(it->second);
  }

  Rational biggest = max_table_entry(data.table);
  Rational m = bound ? *bound : biggest;
  if (bound && *bound < biggest)
    throw Error("space '" + id + "': declared bound " + to_string(*bound) +
                " is below the table maximum " + to_string(biggest));
  Space s(SpaceKind::finite_discrete, std::move(id), std::move(m));
  s.data_ = std::move(data);
  return s;
}

Space Space::finite_discrete(std::string id, std::vector<std::string> labels,
                             std::vector<std::vector<Rational>> table,
                             std::vector<std::string> anchors,
                             std::optional<Rational> bound) {
  Space s = finite_discrete_unchecked(std::move(id), std::move(labels), std::move(table),
                                      std::move(anchors), std::move(bound));
  const auto& d = s.fd();
  const std::size_t n = d.labels.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (d.table[i][i] != 0)
      throw Error("space '" + s.id() + "': d(" + d.labels[i] + "," + d.labels[i] +
                  ") = " + to_string(d.table[i][i]) + ", not 0");
    for (std::size_t j = 0; j < n; ++j) {
      if (d.table[i][j] != d.table[j][i])
        throw Error("space '" + s.id() + "': d(" + d.labels[i] + "," + d.labels[j] +
                    ") != d(" + d.labels[j] + "," + d.labels[i] + ")");
      if (i != j && d.table[i][j] <= 0)
        throw Error("space '" + s.id() + "': d(" + d.labels[i] + "," + d.labels[j] +
                    ") = " + to_string(d.table[i][j]) + " is not positive");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Rational direct = d.table[i][k];
        Rational via = d.table[i][j] + d.table[j][k];
        if (direct > via)
          throw Error("space '" + s.id() + "': triangle inequality fails on (" +
                      d.labels[i] + "," + d.labels[j] + "," + d.labels[k] + "): " +
                      to_string(direct) + " > " + to_string(via));
      }
  return s;
}

Space Space::interval(std::string id, Rational lo, Rational hi, std::vector<Rational> anchors,
                      std::optional<Rational> bound, std::optional<Gauge> gauge) {
  if (lo > hi)
    throw Error("space '" + id + "': lo " + to_string(lo) + " exceeds hi " + to_string(hi));
  if (anchors.empty()) throw Error("space '" + id + "': needs at least one anchor");
  for (const auto& a : anchors)
    if (a < lo || a > hi)
      throw Error("space '" + id + "': anchor " + to_string(a) + " is outside [" +
                  to_string(lo) + ", " + to_string(hi) + "]");
  Rational width = hi - lo;
  Rational diam = gauge ? gauge->apply(width) : width;
  if (bound && *bound < diam)
    throw Error("space '" + id + "': declared bound " + to_string(*bound) +
                " is below the diameter " + to_string(diam));
  Rational m = bound ? *bound : diam;

  IntervalData data;
  data.lo = std::move(lo);
  data.hi = std::move(hi);
  data.anchors = std::move(anchors);
  data.gauge = std::move(gauge);
  Space s(SpaceKind::interval, std::move(id), std::move(m));
  s.data_ = std::move(data);
  return s;
}

Space Space::finite_product(std::string id, std::vector<Space> components,
                            std::vector<Rational> weights,
                            std::vector<std::size_t> anchor_order) {
  if (components.empty()) throw Error("space '" + id + "': product needs components");
  if (weights.size() != components.size())
    throw Error("space '" + id + "': " + std::to_string(weights.size()) + " weights for " +
                std::to_string(components.size()) + " components");
  ProductData data;
  data.min_anchors = components.front().anchor_count();
  Rational total(0);
  for (std::size_t i = 0; i < components.size(); ++i) {
    const Space& c = components[i];
    if (!c.is_simple())
      throw Error("space '" + id + "': component '" + c.id() +
                  "' is itself a product; flatten first");
    if (!c.is_single_point() && c.bound() <= 0)
      throw Error("space '" + id + "': component '" + c.id() +
                  "' has bound 0 but more than one point");
    if (weights[i] <= 0)
      throw Error("space '" + id + "': weight " + to_string(weights[i]) + " is not positive");
    data.min_anchors = std::min(data.min_anchors, c.anchor_count());
    total += weights[i];
  }
  validate_anchor_order(anchor_order, data.min_anchors, id);
  for (Space& c : components) data.parts.push_back(std::make_shared<const Space>(std::move(c)));
  data.weights = std::move(weights);
  data.ratio = Rational(0);
  data.scale = Rational(0);
  data.anchor_order = std::move(anchor_order);
  Space s(SpaceKind::finite_product, std::move(id), std::move(total));
  s.data_ = std::move(data);
  return s;
}

Space Space::countable_product(std::string id, std::vector<Space> cycle, Rational ratio,
                               Rational scale, std::vector<std::size_t> anchor_order) {
  if (cycle.empty()) throw Error("space '" + id + "': product needs a component cycle");
  if (ratio <= 0 || ratio >= 1)
    throw Error("space '" + id + "': weight ratio " + to_string(ratio) + " must be in (0,1)");
  if (scale <= 0)
    throw Error("space '" + id + "': weight scale " + to_string(scale) + " must be positive");
  ProductData data;
  data.min_anchors = cycle.front().anchor_count();
  for (const Space& c : cycle) {
    if (!c.is_simple())
      throw Error("space '" + id + "': component '" + c.id() +
                  "' is itself a product; flatten first");
    if (!c.is_single_point() && c.bound() <= 0)
      throw Error("space '" + id + "': component '" + c.id() +
                  "' has bound 0 but more than one point");
    data.min_anchors = std::min(data.min_anchors, c.anchor_count());
  }
  validate_anchor_order(anchor_order, data.min_anchors, id);
  for (Space& c : cycle) data.parts.push_back(std::make_shared<const Space>(std::move(c)));
  Rational total = scale * ratio / (1 - ratio);  // L = sum of s*r^i
  data.ratio = std::move(ratio);
  data.scale = std::move(scale);
  data.anchor_order = std::move(anchor_order);
  Space s(SpaceKind::countable_product, std::move(id), std::move(total));
  s.data_ = std::move(data);
  return s;
}

// --- data access -------------------------------------------------------------

const Space::FiniteDiscreteData& Space::fd() const {
  if (kind_ != SpaceKind::finite_discrete)
    throw Error("space '" + id_ + "' is not finite-discrete");
  return std::get<FiniteDiscreteData>(data_);
}

const Space::IntervalData& Space::iv() const {
  if (kind_ != SpaceKind::interval) throw Error("space '" + id_ + "' is not an interval");
  return std::get<IntervalData>(data_);
}

const Space::ProductData& Space::pd() const {
  if (is_simple()) throw Error("space '" + id_ + "' is not a product");
  return std::get<ProductData>(data_);
}

std::size_t Space::label_index(const std::string& label) const {
  const auto& d = fd();
  auto it = d.index.find(label);
  if (it == d.index.end())
    throw Error("space '" + id_ + "' has no point '" + label + "'");
  return it->second;
}

bool Space::is_single_point() const {
  switch (kind_) {
    case SpaceKind::finite_discrete:
      return fd().labels.size() == 1;
    case SpaceKind::interval:
      return iv().lo == iv().hi;
    default:
      for (const auto& part : pd().parts)
        if (!part->is_single_point()) return false;
      return true;
  }
}

std::size_t Space::anchor_count() const {
  switch (kind_) {
    case SpaceKind::finite_discrete:
      return fd().anchors.size();
    case SpaceKind::interval:
      return iv().anchors.size();
    default:
      return pd().anchor_order.size();
  }
}

Point Space::anchor_point(std::size_t j) const {
  if (j >= anchor_count())
    throw Error("space '" + id_ + "' has no anchor " + std::to_string(j));
  switch (kind_) {
    case SpaceKind::finite_discrete:
      return fd().labels[fd().anchors[j]];
    case SpaceKind::interval:
      return iv().anchors[j];
    default:
      return ProductPoint{{}, pd().anchor_order[j]};
  }
}

const std::vector<std::size_t>& Space::anchor_order() const { return pd().anchor_order; }

std::size_t Space::default_anchor() const {
  if (is_simple()) return 0;
  return pd().anchor_order.front();
}

const std::vector<std::string>& Space::labels() const { return fd().labels; }

const std::vector<std::vector<Rational>>& Space::table() const { return fd().table; }

const Rational& Space::lo() const { return iv().lo; }

const Rational& Space::hi() const { return iv().hi; }

const std::optional<Gauge>& Space::interval_gauge() const { return iv().gauge; }

std::vector<Point> Space::points() const {
  const auto& d = fd();
  std::vector<Point> out;
  out.reserve(d.labels.size());
  for (const auto& l : d.labels) out.emplace_back(l);
  return out;
}

std::optional<Rational> Space::min_positive_distance() const {
  switch (kind_) {
    case SpaceKind::finite_discrete: {
      const auto& d = fd();
      std::optional<Rational> best;
      for (std::size_t i = 0; i < d.labels.size(); ++i)
        for (std::size_t j = i + 1; j < d.labels.size(); ++j)
          if (d.table[i][j] > 0 && (!best || d.table[i][j] < *best)) best = d.table[i][j];
      return best;
    }
    case SpaceKind::interval:
      if (iv().lo == iv().hi) return std::nullopt;
      throw Error("space '" + id_ + "': a nondegenerate interval has no minimal positive distance");
    default:
      throw Error("space '" + id_ + "': minimal positive distance is a simple-space notion");
  }
}

std::size_t Space::arity() const {
  if (kind_ != SpaceKind::finite_product)
    throw Error("space '" + id_ + "' is not a finite product");
  return pd().parts.size();
}

std::size_t Space::cycle_length() const { return pd().parts.size(); }

const Space& Space::component(std::size_t i) const {
  const auto& d = pd();
  if (i == 0) throw Error("component coordinates are 1-based");
  if (kind_ == SpaceKind::finite_product) {
    if (i > d.parts.size())
      throw Error("space '" + id_ + "' has no coordinate " + std::to_string(i));
    return *d.parts[i - 1];
  }
  return *d.parts[(i - 1) % d.parts.size()];
}

Rational Space::weight(std::size_t i) const {
  const auto& d = pd();
  if (i == 0) throw Error("component coordinates are 1-based");
  if (kind_ == SpaceKind::finite_product) {
    if (i > d.parts.size())
      throw Error("space '" + id_ + "' has no coordinate " + std::to_string(i));
    return d.weights[i - 1];
  }
  return Rational(d.scale * rational_pow(d.ratio, i));
}

const Rational& Space::weight_ratio() const {
  if (kind_ != SpaceKind::countable_product)
    throw Error("space '" + id_ + "' has no weight ratio");
  return pd().ratio;
}

const Rational& Space::weight_scale() const {
  if (kind_ != SpaceKind::countable_product)
    throw Error("space '" + id_ + "' has no weight scale");
  return pd().scale;
}

// --- point membership --------------------------------------------------------

void Space::require_point(const Point& p) const {
  switch (kind_) {
    case SpaceKind::finite_discrete: {
      if (!std::holds_alternative<std::string>(p))
        throw Error("space '" + id_ + "' holds labeled points, got " + render_point(p));
      label_index(std::get<std::string>(p));
      return;
    }
    case SpaceKind::interval: {
      if (!std::holds_alternative<Rational>(p))
        throw Error("space '" + id_ + "' holds rational points, got " + render_point(p));
      const Rational& x = std::get<Rational>(p);
      if (x < iv().lo || x > iv().hi)
        throw Error("space '" + id_ + "': " + to_string(x) + " is outside [" +
                    to_string(iv().lo) + ", " + to_string(iv().hi) + "]");
      return;
    }
    default: {
      if (!std::holds_alternative<ProductPoint>(p))
        throw Error("space '" + id_ + "' holds product points, got " + render_point(p));
      const auto& pp = std::get<ProductPoint>(p);
      if (kind_ == SpaceKind::finite_product && pp.prefix.size() > pd().parts.size())
        throw Error("space '" + id_ + "': prefix of length " +
                    std::to_string(pp.prefix.size()) + " exceeds the " +
                    std::to_string(pd().parts.size()) + " coordinates");
      if (pp.tail_anchor >= pd().min_anchors)
        throw Error("space '" + id_ + "': tail anchor " + std::to_string(pp.tail_anchor) +
                    " is not valid for every component");
      for (std::size_t i = 1; i <= pp.prefix.size(); ++i) {
        try {
          component(i).require_point(point_from_coord(pp.prefix[i - 1]));
        } catch (const Error& e) {
          throw Error("space '" + id_ + "', coordinate " + std::to_string(i) + ": " + e.what());
        }
      }
      return;
    }
  }
}

bool Space::is_point(const Point& p) const {
  try {
    require_point(p);
    return true;
  } catch (const Error&) {
    return false;
  }
}

Coord Space::coordinate(const ProductPoint& p, std::size_t i) const {
  if (i == 0) throw Error("component coordinates are 1-based");
  if (i <= p.prefix.size()) return p.prefix[i - 1];
  return coord_from_point(component(i).anchor_point(p.tail_anchor));
}

bool Space::points_equal(const Point& a, const Point& b) const {
  require_point(a);
  require_point(b);
  switch (kind_) {
    case SpaceKind::finite_discrete:
      return std::get<std::string>(a) == std::get<std::string>(b);
    case SpaceKind::interval:
      return std::get<Rational>(a) == std::get<Rational>(b);
    default: {
      const auto& pa = std::get<ProductPoint>(a);
      const auto& pb = std::get<ProductPoint>(b);
      std::size_t m = std::max(pa.prefix.size(), pb.prefix.size());
      if (kind_ == SpaceKind::finite_product) m = pd().parts.size();
      for (std::size_t i = 1; i <= m; ++i)
        if (coordinate(pa, i) != coordinate(pb, i)) return false;
      if (kind_ == SpaceKind::finite_product) return true;
      if (pa.tail_anchor == pb.tail_anchor) return true;
      // Distinct anchor selectors may still agree pointwise beyond m.
      for (std::size_t r = 0; r < pd().parts.size(); ++r) {
        const Space& c = *pd().parts[r];
        if (coord_from_point(c.anchor_point(pa.tail_anchor)) !=
            coord_from_point(c.anchor_point(pb.tail_anchor)))
          return false;
      }
      return true;
    }
  }
}

ProductPoint Space::normalized(const ProductPoint& p) const {
  require_point(ProductPoint(p));
  ProductPoint out = p;
  while (!out.prefix.empty()) {
    std::size_t i = out.prefix.size();
    if (out.prefix.back() != coord_from_point(component(i).anchor_point(out.tail_anchor))) break;
    out.prefix.pop_back();
  }
  return out;
}

// --- metric evaluation -------------------------------------------------------

Rational Space::simple_distance(const Coord& a, const Coord& b) const {
  switch (kind_) {
    case SpaceKind::finite_discrete:
      return fd().table[label_index(std::get<std::string>(a))]
                       [label_index(std::get<std::string>(b))];
    case SpaceKind::interval: {
      Rational d = abs_diff(std::get<Rational>(a), std::get<Rational>(b));
      return iv().gauge ? iv().gauge->apply(d) : d;
    }
    default:
      throw Error("simple_distance on a product space");
  }
}

Rational metric_eval(const Space& space, const Point& p, const Point& q) {
  space.require_point(p);
  space.require_point(q);
  switch (space.kind()) {
    case SpaceKind::finite_discrete:
    case SpaceKind::interval:
      return space.simple_distance(coord_from_point(p), coord_from_point(q));
    case SpaceKind::finite_product: {
      const auto& pp = std::get<ProductPoint>(p);
      const auto& pq = std::get<ProductPoint>(q);
      Rational sum(0);
      for (std::size_t i = 1; i <= space.pd().parts.size(); ++i) {
        const Space& c = space.component(i);
        if (c.is_single_point()) continue;
        Rational d = c.simple_distance(space.coordinate(pp, i), space.coordinate(pq, i));
        sum += space.weight(i) * d / c.bound();
      }
      return sum;
    }
    case SpaceKind::countable_product: {
      const auto& pp = std::get<ProductPoint>(p);
      const auto& pq = std::get<ProductPoint>(q);
      const auto& d = space.pd();
      const std::size_t m = std::max(pp.prefix.size(), pq.prefix.size());
      Rational sum(0);
      for (std::size_t i = 1; i <= m; ++i) {
        const Space& c = space.component(i);
        if (c.is_single_point()) continue;
        Rational di = c.simple_distance(space.coordinate(pp, i), space.coordinate(pq, i));
        sum += space.weight(i) * di / c.bound();
      }
      if (pp.tail_anchor == pq.tail_anchor) return sum;
      // Beyond m both points follow their anchors; each cycle residue class
      // contributes a constant times a geometric series with ratio r^cycle.
      const std::size_t cyc = d.parts.size();
      Rational cycle_ratio = rational_pow(d.ratio, cyc);
      for (std::size_t r = 0; r < cyc; ++r) {
        const Space& c = *d.parts[r];
        if (c.is_single_point()) continue;
        Rational dr = c.simple_distance(coord_from_point(c.anchor_point(pp.tail_anchor)),
                                        coord_from_point(c.anchor_point(pq.tail_anchor)));
        if (dr == 0) continue;
        // First coordinate past m in residue class r (coordinate i has class
        // (i-1) mod cyc).
        std::size_t base = m + 1;
        std::size_t shift = (r + cyc - (base - 1) % cyc) % cyc;
        std::size_t first = base + shift;
        Rational series = d.scale * rational_pow(d.ratio, first) / (1 - cycle_ratio);
        sum += series * dr / c.bound();
      }
      return sum;
    }
  }
  throw Error("unreachable space kind");
}

// --- axiom checking ----------------------------------------------------------

AxiomReport check_metric_axioms(const Space& space, const std::vector<Point>& probes) {
  for (const Point& p : probes) space.require_point(p);
  const std::size_t n = probes.size();
  AxiomReport report;
  report.triples_checked = n * n * n;

  std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dist[i][j] = metric_eval(space, probes[i], probes[j]);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bool equal = space.points_equal(probes[i], probes[j]);
      if (equal != (dist[i][j] == 0))
        report.violations.push_back({"identity",
                                     {render_point(probes[i]), render_point(probes[j]), ""},
                                     dist[i][j],
                                     Rational(0)});
      if (j > i && dist[i][j] != dist[j][i])
        report.violations.push_back({"symmetry",
                                     {render_point(probes[i]), render_point(probes[j]), ""},
                                     dist[i][j],
                                     dist[j][i]});
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Rational via = dist[i][j] + dist[j][k];
        if (dist[i][k] > via)
          report.violations.push_back(
              {"triangle",
               {render_point(probes[i]), render_point(probes[j]), render_point(probes[k])},
               dist[i][k],
               via});
      }
  return report;
}

AxiomReport check_metric_axioms(const Space& space) {
  if (space.kind() != SpaceKind::finite_discrete)
    throw Error("space '" + space.id() + "': exhaustive axiom checks need a finite point set");
  return check_metric_axioms(space, space.points());
}

Rational diameter_bound(const Space& space) {
  if (space.kind() == SpaceKind::finite_discrete) {
    Rational biggest = max_table_entry(space.table());
    if (biggest > space.bound())
      throw Error("space '" + space.id() + "': table maximum " + to_string(biggest) +
                  " exceeds the declared bound " + to_string(space.bound()));
  }
  return space.bound();
}

}  // namespace netcert
