#include "netcert/product.hpp"

#include <algorithm>
#include <utility>

namespace netcert {

Rational WeightSequence::weight(std::size_t i) const {
  if (i == 0) throw Error("weights are 1-based");
  return Rational(scale * rational_pow(ratio, i));
}

Rational WeightSequence::total() const { return Rational(scale * ratio / (1 - ratio)); }

Rational WeightSequence::tail(std::size_t n) const {
  return Rational(scale * rational_pow(ratio, n + 1) / (1 - ratio));
}

Space countable_product(std::string id, const ComponentGenerator& gen, const WeightSequence& w,
                        std::vector<std::size_t> anchor_order) {
  return Space::countable_product(std::move(id), gen.cycle, w.ratio, w.scale,
                                  std::move(anchor_order));
}

Rational product_metric_D(const Space& product, const Point& x, const Point& y) {
  if (product.is_simple()) throw Error("space '" + product.id() + "' is not a product");
  return metric_eval(product, x, y);
}

Rational tail_bound(const Space& product, std::size_t n) {
  if (product.kind() != SpaceKind::countable_product)
    throw Error("space '" + product.id() + "' has no weight tail");
  if (n == 0) throw Error("tail bounds start at coordinate 1");
  WeightSequence w{product.weight_ratio(), product.weight_scale()};
  return w.tail(n);
}

Rational truncated_sum(const Space& product, const Point& x, const Point& y, std::size_t n) {
  if (product.kind() != SpaceKind::countable_product)
    throw Error("space '" + product.id() + "' is not a countable product");
  if (n == 0) throw Error("truncations start at coordinate 1");
  product.require_point(x);
  product.require_point(y);
  const auto& px = std::get<ProductPoint>(x);
  const auto& py = std::get<ProductPoint>(y);
  Rational sum(0);
  for (std::size_t i = 1; i <= n; ++i) {
    const Space& c = product.component(i);
    if (c.is_single_point()) continue;
    Rational di = metric_eval(c, point_from_coord(product.coordinate(px, i)),
                              point_from_coord(product.coordinate(py, i)));
    sum += product.weight(i) * di / c.bound();
  }
  return sum;
}

bool basic_open_contains(const Space& product, const BasicOpen& open, const Point& y) {
  if (open.depth == 0) throw Error("basic opens restrict at least coordinate 1");
  if (open.budget <= 0) throw Error("basic opens need a positive budget");
  return truncated_sum(product, open.center, y, open.depth) < open.budget;
}

BasicOpen ball_to_open(const Space& product, const Point& x, const Rational& eps) {
  if (eps <= 0) throw Error("ball radius must be positive");
  product.require_point(x);
  Rational half = eps / 2;
  std::size_t depth = 1;
  while (tail_bound(product, depth) >= half) ++depth;
  return BasicOpen{x, depth, half};
}

Rational open_to_ball(const Space& product, const BasicOpen& open) {
  if (open.depth == 0) throw Error("basic opens restrict at least coordinate 1");
  if (open.budget <= 0) throw Error("basic opens need a positive budget");
  product.require_point(open.center);
  // Each restricted term is part of the full sum, so D(center, y) < budget
  // already forces membership.
  return open.budget;
}

Space truncate_product(const Space& product, std::size_t depth) {
  if (product.kind() != SpaceKind::countable_product)
    throw Error("space '" + product.id() + "' is not a countable product");
  if (depth == 0) throw Error("truncations keep at least coordinate 1");
  std::vector<Space> components;
  std::vector<Rational> weights;
  components.reserve(depth);
  weights.reserve(depth);
  for (std::size_t i = 1; i <= depth; ++i) {
    components.push_back(product.component(i));
    weights.push_back(product.weight(i));
  }
  return Space::finite_product(product.id() + "[:" + std::to_string(depth) + "]",
                               std::move(components), std::move(weights),
                               product.anchor_order());
}

ModulusViolation::ModulusViolation(std::size_t j, std::size_t k, Rational d, Rational a)
    : Error("terms " + std::to_string(j) + " and " + std::to_string(k) + " lie " + to_string(d) +
            " apart, but the modulus allows less than " + to_string(a)),
      first_index(j),
      second_index(k),
      distance(std::move(d)),
      allowed(std::move(a)) {}

namespace {

// Smallest anchor index count valid for every cycle member.
std::size_t valid_anchor_indices(const Space& product) {
  std::size_t a = product.component(1).anchor_count();
  for (std::size_t r = 2; r <= product.cycle_length(); ++r)
    a = std::min(a, product.component(r).anchor_count());
  return a;
}

}  // namespace

Point cauchy_limit(const Space& product, const std::vector<Point>& seq,
                   const std::vector<Rational>& modulus) {
  if (product.kind() != SpaceKind::countable_product)
    throw Error("space '" + product.id() + "' is not a countable product");
  if (seq.empty()) throw Error("no sequence terms given");
  if (modulus.size() != seq.size())
    throw Error(std::to_string(modulus.size()) + " modulus values for " +
                std::to_string(seq.size()) + " terms");
  for (std::size_t k = 0; k < modulus.size(); ++k) {
    if (modulus[k] <= 0)
      throw Error("modulus value " + std::to_string(k + 1) + " is not positive");
    if (k > 0 && modulus[k] > modulus[k - 1])
      throw Error("modulus increases at position " + std::to_string(k + 1));
  }

  std::vector<ProductPoint> terms;
  terms.reserve(seq.size());
  for (const Point& p : seq) {
    product.require_point(p);
    terms.push_back(product.normalized(std::get<ProductPoint>(p)));
  }

  for (std::size_t j = 0; j < terms.size(); ++j)
    for (std::size_t k = j + 1; k < terms.size(); ++k) {
      Rational d = metric_eval(product, terms[j], terms[k]);
      if (d >= modulus[j]) throw ModulusViolation(j + 1, k + 1, std::move(d), modulus[j]);
    }

  std::size_t m = 0;
  for (const auto& t : terms) m = std::max(m, t.prefix.size());

  // A coordinate is pinned once the modulus dips below the smallest move the
  // component allows; the anchor tail once it dips below the smallest
  // positive anchor-vs-anchor tail distance beyond m.
  ProductPoint limit;
  for (std::size_t i = 1; i <= m; ++i) {
    const Space& c = product.component(i);
    if (c.is_single_point()) {
      limit.prefix.push_back(product.coordinate(terms.front(), i));
      continue;
    }
    if (c.kind() != SpaceKind::finite_discrete)
      throw Error("coordinate " + std::to_string(i) + " ranges over '" + c.id() +
                  "', which has no smallest positive distance; stabilization is undecidable");
    Rational threshold = product.weight(i) * (*c.min_positive_distance()) / c.bound();
    std::size_t k = 0;
    while (k < modulus.size() && modulus[k] >= threshold) ++k;
    if (k == modulus.size())
      throw InsufficientEvidence("coordinate " + std::to_string(i) +
                                 " never stabilizes: the modulus never drops below " +
                                 to_string(threshold));
    limit.prefix.push_back(product.coordinate(terms[k], i));
  }

  const std::size_t anchors = valid_anchor_indices(product);
  std::vector<Coord> base;
  for (std::size_t i = 1; i <= m; ++i)
    base.push_back(coord_from_point(product.component(i).anchor_point(0)));
  std::optional<Rational> min_tail_gap;
  for (std::size_t t = 0; t < anchors; ++t)
    for (std::size_t u = t + 1; u < anchors; ++u) {
      Rational d = metric_eval(product, ProductPoint{base, t}, ProductPoint{base, u});
      if (d > 0 && (!min_tail_gap || d < *min_tail_gap)) min_tail_gap = d;
    }
  if (!min_tail_gap) {
    limit.tail_anchor = terms.back().tail_anchor;  // all tails agree beyond m
  } else {
    std::size_t k = 0;
    while (k < modulus.size() && modulus[k] >= *min_tail_gap) ++k;
    if (k == modulus.size())
      throw InsufficientEvidence("the anchor tail never stabilizes: the modulus never drops below " +
                                 to_string(*min_tail_gap));
    limit.tail_anchor = terms[k].tail_anchor;
  }
  return product.normalized(limit);
}

}  // namespace netcert
