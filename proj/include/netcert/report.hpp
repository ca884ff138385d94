#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "netcert/rational.hpp"

namespace netcert {

/// One failed exact comparison. `points` holds the participants rendered as
/// text; unused slots stay empty (a symmetry violation names two points, a
/// subadditivity violation names the two grid values).
struct AxiomViolation {
  std::string axiom;
  std::array<std::string, 3> points;
  Rational lhs;
  Rational rhs;
};

/// Result of an exhaustive or probe-based law check. `triples_checked` counts
/// the comparisons performed (ordered point triples for metric checks, grid
/// pairs for gauge checks).
struct AxiomReport {
  std::size_t triples_checked = 0;
  std::vector<AxiomViolation> violations;

  bool ok() const { return violations.empty(); }
};

}  // namespace netcert
