#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "netcert/gauge.hpp"
#include "netcert/space.hpp"

namespace netcert {

/// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line;
  std::size_t column;
};

/// A resolved definition file: named gauges and spaces (products already
/// wired to their cycles, gauges already applied).
///
/// Grammar (one declaration per block, '#' starts a comment):
///   finite NAME   { points = a, b, ...; d(a,b) = 1; [bound = M;] [anchors = ...;] [gauge = G;] }
///   interval NAME { lo = 0; hi = 1; [bound = M;] [anchors = ...;] [gauge = G;] }
///   gauge NAME    { kind = cap; bound = a; }   |   { kind = rational-bend; [eta = E;] }
///   product NAME  { cycle = s1, s2, ...; weights = geometric(r, s); [anchor = J;] }
/// Entries are ';'-separated; the separator before '}' is optional.
struct SpaceDefFile {
  std::map<std::string, Space> spaces;
  std::map<std::string, Gauge> gauges;
  std::vector<std::string> space_order;  // declaration order

  const Space& space(const std::string& name) const;
};

SpaceDefFile parse_space_file(const std::string& text);

/// Point syntax used by the CLI and probe/sequence files:
///   finite-discrete: a label;  interval: a rational;
///   product: "c1,c2,...@a" (prefix coordinates, '@', tail anchor index),
///            "@a" for an empty prefix.
Point parse_point(const Space& space, const std::string& token);

/// One point per line; '#' comments and blank lines ignored.
std::vector<Point> parse_point_file(const Space& space, const std::string& text);

}  // namespace netcert
