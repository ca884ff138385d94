#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netcert/rational.hpp"
#include "netcert/space.hpp"
#include "support/builders.hpp"

using namespace netcert;

TEST_CASE("rational parsing and rendering") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-1/2") == Rational(-1, 2));
    CHECK(parse_rational("2") == Rational(2));
    CHECK(parse_rational("6/8") == Rational(3, 4));  // lowest terms
    CHECK(to_string(Rational(3, 4)) == "3/4");
    CHECK(to_string(Rational(-1, 2)) == "-1/2");
    CHECK(to_string(Rational(2)) == "2");
    CHECK(to_fraction_string(Rational(2)) == "2/1");

    CHECK_THROWS_AS(parse_rational(""), Error);
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("1/-2"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK_THROWS_AS(parse_rational("1.5"), Error);
    CHECK_THROWS_AS(parse_rational("1/2/3"), Error);
}

TEST_CASE("floor_div and rational_pow") {
    CHECK(floor_div(Rational(7, 2)) == 3);
    CHECK(floor_div(Rational(-7, 2)) == -4);
    CHECK(floor_div(Rational(4)) == 4);
    CHECK(rational_pow(Rational(1, 2), 4) == Rational(1, 16));
    CHECK(rational_pow(Rational(3), 0) == Rational(1));
}

TEST_CASE("parse_index") {
    CHECK(parse_index("0") == 0);
    CHECK(parse_index("17") == 17);
    CHECK_THROWS_AS(parse_index(""), Error);
    CHECK_THROWS_AS(parse_index("-1"), Error);
    CHECK_THROWS_AS(parse_index("2x"), Error);
    CHECK_THROWS_AS(parse_index("9999999999"), Error);
}

TEST_CASE("two-point space distances") {
    Space b = build::binary();
    CHECK(metric_eval(b, std::string("0"), std::string("1")) == Rational(1));
    CHECK(metric_eval(b, std::string("0"), std::string("0")) == Rational(0));
    CHECK(diameter_bound(b) == Rational(1));
    CHECK(b.min_positive_distance() == Rational(1));
}

TEST_CASE("interval distances") {
    Space u = build::unit_interval();
    CHECK(metric_eval(u, Rational(1, 3), Rational(3, 4)) == Rational(5, 12));
    CHECK(metric_eval(u, Rational(3, 4), Rational(1, 3)) == Rational(5, 12));
    CHECK(metric_eval(u, Rational(1, 2), Rational(1, 2)) == Rational(0));
    CHECK(diameter_bound(u) == Rational(1));

    CHECK_THROWS_AS(metric_eval(u, Rational(2), Rational(0)), Error);      // out of range
    CHECK_THROWS_AS(metric_eval(u, std::string("0"), Rational(0)), Error); // wrong type
}

TEST_CASE("exhaustive axiom check on valid tables") {
    auto r = check_metric_axioms(build::binary());
    CHECK(r.ok());
    CHECK(r.triples_checked == 8);

    auto r3 = check_metric_axioms(build::tri());
    CHECK(r3.ok());
    CHECK(r3.triples_checked == 27);

    Space one = Space::finite_discrete("pt", {"x"}, {{0}}, {"x"});
    auto r1 = check_metric_axioms(one);
    CHECK(r1.ok());
    CHECK(r1.triples_checked == 1);
}

TEST_CASE("axiom violations are reported as data on unchecked tables") {
    // d(a,c)=5 breaks the triangle through b
    Space bad = Space::finite_discrete_unchecked(
        "bad", {"a", "b", "c"}, {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}, {"a"});
    auto r = check_metric_axioms(bad);
    CHECK_FALSE(r.ok());
    REQUIRE(!r.violations.empty());
    const auto& v = r.violations.front();
    CHECK(v.axiom == "triangle");
    CHECK(v.lhs == Rational(5));
    CHECK(v.rhs == Rational(2));

    // asymmetric table
    Space asym = Space::finite_discrete_unchecked(
        "asym", {"a", "b"}, {{0, 1}, {2, 0}}, {"a"});
    auto ra = check_metric_axioms(asym);
    CHECK_FALSE(ra.ok());
    CHECK(ra.violations.front().axiom == "symmetry");

    // zero off the diagonal: identity of indiscernibles fails
    Space zero = Space::finite_discrete_unchecked(
        "zero", {"a", "b"}, {{0, 0}, {0, 0}}, {"a"});
    auto rz = check_metric_axioms(zero);
    CHECK_FALSE(rz.ok());
    CHECK(rz.violations.front().axiom == "identity");
}

TEST_CASE("checked constructor rejects broken tables") {
    using T = std::vector<std::vector<Rational>>;
    using L = std::vector<std::string>;
    CHECK_THROWS_AS(Space::finite_discrete("x", L{"a", "b"}, T{{0, 1}, {2, 0}}, L{"a"}), Error);
    CHECK_THROWS_AS(Space::finite_discrete("x", L{"a", "b"}, T{{1, 1}, {1, 0}}, L{"a"}), Error);
    CHECK_THROWS_AS(Space::finite_discrete("x", L{"a", "b"}, T{{0, 0}, {0, 0}}, L{"a"}), Error);
    CHECK_THROWS_AS(Space::finite_discrete("x", L{"a", "b", "c"},
                                           T{{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}, L{"a"}),
                    Error);
    // declared bound below the largest entry
    CHECK_THROWS_AS(Space::finite_discrete("x", L{"a", "b"}, T{{0, 2}, {2, 0}}, L{"a"},
                                           Rational(1)),
                    Error);
    CHECK_THROWS_AS(Space::finite_discrete("x", L{"a", "a"}, T{{0, 1}, {1, 0}}, L{"a"}), Error);
    CHECK_THROWS_AS(Space::finite_discrete("x", L{"a", "b"}, T{{0, 1}}, L{"a"}), Error);
    CHECK_THROWS_AS(Space::finite_discrete("x", L{"a", "b"}, T{{0, 1}, {1, 0}}, L{}), Error);
    CHECK_THROWS_AS(Space::finite_discrete("x", L{"a", "b"}, T{{0, 1}, {1, 0}}, L{"z"}), Error);
    CHECK_THROWS_AS(Space::finite_discrete("x", L{}, T{}, L{}), Error);
}

TEST_CASE("interval constructor validation") {
    CHECK_THROWS_AS(Space::interval("x", 1, 0, {Rational(0)}), Error);   // lo > hi
    CHECK_THROWS_AS(Space::interval("x", 0, 1, {Rational(2)}), Error);   // anchor outside
    CHECK_THROWS_AS(Space::interval("x", 0, 1, {}), Error);              // no anchors
    CHECK_THROWS_AS(Space::interval("x", 0, 1, {Rational(0)}, Rational(1, 2)), Error);

    Space wide = Space::interval("w", 0, Rational(3, 2), {Rational(0)});
    CHECK(diameter_bound(wide) == Rational(3, 2));

    Space pt = Space::interval("p", 1, 1, {Rational(1)});
    CHECK(pt.is_single_point());
    CHECK(diameter_bound(pt) == Rational(0));
    CHECK(pt.min_positive_distance() == std::nullopt);
}

TEST_CASE("probe-set axiom check on an interval") {
    Space u = build::unit_interval();
    std::vector<Point> probes{Rational(0), Rational(1, 2), Rational(1)};
    auto r = check_metric_axioms(u, probes);
    CHECK(r.ok());
    CHECK(r.triples_checked == 27);
    CHECK_THROWS_AS(check_metric_axioms(u), Error);  // exhaustive needs a finite table
    std::vector<Point> badp{Rational(2)};
    CHECK_THROWS_AS(check_metric_axioms(u, badp), Error);
}

TEST_CASE("diameter bounds honor the declaration") {
    Space wide = Space::finite_discrete("wide", {"a", "b"}, {{0, 1}, {1, 0}}, {"a"},
                                        Rational(7));
    CHECK(diameter_bound(wide) == Rational(7));
    // a bound below the table maximum is inconsistent, even without axiom checks
    CHECK_THROWS_AS(Space::finite_discrete_unchecked("lie", {"a", "b"}, {{0, 3}, {3, 0}},
                                                     {"a"}, Rational(1)),
                    Error);
}

TEST_CASE("anchors on simple spaces") {
    Space b = build::binary();
    CHECK(b.anchor_count() == 2);
    CHECK(b.points_equal(b.anchor_point(0), Point(std::string("0"))));
    CHECK(b.points_equal(b.anchor_point(1), Point(std::string("1"))));
    CHECK_THROWS_AS(b.anchor_point(2), Error);

    Space u = build::unit_interval();
    CHECK(u.anchor_count() == 2);
    CHECK(u.points_equal(u.anchor_point(1), Point(Rational(1))));
}

TEST_CASE("product points: padding, equality, normalization") {
    Space P = build::binary_product();
    CHECK(P.bound() == Rational(1));
    CHECK(P.cycle_length() == 1);
    CHECK(P.anchor_count() == 2);
    CHECK(P.default_anchor() == 0);

    Point a = build::bits_point({1, 0}, 0);
    Point b = build::bits_point({1, 0, 0, 0}, 0);  // same point, longer prefix
    CHECK(P.points_equal(a, b));
    CHECK_FALSE(P.points_equal(a, build::bits_point({1, 0}, 1)));
    CHECK(metric_eval(P, a, b) == Rational(0));

    // coordinates resolve through the anchor padding
    ProductPoint pp = std::get<ProductPoint>(a);
    CHECK(P.coordinate(pp, 1) == Coord(std::string("1")));
    CHECK(P.coordinate(pp, 5) == Coord(std::string("0")));

    ProductPoint n = P.normalized(std::get<ProductPoint>(b));
    CHECK(n.prefix.size() == 1);
    CHECK(n.tail_anchor == 0);

    // a prefix written entirely in anchor coordinates normalizes to empty
    ProductPoint all1 = std::get<ProductPoint>(build::bits_point({1, 1}, 1));
    CHECK(P.normalized(all1).prefix.empty());

    CHECK(render_point(build::bits_point({1, 0}, 1)) == "1,0@1");
    CHECK(render_point(build::bits_point({}, 1)) == "@1");
}

TEST_CASE("product point validation") {
    Space P = build::binary_product();
    CHECK(P.is_point(build::bits_point({0, 1}, 0)));
    CHECK_FALSE(P.is_point(Point(std::string("0"))));  // not a product point
    ProductPoint badc;
    badc.prefix = {Coord(std::string("2"))};
    CHECK_FALSE(P.is_point(Point(badc)));
    ProductPoint bada;
    bada.tail_anchor = 2;
    CHECK_FALSE(P.is_point(Point(bada)));
    CHECK_THROWS_AS(metric_eval(P, Point(bada), Point(bada)), Error);
}

TEST_CASE("finite product arity and bounds") {
    Space F = Space::finite_product("F", {build::binary(), build::tri()},
                                    {Rational(1, 2), Rational(1, 4)});
    CHECK(F.arity() == 2);
    CHECK(F.bound() == Rational(3, 4));
    CHECK(F.anchor_count() == 2);  // min(2, 3)

    ProductPoint x;  // anchors all the way: (0, a)
    ProductPoint y;
    y.prefix = {Coord(std::string("1")), Coord(std::string("c"))};
    // D = 1/2 * 1/1 + 1/4 * 2/2 = 3/4
    CHECK(metric_eval(F, Point(x), Point(y)) == Rational(3, 4));

    ProductPoint toolong;
    toolong.prefix = {Coord(std::string("0")), Coord(std::string("a")), Coord(std::string("0"))};
    CHECK_FALSE(F.is_point(Point(toolong)));

    CHECK_THROWS_AS(Space::finite_product("F", {}, {}), Error);
    CHECK_THROWS_AS(Space::finite_product("F", {build::binary()}, {Rational(0)}), Error);
    CHECK_THROWS_AS(Space::finite_product("F", {build::binary()},
                                          {Rational(1), Rational(1)}),
                    Error);
    // nested products must be flattened by the caller
    CHECK_THROWS_AS(Space::finite_product("F", {F}, {Rational(1)}), Error);
}

TEST_CASE("designated anchor order") {
    Space P1 = netcert::countable_product(
        "P1", ComponentGenerator{{build::binary()}},
        WeightSequence{Rational(1, 2), Rational(1)}, {1});
    CHECK(P1.default_anchor() == 1);
    CHECK(P1.anchor_count() == 1);
    CHECK(P1.points_equal(P1.anchor_point(0), build::bits_point({}, 1)));

    CHECK_THROWS_AS(netcert::countable_product("x", ComponentGenerator{{build::binary()}},
                                               WeightSequence{Rational(1, 2), Rational(1)},
                                               {2}),
                    Error);
    CHECK_THROWS_AS(netcert::countable_product("x", ComponentGenerator{{build::binary()}},
                                               WeightSequence{Rational(1, 2), Rational(1)},
                                               {0, 0}),
                    Error);
}

TEST_CASE("countable product constructor validation") {
    CHECK_THROWS_AS(netcert::countable_product("x", ComponentGenerator{{build::binary()}},
                                               WeightSequence{Rational(1), Rational(1)}),
                    Error);  // ratio must be < 1
    CHECK_THROWS_AS(netcert::countable_product("x", ComponentGenerator{{build::binary()}},
                                               WeightSequence{Rational(1, 2), Rational(0)}),
                    Error);  // scale must be positive
    CHECK_THROWS_AS(netcert::countable_product("x", ComponentGenerator{{}},
                                               WeightSequence{Rational(1, 2), Rational(1)}),
                    Error);  // empty cycle

    // multi-point component with diameter bound zero cannot be normalized
    Space flat = Space::finite_discrete_unchecked("flat", {"a", "b"}, {{0, 0}, {0, 0}}, {"a"});
    CHECK(flat.bound() == Rational(0));
    CHECK_THROWS_AS(netcert::countable_product("x", ComponentGenerator{{flat}},
                                               WeightSequence{Rational(1, 2), Rational(1)}),
                    Error);
}

TEST_CASE("render and coord round trips") {
    CHECK(render_point(Point(std::string("abc"))) == "abc");
    CHECK(render_point(Point(Rational(3, 4))) == "3/4");
    CHECK(render_coord(Coord(Rational(-1, 2))) == "-1/2");
    CHECK_THROWS_AS(coord_from_point(build::bits_point({}, 0)), Error);
}
