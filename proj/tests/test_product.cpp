#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netcert/product.hpp"
#include "support/builders.hpp"
#include "support/oracle.hpp"

using namespace netcert;

TEST_CASE("geometric weight family") {
    WeightSequence w{Rational(1, 2), Rational(1)};
    CHECK(w.weight(1) == Rational(1, 2));
    CHECK(w.weight(3) == Rational(1, 8));
    CHECK(w.total() == Rational(1));
    CHECK(w.tail(3) == Rational(1, 8));  // sum of 2^-4 + 2^-5 + ...

    WeightSequence t{Rational(1, 3), Rational(1)};
    CHECK(t.tail(2) == Rational(1, 18));
    CHECK(t.total() == Rational(1, 2));
}

TEST_CASE("distances in the weighted binary product") {
    Space P = build::binary_product();
    Point zero = build::bits_point({}, 0);
    Point ones = build::bits_point({}, 1);
    Point x = build::bits_point({1}, 0);  // 1 then zeros

    CHECK(product_metric_D(P, zero, ones) == Rational(1));
    CHECK(product_metric_D(P, zero, x) == Rational(1, 2));
    CHECK(product_metric_D(P, x, zero) == Rational(1, 2));
    CHECK(product_metric_D(P, x, x) == Rational(0));
    CHECK(product_metric_D(P, x, ones) == Rational(1, 2));
    CHECK(product_metric_D(P, build::bits_point({0, 1, 1}, 0),
                           build::bits_point({1, 1, 0}, 0)) == Rational(5, 8));
}

TEST_CASE("product distance agrees with the per-bit oracle") {
    Space P = build::binary_product();
    auto universe = oracle::universe(4);
    for (const auto& a : universe)
        for (const auto& b : universe) {
            Rational lib = product_metric_D(P, oracle::to_point(a), oracle::to_point(b));
            CHECK(lib == oracle::dist(a, b));
        }
}

TEST_CASE("mixed two-space cycle") {
    Space M = netcert::countable_product(
        "M", ComponentGenerator{{build::binary(), build::tri()}},
        WeightSequence{Rational(1, 2), Rational(1)});
    CHECK(M.cycle_length() == 2);
    CHECK(M.anchor_count() == 2);  // binary has 2 anchors, tri has 3
    CHECK(M.bound() == Rational(1));

    Point t0 = build::bits_point({}, 0);  // (0, a, 0, a, ...)
    ProductPoint t1;                      // (1, b, 1, b, ...)
    t1.tail_anchor = 1;
    CHECK(product_metric_D(M, t0, Point(t1)) == Rational(5, 6));

    ProductPoint y;  // (0, c) then anchor 0
    y.prefix = {Coord(std::string("0")), Coord(std::string("c"))};
    CHECK(product_metric_D(M, Point(y), Point(t1)) == Rational(23, 24));
}

TEST_CASE("tail bounds") {
    Space P = build::binary_product();
    CHECK(tail_bound(P, 3) == Rational(1, 8));
    CHECK(tail_bound(P, 4) == Rational(1, 16));
    CHECK_THROWS_AS(tail_bound(P, 0), Error);
    CHECK_THROWS_AS(tail_bound(build::binary(), 1), Error);

    Space T = netcert::countable_product("T", ComponentGenerator{{build::binary()}},
                                         WeightSequence{Rational(1, 3), Rational(1)});
    CHECK(tail_bound(T, 2) == Rational(1, 18));
}

TEST_CASE("truncated sums bracket the full distance") {
    Space P = build::binary_product();
    auto universe = oracle::universe(5);
    for (std::size_t a = 0; a < universe.size(); a += 7)
        for (std::size_t b = 0; b < universe.size(); b += 5)
            for (std::size_t n = 1; n <= 6; ++n) {
                Point x = oracle::to_point(universe[a]);
                Point y = oracle::to_point(universe[b]);
                Rational full = product_metric_D(P, x, y);
                Rational part = truncated_sum(P, x, y, n);
                CHECK(part <= full);
                CHECK(full - part <= tail_bound(P, n));
            }
}

TEST_CASE("metric balls and basic opens translate both ways") {
    Space P = build::binary_product();
    Point zero = build::bits_point({}, 0);

    BasicOpen open = ball_to_open(P, zero, Rational(1, 4));
    CHECK(open.depth == 4);
    CHECK(open.budget == Rational(1, 8));
    CHECK(P.points_equal(open.center, zero));

    // every member of the open lies in the eps-ball
    auto universe = oracle::universe(6);
    for (const auto& u : universe) {
        Point y = oracle::to_point(u);
        if (basic_open_contains(P, open, y))
            CHECK(product_metric_D(P, zero, y) < Rational(1, 4));
    }

    // and a D-ball of the open's own budget sits inside the open
    Rational eps = open_to_ball(P, open);
    CHECK(eps == Rational(1, 8));
    for (const auto& u : universe) {
        Point y = oracle::to_point(u);
        if (product_metric_D(P, zero, y) < eps) CHECK(basic_open_contains(P, open, y));
    }

    // a huge radius needs no coordinates at all
    CHECK(ball_to_open(P, zero, Rational(3)).depth == 1);

    CHECK_THROWS_AS(ball_to_open(P, zero, Rational(0)), Error);
    BasicOpen bad{zero, 0, Rational(1, 2)};
    CHECK_THROWS_AS(basic_open_contains(P, bad, zero), Error);
    BasicOpen nobudget{zero, 1, Rational(0)};
    CHECK_THROWS_AS(basic_open_contains(P, nobudget, zero), Error);
}

TEST_CASE("membership in a depth-1 open pins the first coordinate") {
    Space P = build::binary_product();
    BasicOpen open{build::bits_point({}, 0), 1, Rational(1, 2)};
    for (const auto& u : oracle::universe(3)) {
        bool member = basic_open_contains(P, open, oracle::to_point(u));
        CHECK(member == (u.at(1) == 0));
    }
}

TEST_CASE("truncation to a finite product") {
    Space P = build::binary_product();
    Space F = truncate_product(P, 3);
    CHECK(F.kind() == SpaceKind::finite_product);
    CHECK(F.arity() == 3);
    CHECK(F.id() == "P[:3]");
    CHECK(F.bound() == Rational(7, 8));

    for (const auto& a : oracle::universe(3))
        for (const auto& b : oracle::universe(3)) {
            if (a.tail != 0 || b.tail != 0) continue;
            Point x = oracle::to_point(a);
            Point y = oracle::to_point(b);
            CHECK(metric_eval(F, x, y) == truncated_sum(P, x, y, 3));
        }

    CHECK_THROWS_AS(truncate_product(P, 0), Error);
    CHECK_THROWS_AS(truncate_product(build::binary(), 1), Error);
}

TEST_CASE("componentwise limit of a staircase") {
    Space P = build::binary_product();
    std::vector<Point> seq;
    for (int m = 1; m <= 5; ++m) {
        std::vector<int> bits(m, 1);
        seq.push_back(build::bits_point(bits, 0));
    }
    for (int k = 0; k < 5; ++k) seq.push_back(build::bits_point({}, 1));
    std::vector<Rational> modulus;
    for (std::size_t k = 1; k <= seq.size(); ++k)
        modulus.push_back(rational_pow(Rational(1, 2), k - 1));

    Point limit = cauchy_limit(P, seq, modulus);
    CHECK(P.points_equal(limit, build::bits_point({}, 1)));
}

TEST_CASE("constant sequences converge to themselves") {
    Space P = build::binary_product();
    Point c = build::bits_point({1, 0, 1}, 0);
    std::vector<Point> seq(8, c);
    std::vector<Rational> modulus;
    for (std::size_t k = 1; k <= 8; ++k) modulus.push_back(rational_pow(Rational(1, 2), k));
    Point limit = cauchy_limit(P, seq, modulus);
    CHECK(P.points_equal(limit, c));
}

TEST_CASE("modulus violations carry the witness pair") {
    Space P = build::binary_product();
    std::vector<Point> seq{build::bits_point({}, 0), build::bits_point({}, 1)};
    std::vector<Rational> modulus{Rational(1, 2), Rational(1, 4)};
    try {
        cauchy_limit(P, seq, modulus);
        FAIL("expected a modulus violation");
    } catch (const ModulusViolation& v) {
        CHECK(v.first_index == 1);
        CHECK(v.second_index == 2);
        CHECK(v.distance == Rational(1));
        CHECK(v.allowed == Rational(1, 2));
    }
}

TEST_CASE("limits demand enough evidence") {
    Space P = build::binary_product();
    // the modulus never drops below the tail gap
    std::vector<Point> seq{build::bits_point({}, 0), build::bits_point({}, 0)};
    std::vector<Rational> modulus{Rational(1), Rational(1)};
    CHECK_THROWS_AS(cauchy_limit(P, seq, modulus), InsufficientEvidence);

    // a coordinate that stays unresolved: the first coordinate needs
    // modulus < 1/2 but the evidence stops at 1/2
    std::vector<Point> seq2{build::bits_point({1}, 0), build::bits_point({1}, 0)};
    std::vector<Rational> mod2{Rational(1, 2), Rational(1, 2)};
    CHECK_THROWS_AS(cauchy_limit(P, seq2, mod2), InsufficientEvidence);
}

TEST_CASE("limit input validation") {
    Space P = build::binary_product();
    Point z = build::bits_point({}, 0);
    CHECK_THROWS_AS(cauchy_limit(P, {}, {}), Error);
    CHECK_THROWS_AS(cauchy_limit(P, {z}, {Rational(1), Rational(1)}), Error);
    CHECK_THROWS_AS(cauchy_limit(P, {z, z}, {Rational(1), Rational(0)}), Error);
    CHECK_THROWS_AS(cauchy_limit(P, {z, z}, {Rational(1, 4), Rational(1, 2)}), Error);
    CHECK_THROWS_AS(cauchy_limit(build::binary(),
                                 {Point(std::string("0")), Point(std::string("0"))},
                                 {Rational(1), Rational(1)}),
                    Error);

    // interval coordinates admit no stabilization threshold
    Space I = netcert::countable_product("I", ComponentGenerator{{build::unit_interval()}},
                                         WeightSequence{Rational(1, 2), Rational(1)});
    ProductPoint half;
    half.prefix = {Coord(Rational(1, 2))};
    std::vector<Point> iseq(6, Point(half));
    std::vector<Rational> imod;
    for (std::size_t k = 1; k <= 6; ++k) imod.push_back(rational_pow(Rational(1, 2), k + 4));
    CHECK_THROWS_AS(cauchy_limit(I, iseq, imod), Error);
}
