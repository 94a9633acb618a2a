#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hullfront/errors.hpp"
#include "hullfront/geometry.hpp"

using namespace hullfront;

namespace {
constexpr double kPi = std::numbers::pi;

Polygon unit_square() {
    return polygon_from_vertices({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}
}  // namespace

TEST_CASE("polygon_from_vertices validates input") {
    CHECK_THROWS_AS(polygon_from_vertices({{0, 0}, {1, 0}}), TooFewVertices);
    CHECK_THROWS_AS(polygon_from_vertices({{0, 0}, {1, 0}, {1, 0}, {0, 1}}),
                    DegenerateVertex);
    // collinear middle vertex
    CHECK_THROWS_AS(polygon_from_vertices({{0, 0}, {1, 0}, {2, 0}, {1, 1}}),
                    DegenerateVertex);
    // reflex vertex, message names the offending index
    try {
        polygon_from_vertices({{0, 0}, {2, 0}, {1, 0.2}, {2, 2}, {0, 2}});
        CHECK(false);
    } catch (const NotConvex& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
    // star order: convex turns only at some vertices, not a simple cycle
    CHECK_THROWS_AS(polygon_from_vertices({{0, 0}, {1, 1}, {1, 0}, {0, 1}}),
                    NotConvex);
    CHECK_THROWS_AS(
        polygon_from_vertices({{0, 0}, {1, 0}, {std::nan(""), 1}, {0, 1}}),
        DegenerateVertex);
}

TEST_CASE("polygon accepts either orientation and normalizes to counterclockwise") {
    Polygon ccw = unit_square();
    Polygon cw = polygon_from_vertices({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
    CHECK(ccw.area() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cw.area() == doctest::Approx(1.0).epsilon(1e-15));
    // both must produce positive (counterclockwise) orientation
    const auto& v = cw.vertices();
    double twice_area = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2 a = v[i], b = v[(i + 1) % v.size()];
        twice_area += a.x * b.y - a.y * b.x;
    }
    CHECK(twice_area > 0.0);
}

TEST_CASE("polygon metrics on the unit square") {
    Polygon q = unit_square();
    CHECK(q.size() == 4);
    CHECK(q.perimeter() == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(q.area() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(q.diameter() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    for (double a : q.interior_angles())
        CHECK(a == doctest::Approx(kPi / 2).epsilon(1e-15));
    for (double e : q.edge_lengths()) CHECK(e == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("regular_polygon matches closed forms") {
    for (int m : {3, 4, 6, 12, 64}) {
        Polygon q = regular_polygon(m, 2.5);
        CHECK(q.size() == std::size_t(m));
        CHECK(q.perimeter() == doctest::Approx(2.5).epsilon(1e-12));
        const double side = 2.5 / m;
        const double area = m * side * side / (4.0 * std::tan(kPi / m));
        CHECK(q.area() == doctest::Approx(area).epsilon(1e-12));
        for (double a : q.interior_angles())
            CHECK(a == doctest::Approx(kPi * (1.0 - 2.0 / m)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(regular_polygon(2, 1.0), DomainError);
    CHECK_THROWS_AS(regular_polygon(4, -1.0), DomainError);
}

TEST_CASE("convex_hull canonical form and degeneracies") {
    // canonical: starts at lowest-then-leftmost, counterclockwise
    ConvexSet2 h = convex_hull({{1, 1}, {0, 0}, {1, 0}, {0, 1}, {0.5, 0.5}, {0.2, 0.7}});
    REQUIRE(h.kind() == ConvexSet2::Kind::polygon);
    REQUIRE(h.points().size() == 4);
    CHECK(h.points()[0] == Point2{0, 0});
    CHECK(h.points()[1] == Point2{1, 0});
    CHECK(h.points()[2] == Point2{1, 1});
    CHECK(h.points()[3] == Point2{0, 1});

    // idempotence
    ConvexSet2 h2 = convex_hull(h.points());
    REQUIRE(h2.points().size() == h.points().size());
    for (std::size_t i = 0; i < h.points().size(); ++i)
        CHECK(h2.points()[i] == h.points()[i]);

    CHECK(convex_hull({}).kind() == ConvexSet2::Kind::empty);
    CHECK(convex_hull({{2, 3}}).kind() == ConvexSet2::Kind::point);
    CHECK(convex_hull({{2, 3}, {2, 3}}).kind() == ConvexSet2::Kind::point);
    CHECK(convex_hull({{0, 0}, {1, 1}}).kind() == ConvexSet2::Kind::segment);
    // collinear points collapse to a segment
    ConvexSet2 seg = convex_hull({{0, 0}, {3, 3}, {1, 1}, {2, 2}});
    REQUIRE(seg.kind() == ConvexSet2::Kind::segment);
    CHECK(seg.points()[0] == Point2{0, 0});
    CHECK(seg.points()[1] == Point2{3, 3});
}

TEST_CASE("dist_point_to_convex") {
    CHECK_THROWS_AS(dist_point_to_convex({0, 0}, ConvexSet2::make_empty()), EmptySet);
    CHECK(dist_point_to_convex({3, 4}, ConvexSet2::make_point({0, 0})) ==
          doctest::Approx(5.0).epsilon(1e-15));
    ConvexSet2 seg = ConvexSet2::make_segment({0, 0}, {2, 0});
    CHECK(dist_point_to_convex({1, 1}, seg) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dist_point_to_convex({-1, 0}, seg) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dist_point_to_convex({3, 4}, seg) == doctest::Approx(std::sqrt(17.0)).epsilon(1e-15));

    ConvexSet2 sq = convex_hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(dist_point_to_convex({0.5, 0.5}, sq) == 0.0);  // inside
    CHECK(dist_point_to_convex({0.5, 0.0}, sq) == 0.0);  // on boundary
    CHECK(dist_point_to_convex({2, 0.5}, sq) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dist_point_to_convex({2, 2}, sq) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("hausdorff distance from a polygon to an inner convex set") {
    Polygon q = unit_square();
    // inner diamond: worst point is any square corner
    ConvexSet2 diamond = convex_hull({{0.5, 0}, {1, 0.5}, {0.5, 1}, {0, 0.5}});
    CHECK(hausdorff_polygon_to_subset(q, diamond) ==
          doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-14));
    // center point: distance to a corner
    CHECK(hausdorff_polygon_to_subset(q, ConvexSet2::make_point({0.5, 0.5})) ==
          doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-14));
    // the polygon itself: zero
    CHECK(hausdorff_polygon_to_subset(q, convex_hull(q.vertices())) == 0.0);
}

TEST_CASE("triangle_height closed forms") {
    // isosceles: apex height is rho*cos(alpha/2)
    for (double rho : {0.3, 1.0, 2.7}) {
        for (double a : {0.4, kPi / 3, kPi / 2, 2.1, 2.9}) {
            CHECK(triangle_height(rho, rho, a) ==
                  doctest::Approx(rho * std::cos(a / 2)).epsilon(1e-13));
        }
    }
    // right triangle legs 3,4: height onto the hypotenuse is 12/5
    CHECK(triangle_height(3.0, 4.0, kPi / 2) == doctest::Approx(2.4).epsilon(1e-14));
}

TEST_CASE("ell switches between support distances at the right angle") {
    CHECK(ell(kPi / 3) == 1.0);
    CHECK(ell(kPi / 2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ell(2 * kPi / 3) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(ell(3 * kPi / 4) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("cutoff closed-form values") {
    CHECK(cutoff(1.0, kPi / 3) == doctest::Approx(2.0).epsilon(1e-14));   // 1/cos(pi/3)
    CHECK(cutoff(2.0, kPi / 3) == doctest::Approx(1.0).epsilon(1e-14));   // clamp point
    CHECK(cutoff(3.0, kPi / 3) == 1.0);                                   // clamped
    CHECK(cutoff(std::sqrt(2.0), kPi / 2) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(cutoff(2.0 / std::sqrt(3.0), kPi / 2) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(cutoff(2.0, 2 * kPi / 3) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("cutoff is a self-inverse pairing above the support distance") {
    for (double a : {kPi / 2, 1.7, 2.0, 2.3, 2.6, 2.9}) {
        const double l = ell(a);
        for (int j = 1; j <= 40; ++j) {
            const double y = l * (1.0 + 1e-3) + 0.25 * j;
            const double back = cutoff(cutoff(y, a), a);
            CHECK(back == doctest::Approx(y).epsilon(1e-12));
        }
    }
}

TEST_CASE("cutoff is nonincreasing in y") {
    for (double a : {0.5, 1.2, kPi / 2, 2.0, 2.8}) {
        const double l = ell(a);
        double prev = cutoff(l * (1 + 1e-9), a);
        for (int j = 1; j <= 200; ++j) {
            const double y = l * (1 + 1e-9) + 0.1 * j;
            const double cur = cutoff(y, a);
            CHECK(cur <= prev + 1e-15);
            prev = cur;
        }
    }
}

TEST_CASE("cutoff matches the tangent construction") {
    for (int i = 1; i <= 12; ++i) {
        const double a = kPi * i / 13.0;
        for (int j = 0; j < 12; ++j) {
            const double r = 0.2 + 0.45 * j;
            const double t = r * (ell(a) * (1 + 1e-6) + 0.3 * j);
            const double s = tangent_cutoff_oracle(r, t, a);
            CHECK(s / r == doctest::Approx(cutoff(t / r, a)).epsilon(1e-9));
        }
    }
}

TEST_CASE("orient2d signs") {
    CHECK(orient2d({0, 0}, {1, 0}, {0, 1}) > 0.0);
    CHECK(orient2d({0, 0}, {0, 1}, {1, 0}) < 0.0);
    CHECK(orient2d({0, 0}, {1, 1}, {2, 2}) == 0.0);
    // near-degenerate: exact arithmetic sign survives
    CHECK(orient2d({0, 0}, {1e-30, 1e-30}, {2e-30, 2e-30}) == 0.0);
}
