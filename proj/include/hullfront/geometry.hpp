#pragma once

#include <cmath>
#include <vector>

#include "hullfront/errors.hpp"

namespace hullfront {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }

// 2x2 determinant a.x*b.y - a.y*b.x with fma compensation (Kahan); the sign is
// correct whenever the exact determinant is nonzero.
double cross(Point2 a, Point2 b);

// twice the signed area of triangle (a,b,c); > 0 iff c lies left of a->b
double orient2d(Point2 a, Point2 b, Point2 c);

// Strictly convex polygon, vertices stored counterclockwise.
class Polygon {
  public:
    const std::vector<Point2>& vertices() const { return vertices_; }
    // edge i joins vertices()[i] to vertices()[(i+1) % size]
    const std::vector<double>& edge_lengths() const { return edge_lengths_; }
    // interior angle at vertex i, in (0, pi)
    const std::vector<double>& interior_angles() const { return angles_; }
    double perimeter() const { return perimeter_; }
    double area() const { return area_; }
    double diameter() const { return diameter_; }
    std::size_t size() const { return vertices_.size(); }

  private:
    friend Polygon polygon_from_vertices(std::vector<Point2> pts);
    Polygon() = default;

    std::vector<Point2> vertices_;
    std::vector<double> edge_lengths_;
    std::vector<double> angles_;
    double perimeter_ = 0.0;
    double area_ = 0.0;
    double diameter_ = 0.0;
};

// Validates and normalizes: accepts CW or CCW input, requires >= 3 vertices,
// strict convexity (orientation predicate with eps = 1e-12 * diameter^2) and
// total turning 2*pi. Throws TooFewVertices, DegenerateVertex, NotConvex.
Polygon polygon_from_vertices(std::vector<Point2> pts);

// Regular m-gon (m >= 3) with the given perimeter, centered at the origin.
Polygon regular_polygon(int m, double perimeter);

// Convex hull output: possibly degenerate.
class ConvexSet2 {
  public:
    enum class Kind { empty, point, segment, polygon };

    static ConvexSet2 make_empty() { return ConvexSet2(Kind::empty, {}); }
    static ConvexSet2 make_point(Point2 p) { return ConvexSet2(Kind::point, {p}); }
    static ConvexSet2 make_segment(Point2 a, Point2 b) { return ConvexSet2(Kind::segment, {a, b}); }
    static ConvexSet2 make_polygon(std::vector<Point2> ccw) { return ConvexSet2(Kind::polygon, std::move(ccw)); }

    Kind kind() const { return kind_; }
    // empty: 0 points; point: 1; segment: 2; polygon: >= 3 in CCW order
    // starting from the lowest (then leftmost) vertex
    const std::vector<Point2>& points() const { return points_; }

  private:
    ConvexSet2(Kind k, std::vector<Point2> pts) : kind_(k), points_(std::move(pts)) {}
    Kind kind_;
    std::vector<Point2> points_;
};

// Monotone chain with strict turns: collinear interior points are dropped, so
// every returned polygon vertex is an extreme point. Deterministic canonical
// output (CCW from the lowest, then leftmost vertex).
ConvexSet2 convex_hull(std::vector<Point2> pts);

// Euclidean distance from p to the set (0 if p is inside). Throws EmptySet.
double dist_point_to_convex(Point2 p, const ConvexSet2& k);

// max over vertices of q of dist_point_to_convex; equals the Hausdorff
// distance whenever k is a subset of q.
double hausdorff_polygon_to_subset(const Polygon& q, const ConvexSet2& k);

// Distance from the apex of a triangle with sides b, c enclosing angle alpha
// to the opposite side: b*c*sin(alpha) / sqrt(b^2 + c^2 - 2*b*c*cos(alpha)),
// evaluated in the cancellation-free form (b-c)^2 + 4*b*c*sin(alpha/2)^2.
double triangle_height(double b, double c, double alpha);

// Lower endpoint of the cutoff domain: 1 for alpha < pi/2, 1/sin(alpha) else.
double ell(double alpha);

// Normalized tangent cutoff h(y, alpha): a line tangent to the unit disk
// through y on one cone ray meets the other ray at h(y, alpha).
//   alpha <  pi/2: domain y >= 1, value 1 for y > 1/cos(alpha)
//   alpha >= pi/2: domain y > 1/sin(alpha), blows up at the endpoint
// Evaluated as y / (sin(alpha)*sqrt(y^2-1) + cos(alpha)), which is free of
// interior singularities; returns +inf below the guard y < ell*(1 + 1e-14)
// on the obtuse branch. Throws DomainError outside the admissible range.
double cutoff(double y, double alpha);

// Independent geometric construction of the same quantity, unnormalized:
// bisects for the disk(0,r) tangent line through t*u, intersects it with the
// second ray by a 2x2 solve, and falls back to the corner support point when
// the tangency leaves the cone (the alpha < pi/2 clamp). Returns s with
// s/r = cutoff(t/r, alpha).
double tangent_cutoff_oracle(double r, double t, double alpha);

} // namespace hullfront
