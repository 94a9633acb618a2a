#include "hullfront/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace hullfront {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
}  // namespace

double cross(Point2 a, Point2 b) {
    // Kahan's fma trick: w rounds a.y*b.x, e recovers the rounding error
    // exactly, so f - e carries the full determinant to ~1.5 ulp.
    const double w = a.y * b.x;
    const double e = std::fma(a.y, b.x, -w);
    const double f = std::fma(a.x, b.y, -w);
    return f - e;
}

double orient2d(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

Polygon polygon_from_vertices(std::vector<Point2> pts) {
    const std::size_t m = pts.size();
    if (m < 3)
        throw TooFewVertices("polygon needs at least 3 vertices, got " + std::to_string(m));
    for (const Point2& p : pts)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw DegenerateVertex("polygon vertex is not finite");

    double diam2 = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const Point2 d = pts[i] - pts[j];
            diam2 = std::max(diam2, dot(d, d));
        }
    if (diam2 == 0.0) throw DegenerateVertex("all polygon vertices coincide");
    const double eps = 1e-12 * diam2;

    // normalize to counterclockwise before the turn checks
    double twice_area = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        twice_area += cross(pts[i], pts[(i + 1) % m]);
    if (twice_area < 0.0) {
        std::reverse(pts.begin(), pts.end());
        twice_area = -twice_area;
    }

    Polygon out;
    out.vertices_ = std::move(pts);
    const std::vector<Point2>& v = out.vertices_;
    out.edge_lengths_.resize(m);
    out.angles_.resize(m);

    double turn_sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const Point2 prev = v[(i + m - 1) % m];
        const Point2 cur = v[i];
        const Point2 next = v[(i + 1) % m];
        const Point2 a = prev - cur;
        const Point2 b = next - cur;
        const double turn_cross = cross(b, a);  // = orient2d(prev, cur, next)
        if (std::fabs(turn_cross) <= eps) {
            if (dot(b, b) == 0.0 || dot(a, a) == 0.0)
                throw DegenerateVertex("duplicate vertex at index " + std::to_string(i));
            throw DegenerateVertex("collinear vertex at index " + std::to_string(i));
        }
        if (turn_cross < 0.0)
            throw NotConvex("reflex vertex at index " + std::to_string(i));
        const double angle = std::atan2(turn_cross, dot(a, b));
        out.angles_[i] = angle;
        turn_sum += kPi - angle;
        out.edge_lengths_[i] = norm(next - cur);
        out.perimeter_ += out.edge_lengths_[i];
    }
    // a strictly convex cycle turns by exactly one full revolution; more
    // means the vertex order winds around the hull multiple times
    if (std::fabs(turn_sum - 2.0 * kPi) > 1e-9)
        throw NotConvex("vertex order does not describe a simple convex cycle");

    out.area_ = 0.5 * twice_area;
    out.diameter_ = std::sqrt(diam2);
    return out;
}

Polygon regular_polygon(int m, double perimeter) {
    if (m < 3) throw DomainError("regular polygon needs at least 3 sides");
    if (!(perimeter > 0.0) || !std::isfinite(perimeter))
        throw DomainError("regular polygon perimeter must be positive");
    const double side = perimeter / m;
    const double circumradius = side / (2.0 * std::sin(kPi / m));
    std::vector<Point2> pts(m);
    for (int k = 0; k < m; ++k) {
        const double phi = 2.0 * kPi * k / m;
        pts[k] = {circumradius * std::cos(phi), circumradius * std::sin(phi)};
    }
    return polygon_from_vertices(std::move(pts));
}

ConvexSet2 convex_hull(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    if (pts.empty()) return ConvexSet2::make_empty();
    if (pts.size() == 1) return ConvexSet2::make_point(pts[0]);

    double diam2 = 0.0;
    {
        // bounding box is enough to scale the collinearity tolerance
        double xlo = pts[0].x, xhi = pts[0].x, ylo = pts[0].y, yhi = pts[0].y;
        for (const Point2& p : pts) {
            xlo = std::min(xlo, p.x); xhi = std::max(xhi, p.x);
            ylo = std::min(ylo, p.y); yhi = std::max(yhi, p.y);
        }
        const Point2 d{xhi - xlo, yhi - ylo};
        diam2 = dot(d, d);
    }
    const double eps = 1e-12 * diam2;

    const std::size_t n = pts.size();
    std::vector<Point2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && orient2d(hull[k - 2], hull[k - 1], pts[i]) <= eps) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
        while (k >= lower && orient2d(hull[k - 2], hull[k - 1], pts[i]) <= eps) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);  // last point repeats the first

    if (hull.size() == 2) return ConvexSet2::make_segment(hull[0], hull[1]);

    // canonical start: lowest, then leftmost vertex (order is already CCW)
    std::size_t start = 0;
    for (std::size_t i = 1; i < hull.size(); ++i)
        if (hull[i].y < hull[start].y ||
            (hull[i].y == hull[start].y && hull[i].x < hull[start].x))
            start = i;
    std::rotate(hull.begin(), hull.begin() + start, hull.end());
    return ConvexSet2::make_polygon(std::move(hull));
}

namespace {

double dist_point_segment(Point2 p, Point2 a, Point2 b) {
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return norm(p - a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return norm(p - (a + t * ab));
}

}  // namespace

double dist_point_to_convex(Point2 p, const ConvexSet2& k) {
    const std::vector<Point2>& pts = k.points();
    switch (k.kind()) {
        case ConvexSet2::Kind::empty:
            throw EmptySet("distance to the empty set");
        case ConvexSet2::Kind::point:
            return norm(p - pts[0]);
        case ConvexSet2::Kind::segment:
            return dist_point_segment(p, pts[0], pts[1]);
        case ConvexSet2::Kind::polygon: {
            const std::size_t m = pts.size();
            bool inside = true;
            for (std::size_t i = 0; i < m && inside; ++i)
                inside = orient2d(pts[i], pts[(i + 1) % m], p) >= 0.0;
            if (inside) return 0.0;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i)
                best = std::min(best, dist_point_segment(p, pts[i], pts[(i + 1) % m]));
            return best;
        }
    }
    throw Error("unreachable convex set kind");
}

double hausdorff_polygon_to_subset(const Polygon& q, const ConvexSet2& k) {
    // for convex K inside Q, sup_{x in Q} dist(x, K) is attained at a vertex
    // of Q because dist(., K) is convex
    double best = 0.0;
    for (const Point2& v : q.vertices())
        best = std::max(best, dist_point_to_convex(v, k));
    return best;
}

double triangle_height(double b, double c, double alpha) {
    if (!(b > 0.0) || !(c > 0.0) || !std::isfinite(b) || !std::isfinite(c))
        throw DomainError("triangle sides must be positive and finite");
    if (!(alpha > 0.0 && alpha < kPi))
        throw DomainError("triangle apex angle must lie in (0, pi)");
    const double s = std::sin(0.5 * alpha);
    const double base = std::sqrt((b - c) * (b - c) + 4.0 * b * c * s * s);
    return b * c * std::sin(alpha) / base;
}

double ell(double alpha) {
    if (!(alpha > 0.0 && alpha < kPi))
        throw DomainError("angle must lie in (0, pi)");
    return alpha < kHalfPi ? 1.0 : 1.0 / std::sin(alpha);
}

double cutoff(double y, double alpha) {
    if (!(alpha > 0.0 && alpha < kPi))
        throw DomainError("angle must lie in (0, pi)");
    const double s = std::sin(alpha);
    const double c = std::cos(alpha);
    if (alpha < kHalfPi) {
        if (!(y >= 1.0)) throw DomainError("cutoff needs y >= 1 for acute angles");
        if (y * c > 1.0) return 1.0;  // tangency leaves the cone; support pivots
        return y / (s * std::sqrt(y * y - 1.0) + c);
    }
    const double lo = 1.0 / s;
    if (!(y > lo))
        throw DomainError("cutoff needs y > 1/sin(alpha) for non-acute angles");
    if (y < lo * (1.0 + 1e-14)) return std::numeric_limits<double>::infinity();
    return y / (s * std::sqrt(y * y - 1.0) + c);
}

double tangent_cutoff_oracle(double r, double t, double alpha) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("disk radius must be positive");
    if (!(alpha > 0.0 && alpha < kPi))
        throw DomainError("angle must lie in (0, pi)");
    const double lo = r * ell(alpha);
    if (alpha < kHalfPi ? !(t >= lo) : !(t > lo))
        throw DomainError("tangent point below the reachable range");

    // tangency angle theta solves t*cos(theta) = r; g is strictly decreasing
    double theta = 0.0;
    if (t > r) {
        double a = 0.0, b = kHalfPi;
        while (true) {
            const double mid = 0.5 * (a + b);
            if (!(a < mid && mid < b)) break;
            (t * std::cos(mid) - r >= 0.0 ? a : b) = mid;
        }
        theta = 0.5 * (a + b);
    }

    if (alpha < kHalfPi && theta > alpha) return r;  // corner support case

    const Point2 tp{r * std::cos(theta), r * std::sin(theta)};
    const Point2 dir{-std::sin(theta), std::cos(theta)};
    const Point2 ray{std::cos(alpha), std::sin(alpha)};
    // tp + lambda*dir = s*ray; Cramer for s
    return cross(tp, dir) / cross(ray, dir);
}

}  // namespace hullfront
