#include "hullfront/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hullfront/errors.hpp"

namespace hullfront {

namespace {

// splitmix64 finisher; bijective on 64-bit words
std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;  // golden-ratio step

}  // namespace

RngStream::RngStream(SeedSpec spec) : spec_(spec) {
    // nested mixing keeps distinct (master, stream, replication) triples in
    // distinct counter sequences
    std::uint64_t k = mix64(spec.master_seed + kGamma);
    k = mix64(k ^ mix64(spec.stream_id + kGamma));
    k = mix64(k ^ mix64(spec.replication_index + kGamma));
    key_ = k;
}

std::uint64_t RngStream::next_u64() {
    counter_ += kGamma;
    return mix64(key_ ^ counter_);
}

double RngStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_exponential() {
    // -log(1-u) with u in [0,1): argument stays in (0,1], so the result is
    // finite and nonnegative
    return -std::log1p(-next_double());
}

std::vector<Point2> sample_boundary(const Polygon& q, std::size_t n, RngStream& rng) {
    const std::vector<Point2>& v = q.vertices();
    const std::vector<double>& len = q.edge_lengths();
    const std::size_t m = v.size();
    const double perim = q.perimeter();

    // cumulative arc-length fractions; dividing partial sums by the total,
    // rather than summing fractions, makes the table exactly invariant under
    // power-of-two rescaling of the polygon
    std::vector<double> cum(m);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        acc += len[i];
        cum[i] = acc / perim;
    }
    cum[m - 1] = 1.0;

    std::vector<Point2> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double u1 = rng.next_double();
        const double u2 = rng.next_double();
        const std::size_t e =
            static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), u1) - cum.begin());
        const Point2 a = v[e];
        const Point2 b = v[(e + 1) % m];
        out.push_back({(1.0 - u2) * a.x + u2 * b.x, (1.0 - u2) * a.y + u2 * b.y});
    }
    return out;
}

std::vector<Point2> sample_interior(const Polygon& q, std::size_t n, RngStream& rng) {
    const std::vector<Point2>& v = q.vertices();
    const std::size_t m = v.size();
    const std::size_t ntri = m - 2;

    // triangle fan at vertex 0; doubled areas are fine for the fractions
    std::vector<double> cum(ntri);
    double total = 0.0;
    for (std::size_t i = 0; i < ntri; ++i) {
        total += cross(v[i + 1] - v[0], v[i + 2] - v[0]);
        cum[i] = total;
    }
    for (std::size_t i = 0; i < ntri; ++i) cum[i] /= total;
    cum[ntri - 1] = 1.0;

    std::vector<Point2> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double u1 = rng.next_double();
        const double u2 = rng.next_double();
        const double u3 = rng.next_double();
        const std::size_t i =
            static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), u1) - cum.begin());
        const Point2 a = v[0];
        const Point2 b = v[i + 1];
        const Point2 c = v[i + 2];
        // sqrt warp: area-uniform barycentric coordinates
        const double s = std::sqrt(u2);
        const double w1 = 1.0 - s;
        const double w2 = s * (1.0 - u3);
        const double w3 = s * u3;
        out.push_back({w1 * a.x + w2 * b.x + w3 * c.x, w1 * a.y + w2 * b.y + w3 * c.y});
    }
    return out;
}

std::vector<double> sample_circle_angles(std::size_t n, RngStream& rng) {
    std::vector<double> out;
    out.reserve(n);
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t k = 0; k < n; ++k) out.push_back(two_pi * rng.next_double());
    return out;
}

std::vector<Point2> sample_circle_boundary(double radius, std::size_t n, RngStream& rng) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw DomainError("circle radius must be positive");
    std::vector<Point2> out;
    out.reserve(n);
    for (const double phi : sample_circle_angles(n, rng))
        out.push_back({radius * std::cos(phi), radius * std::sin(phi)});
    return out;
}

void poisson_on_ray(double window, RngStream& rng, std::vector<double>& out) {
    if (!(window > 0.0) || !std::isfinite(window))
        throw DomainError("poisson window must be positive and finite");
    out.clear();
    double t = 0.0;
    while (true) {
        t += rng.next_exponential();
        if (t > window) break;
        out.push_back(t);
    }
}

std::vector<double> poisson_on_ray(double window, RngStream& rng) {
    std::vector<double> out;
    poisson_on_ray(window, rng, out);
    return out;
}

}  // namespace hullfront
