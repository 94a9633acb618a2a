#pragma once

#include <cstdint>
#include <vector>

#include "hullfront/geometry.hpp"

// Counter-based random streams and the samplers used by the Monte Carlo
// harness.  Every (master_seed, stream_id, replication_index) triple names an
// independent stream; draws depend only on the triple and the draw counter,
// never on scheduling, so parallel replications reproduce bit-exactly.

namespace hullfront {

struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
    std::uint64_t replication_index = 0;
};

class RngStream {
  public:
    explicit RngStream(SeedSpec spec);

    std::uint64_t next_u64();
    // uniform on [0,1), 53 random bits
    double next_double();
    // unit-rate exponential via inversion; never returns inf or 0 exactly
    double next_exponential();

    const SeedSpec& seed() const { return spec_; }

  private:
    SeedSpec spec_;
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

// n points uniform on the polygon boundary with respect to arc length.
// Each point consumes exactly 2 draws (edge pick, position along edge), so
// streams stay aligned across geometrically different polygons.
std::vector<Point2> sample_boundary(const Polygon& q, std::size_t n, RngStream& rng);

// n points uniform on the polygon interior (area measure) via the triangle
// fan at vertex 0 and the square-root warp inside each triangle.  Exactly 3
// draws per point.
std::vector<Point2> sample_interior(const Polygon& q, std::size_t n, RngStream& rng);

// n angles uniform on [0, 2*pi); 1 draw per angle.
std::vector<double> sample_circle_angles(std::size_t n, RngStream& rng);

// Points on the circle of the given radius centered at the origin.
std::vector<Point2> sample_circle_boundary(double radius, std::size_t n, RngStream& rng);

// Unit-intensity Poisson process on [0, window]: cumulative exponential
// spacings, stopping at the first arrival past the window.  Output ascending,
// possibly empty.
void poisson_on_ray(double window, RngStream& rng, std::vector<double>& out);
std::vector<double> poisson_on_ray(double window, RngStream& rng);

}  // namespace hullfront
