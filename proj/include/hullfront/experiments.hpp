#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hullfront/geometry.hpp"
#include "hullfront/limits.hpp"
#include "hullfront/sampling.hpp"

// Monte Carlo harness connecting finite-n simulation to the limiting
// constants.  Replication r of a run always uses the stream
// (master_seed, stream_id, r), and reductions run in replication order, so
// every result is bit-identical regardless of worker count.

namespace hullfront {

enum class SampleMode { boundary, interior, circle };

struct ExperimentConfig {
    std::optional<Polygon> polygon;       // required unless mode == circle
    SampleMode mode = SampleMode::boundary;
    std::vector<std::size_t> n_list;      // ascending point counts
    std::size_t replications = 1000;      // >= 100
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
    double circle_radius = 1.0;
    int workers = 1;
};

// Throws DomainError on any violated invariant (missing polygon, too few
// replications, non-ascending n_list, bad radius or worker count).
void validate_config(const ExperimentConfig& cfg);

struct EstimateResult {
    double mean_delta = 0.0;
    double std_err = 0.0;
};

// Mean and standard error of the Hausdorff distance between the body and the
// hull of n sampled points, over cfg.replications replications.
EstimateResult estimate_expectation(const ExperimentConfig& cfg, std::size_t n);

struct ConvergenceRow {
    std::size_t n = 0;
    std::size_t replications = 0;
    double mean_delta = 0.0;
    double std_err = 0.0;
    double scaled_mean = 0.0;  // n*mean | sqrt(n)*mean | (n/log n)^2*mean
    double limit_value = 0.0;
    double z_gap = 0.0;        // (scaled_mean - limit) / (scale * std_err)
};

// One row per n in cfg.n_list, scaled per mode and compared against the
// matching limit: limit_constant, interior_limit_expectation, disk_constant.
std::vector<ConvergenceRow> convergence_table(const ExperimentConfig& cfg,
                                              const QuadratureConfig& qcfg = {});

struct TailPoint {
    double r = 0.0;
    double empirical = 0.0;  // P(n * delta > r)
};

// Empirical exceedance probabilities of n*delta over r_grid; boundary mode.
std::vector<TailPoint> estimate_tail(const ExperimentConfig& cfg, std::size_t n,
                                     const std::vector<double>& r_grid);

// One realization of the limiting cone process: unit-intensity Poisson points
// on the two rays of a cone with apex angle alpha, and the distance from the
// apex to the hull of the points.  Only the minimal point per ray matters for
// that distance (all other points lie deeper in the cone), so hull_distance
// is the origin-to-segment distance between the two minimal points.
struct ConeSample {
    double alpha = 0.0;
    std::vector<double> points_ray_a;  // ascending distances along each ray
    std::vector<double> points_ray_b;
    double hull_distance = 0.0;
};

// Draw one cone sample with the given window; an empty ray triggers a retry
// with the window doubled (up to 6 times, then DegenerateWindow).  retries,
// if given, is incremented per retry.
ConeSample make_cone_sample(double alpha, double window, RngStream& rng,
                            std::uint64_t* retries = nullptr);

struct ConePoint {
    double r = 0.0;
    double empirical = 0.0;     // P(hull_distance > r)
    double q_theory = 0.0;      // vertex_tail_q(r, alpha)
    double binom_3sigma = 0.0;  // 3*sqrt(q(1-q)/N)
    bool pass = false;          // |empirical - q_theory| <= binom_3sigma
};

struct ConeResult {
    std::vector<ConePoint> points;
    std::uint64_t window_retries = 0;
};

// N independent cone samples (sample i uses replication index
// seed.replication_index + i) reduced to the empirical survival function on
// r_grid, with the quadrature values and binomial tolerances alongside.
ConeResult simulate_cone_limit(double alpha, const std::vector<double>& r_grid,
                               std::size_t N, SeedSpec seed, int workers = 1,
                               const QuadratureConfig& qcfg = {});

struct CdfPoint {
    double t = 0.0;
    double empirical = 0.0;    // P(sqrt(n) * delta <= t)
    double theoretical = 0.0;  // prod_i (1 - p_i(t))
};

// Empirical CDF of sqrt(n)*delta for interior sampling against the limiting
// product CDF on t_grid.
std::vector<CdfPoint> empirical_cdf_interior(const ExperimentConfig& cfg,
                                             std::size_t n,
                                             const std::vector<double>& t_grid,
                                             const QuadratureConfig& qcfg = {});

// Exact Hausdorff distance between the circle's disk and the hull of points
// at the given angles: R*(1 - cos(g/2)) for the largest angular gap g.
double circle_hausdorff_from_angles(double radius, std::vector<double> angles);

}  // namespace hullfront
