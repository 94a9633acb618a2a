#include "hullfront/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "hullfront/errors.hpp"

namespace hullfront {

namespace {

constexpr double kPi = std::numbers::pi;

// Run body(i) for i in [0, count) on `workers` threads.  Bodies write to
// disjoint slots; reductions happen afterwards in index order, so the number
// of workers never changes a result.
template <class Body>
void parallel_for(std::size_t count, int workers, Body&& body) {
    const std::size_t nthreads =
        std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), count);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(count, std::memory_order_relaxed);  // drain remaining work
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(run);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

struct Neumaier {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double total() const { return sum + comp; }
};

// mean and standard error reduced in index order
EstimateResult reduce_mean(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    Neumaier acc;
    for (double x : xs) acc.add(x);
    const double mean = acc.total() / static_cast<double>(n);
    Neumaier sq;
    for (double x : xs) sq.add((x - mean) * (x - mean));
    const double var = n > 1 ? sq.total() / static_cast<double>(n - 1) : 0.0;
    EstimateResult out;
    out.mean_delta = mean;
    out.std_err = std::sqrt(var / static_cast<double>(n));
    return out;
}

double one_delta(const ExperimentConfig& cfg, std::size_t n, std::uint64_t rep) {
    RngStream rng(SeedSpec{cfg.master_seed, cfg.stream_id, rep});
    switch (cfg.mode) {
        case SampleMode::boundary: {
            std::vector<Point2> pts = sample_boundary(*cfg.polygon, n, rng);
            return hausdorff_polygon_to_subset(*cfg.polygon, convex_hull(std::move(pts)));
        }
        case SampleMode::interior: {
            std::vector<Point2> pts = sample_interior(*cfg.polygon, n, rng);
            return hausdorff_polygon_to_subset(*cfg.polygon, convex_hull(std::move(pts)));
        }
        case SampleMode::circle: {
            std::vector<double> angles = sample_circle_angles(n, rng);
            return circle_hausdorff_from_angles(cfg.circle_radius, std::move(angles));
        }
    }
    throw Error("unreachable sample mode");
}

std::vector<double> all_deltas(const ExperimentConfig& cfg, std::size_t n) {
    std::vector<double> deltas(cfg.replications);
    parallel_for(cfg.replications, cfg.workers,
                 [&](std::size_t rep) { deltas[rep] = one_delta(cfg, n, rep); });
    return deltas;
}

}  // namespace

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.mode != SampleMode::circle && !cfg.polygon.has_value())
        throw DomainError("boundary and interior modes need a polygon");
    if (cfg.replications < 100)
        throw DomainError("at least 100 replications required, got " +
                          std::to_string(cfg.replications));
    if (cfg.n_list.empty()) throw DomainError("at least one point count required");
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
        if (cfg.n_list[i] < 3) throw DomainError("point counts must be at least 3");
        if (i > 0 && cfg.n_list[i] <= cfg.n_list[i - 1])
            throw DomainError("point counts must be strictly ascending");
    }
    if (!(cfg.circle_radius > 0.0) || !std::isfinite(cfg.circle_radius))
        throw DomainError("circle radius must be positive");
    if (cfg.workers < 1 || cfg.workers > 256)
        throw DomainError("workers must lie in [1, 256]");
}

EstimateResult estimate_expectation(const ExperimentConfig& cfg, std::size_t n) {
    validate_config(cfg);
    if (n < 3) throw DomainError("point count must be at least 3");
    return reduce_mean(all_deltas(cfg, n));
}

std::vector<ConvergenceRow> convergence_table(const ExperimentConfig& cfg,
                                              const QuadratureConfig& qcfg) {
    validate_config(cfg);
    if (cfg.n_list.empty()) throw DomainError("n_list must not be empty");

    double limit = 0.0;
    switch (cfg.mode) {
        case SampleMode::boundary:
            limit = limit_constant(*cfg.polygon, qcfg).value;
            break;
        case SampleMode::interior:
            limit = interior_limit_expectation(*cfg.polygon, qcfg).value;
            break;
        case SampleMode::circle:
            limit = disk_constant(cfg.circle_radius);
            break;
    }

    std::vector<ConvergenceRow> rows;
    rows.reserve(cfg.n_list.size());
    for (std::size_t n : cfg.n_list) {
        const EstimateResult est = estimate_expectation(cfg, n);
        double scale = 0.0;
        switch (cfg.mode) {
            case SampleMode::boundary:
                scale = static_cast<double>(n);
                break;
            case SampleMode::interior:
                scale = std::sqrt(static_cast<double>(n));
                break;
            case SampleMode::circle: {
                const double nn = static_cast<double>(n);
                scale = (nn / std::log(nn)) * (nn / std::log(nn));
                break;
            }
        }
        ConvergenceRow row;
        row.n = n;
        row.replications = cfg.replications;
        row.mean_delta = est.mean_delta;
        row.std_err = est.std_err;
        row.scaled_mean = scale * est.mean_delta;
        row.limit_value = limit;
        row.z_gap = (row.scaled_mean - limit) / (scale * est.std_err);
        rows.push_back(row);
    }
    return rows;
}

std::vector<TailPoint> estimate_tail(const ExperimentConfig& cfg, std::size_t n,
                                     const std::vector<double>& r_grid) {
    validate_config(cfg);
    if (cfg.mode != SampleMode::boundary)
        throw DomainError("tail estimation runs in boundary mode");
    if (n < 3) throw DomainError("point count must be at least 3");
    if (r_grid.empty()) throw DomainError("r grid must not be empty");
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] >= 0.0)) throw DomainError("r grid must be nonnegative");
        if (i > 0 && r_grid[i] <= r_grid[i - 1])
            throw DomainError("r grid must be strictly ascending");
    }

    const std::vector<double> deltas = all_deltas(cfg, n);
    std::vector<TailPoint> out;
    out.reserve(r_grid.size());
    const double nn = static_cast<double>(n);
    for (double r : r_grid) {
        std::size_t count = 0;
        for (double d : deltas)
            if (nn * d > r) ++count;
        out.push_back({r, static_cast<double>(count) / static_cast<double>(deltas.size())});
    }
    return out;
}

ConeSample make_cone_sample(double alpha, double window, RngStream& rng,
                            std::uint64_t* retries) {
    if (!(alpha > 0.0 && alpha < kPi))
        throw DomainError("cone angle must lie in (0, pi)");
    ConeSample out;
    out.alpha = alpha;
    double w = window;
    for (int attempt = 0;; ++attempt) {
        poisson_on_ray(w, rng, out.points_ray_a);
        poisson_on_ray(w, rng, out.points_ray_b);
        if (!out.points_ray_a.empty() && !out.points_ray_b.empty()) break;
        if (attempt >= 6)
            throw DegenerateWindow("no Poisson point within the window after 6 doublings");
        if (retries) ++*retries;
        w *= 2.0;
    }
    // Only the first point per ray can support the near side of the hull:
    // every other point lies beyond it on the same ray of a convex cone, so
    // the apex-facing hull boundary is the segment between the two minima
    // (or, past the foot of the perpendicular, one of the endpoints).
    const Point2 a{out.points_ray_a.front(), 0.0};
    const Point2 b{out.points_ray_b.front() * std::cos(alpha),
                   out.points_ray_b.front() * std::sin(alpha)};
    out.hull_distance =
        dist_point_to_convex(Point2{0.0, 0.0}, ConvexSet2::make_segment(a, b));
    return out;
}

ConeResult simulate_cone_limit(double alpha, const std::vector<double>& r_grid,
                               std::size_t N, SeedSpec seed, int workers,
                               const QuadratureConfig& qcfg) {
    if (!(alpha > 0.0 && alpha < kPi))
        throw DomainError("cone angle must lie in (0, pi)");
    if (N < 10000) throw DomainError("cone simulation needs at least 10^4 samples");
    if (r_grid.empty()) throw DomainError("r grid must not be empty");
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] >= 0.0)) throw DomainError("r grid must be nonnegative");
        if (i > 0 && r_grid[i] <= r_grid[i - 1])
            throw DomainError("r grid must be strictly ascending");
    }
    if (workers < 1 || workers > 256) throw DomainError("workers must lie in [1, 256]");

    // window far past every queried r: the first arrival misses a window of
    // length w only with probability e^{-w}
    const double window = 40.0 + 10.0 * r_grid.back();

    std::vector<double> f(N);
    std::atomic<std::uint64_t> retries{0};
    parallel_for(N, workers, [&](std::size_t i) {
        RngStream rng(SeedSpec{seed.master_seed, seed.stream_id,
                               seed.replication_index + i});
        std::uint64_t local_retries = 0;
        f[i] = make_cone_sample(alpha, window, rng, &local_retries).hull_distance;
        if (local_retries) retries.fetch_add(local_retries, std::memory_order_relaxed);
    });

    ConeResult out;
    out.window_retries = retries.load();
    out.points.reserve(r_grid.size());
    for (double r : r_grid) {
        std::size_t count = 0;
        for (double fi : f)
            if (fi > r) ++count;
        ConePoint p;
        p.r = r;
        p.empirical = static_cast<double>(count) / static_cast<double>(N);
        p.q_theory = r > 0.0 ? vertex_tail_q(r, alpha, qcfg) : 1.0;
        p.binom_3sigma = 3.0 * std::sqrt(p.q_theory * (1.0 - p.q_theory) /
                                         static_cast<double>(N));
        p.pass = std::fabs(p.empirical - p.q_theory) <= p.binom_3sigma;
        out.points.push_back(p);
    }
    return out;
}

std::vector<CdfPoint> empirical_cdf_interior(const ExperimentConfig& cfg,
                                             std::size_t n,
                                             const std::vector<double>& t_grid,
                                             const QuadratureConfig& qcfg) {
    validate_config(cfg);
    if (cfg.mode != SampleMode::interior)
        throw DomainError("CDF comparison runs in interior mode");
    if (n < 3) throw DomainError("point count must be at least 3");
    if (t_grid.empty()) throw DomainError("t grid must not be empty");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > 0.0)) throw DomainError("t grid must be positive");
        if (i > 0 && t_grid[i] <= t_grid[i - 1])
            throw DomainError("t grid must be strictly ascending");
    }

    const std::vector<double> deltas = all_deltas(cfg, n);
    const double scale = std::sqrt(static_cast<double>(n));
    const double area = cfg.polygon->area();
    const std::vector<double>& angles = cfg.polygon->interior_angles();

    std::vector<CdfPoint> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
        std::size_t count = 0;
        for (double d : deltas)
            if (scale * d <= t) ++count;
        double logprod = 0.0;
        for (double a : angles)
            logprod += std::log1p(-bhb_vertex_p(t, a, area, qcfg));
        CdfPoint p;
        p.t = t;
        p.empirical = static_cast<double>(count) / static_cast<double>(deltas.size());
        p.theoretical = std::exp(logprod);
        out.push_back(p);
    }
    return out;
}

double circle_hausdorff_from_angles(double radius, std::vector<double> angles) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw DomainError("circle radius must be positive");
    if (angles.empty()) throw DomainError("need at least one angle");
    std::sort(angles.begin(), angles.end());
    double gap = angles.front() + 2.0 * kPi - angles.back();
    for (std::size_t i = 1; i < angles.size(); ++i)
        gap = std::max(gap, angles[i] - angles[i - 1]);
    // deepest point of the disk relative to the hull: the midpoint of the
    // largest arc, at distance R*(1 - cos(gap/2)) from its chord
    const double s = std::sin(0.25 * gap);
    return 2.0 * radius * s * s;
}

}  // namespace hullfront
