#include "hullfront/limits.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

namespace hullfront {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_angle(double alpha) {
    if (!(alpha > 0.0 && alpha < kPi))
        throw DomainError("angle must lie in (0, pi)");
}

// Distinct angles with multiplicities.  Sorting first makes everything
// downstream invariant under permutations of the input profile; angles within
// 1e-12 of each other collapse to their group mean (one inner integral per
// distinct angle instead of one per vertex).
struct AngleGroup {
    double alpha = 0.0;
    double mult = 0.0;
    double l = 0.0;  // ell(alpha)
};

std::vector<AngleGroup> group_angles(const std::vector<double>& angles) {
    std::vector<double> sorted = angles;
    std::sort(sorted.begin(), sorted.end());
    std::vector<AngleGroup> groups;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        double sum = 0.0;
        while (j < sorted.size() && sorted[j] - sorted[i] <= 1e-12) {
            sum += sorted[j];
            ++j;
        }
        AngleGroup g;
        g.mult = static_cast<double>(j - i);
        g.alpha = sum / g.mult;
        g.l = ell(g.alpha);
        groups.push_back(g);
        i = j;
    }
    return groups;
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

}  // namespace

AngleProfile::AngleProfile(std::vector<double> angles) : angles_(std::move(angles)) {
    if (angles_.size() < 3)
        throw DomainError("angle profile needs at least 3 angles");
    for (double a : angles_) check_angle(a);
}

AngleProfile AngleProfile::from_polygon(const Polygon& q) {
    AngleProfile profile(q.interior_angles());
    double ext = 0.0;
    for (double a : profile.angles_) ext += kPi - a;
    if (std::fabs(ext - 2.0 * kPi) > 1e-9)
        throw DomainError("polygon angles do not close up to a convex cycle");
    return profile;
}

// q(r, alpha) after the substitution z = r*y:
//     q = integral_{r*ell}^inf exp(-z - r*h(z/r, alpha)) dz,
// which keeps the integration window O(30) wide for every r.
QuadratureResult vertex_tail_q_result(double r, double alpha, const QuadratureConfig& cfg) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw DomainError("vertex tail needs r > 0");
    check_angle(alpha);

    const double s = std::sin(alpha);
    const double c = std::cos(alpha);
    // h via the conjugate form y/(s*sqrt(y^2-1) + c): no cancellation on
    // either branch; den <= 0 only at/below the obtuse endpoint where the
    // true integrand vanishes
    const auto f = [&](double z) {
        const double y = z / r;
        const double den = s * std::sqrt(std::max(y * y - 1.0, 0.0)) + c;
        if (!(den > 0.0)) return 0.0;
        return std::exp(-z - r * (y / den));
    };

    const double zwide = std::log(1.0 / cfg.inner_tail_eps);
    QuadratureResult out;

    if (alpha < kHalfPi) {
        const double z0 = r;
        const double z1 = r / c;  // clamp threshold: y = 1/cos(alpha)
        const double zq = std::min(z1, z0 + zwide);
        if (zq > z0) {
            std::vector<double> mesh = geometric_mesh(z0, zq, 8);
            out = integrate_adaptive_mesh(f, mesh, cfg.inner_abs_tol, cfg.max_panels);
        }
        if (zq < z1) {
            // beyond zq both remaining pieces are killed by e^{-z-r}
            out.abs_error_bound += 2.0 * std::exp(-zq - r);
        }
        // clamp region y > 1/cos(alpha), h = 1 exactly
        out.value += std::exp(-r * (1.0 + 1.0 / c));
        return out;
    }

    const double z0 = r / s;  // r * ell(alpha)
    const double zend = z0 + zwide;
    std::vector<double> mesh = geometric_mesh(z0, zend, 30);
    out = integrate_adaptive_mesh(f, mesh, cfg.inner_abs_tol, cfg.max_panels);
    // bracketed tail: h decreases toward its limit ell, so on [zend, inf)
    //     exp(-z - r*h(zend/r)) <= integrand <= exp(-z - r*ell)
    const double hi = std::exp(-zend - r / s);
    const double yend = zend / r;
    const double den_end = s * std::sqrt(std::max(yend * yend - 1.0, 0.0)) + c;
    const double lo = den_end > 0.0 ? std::exp(-zend - r * (yend / den_end)) : 0.0;
    out.value += 0.5 * (hi + lo);
    out.abs_error_bound += 0.5 * (hi - lo);
    return out;
}

double vertex_tail_q(double r, double alpha, const QuadratureConfig& cfg) {
    return std::min(vertex_tail_q_result(r, alpha, cfg).value, 1.0);
}

namespace {

// Shared outer-integration core for shape_integral and moment_constant:
// integrates weight(r) * [1 - prod_i (1 - q_i(r))] over [lo, R] and accounts
// for the inner quadrature error observed at the visited nodes.
template <class Weight>
QuadratureResult outer_product_integral(const std::vector<AngleGroup>& groups,
                                        Weight&& weight, double lo, double R,
                                        double weight_integral,  // int_lo^R |w|
                                        const QuadratureConfig& cfg) {
    std::uint64_t inner_evals = 0;
    double inner_err = 0.0;
    double mult_total = 0.0;
    for (const AngleGroup& g : groups) mult_total += g.mult;

    const auto F = [&](double r) {
        double logprod = 0.0;
        for (const AngleGroup& g : groups) {
            QuadratureResult q = vertex_tail_q_result(r, g.alpha, cfg);
            inner_evals += q.evaluations;
            inner_err = std::max(inner_err, q.abs_error_bound);
            logprod += g.mult * std::log1p(-std::min(q.value, 1.0));
        }
        return weight(r) * (-std::expm1(logprod));
    };

    QuadratureResult outer = integrate_adaptive(F, lo, R, cfg.outer_abs_tol, cfg.max_panels);
    outer.evaluations += inner_evals;
    // each F node is off by at most sum_i mult_i * (per-q error); Kronrod
    // weights are positive so the node errors integrate against |w|
    outer.abs_error_bound += weight_integral * mult_total * inner_err;
    return outer;
}

double outer_radius(const std::vector<AngleGroup>& groups, double mult_total,
                    double tail_eps) {
    double lmin = std::numeric_limits<double>::infinity();
    for (const AngleGroup& g : groups) lmin = std::min(lmin, g.l);
    return std::log(std::max(mult_total, 2.0) / tail_eps) / lmin;
}

}  // namespace

QuadratureResult shape_integral(const AngleProfile& profile, const QuadratureConfig& cfg) {
    const std::vector<AngleGroup> groups = group_angles(profile.angles());
    double mult_total = 0.0;
    for (const AngleGroup& g : groups) mult_total += g.mult;

    // 1 - prod(1-q_i) <= sum q_i <= sum exp(-r*l_i), so truncating at R costs
    // at most sum_i exp(-R*l_i)/l_i
    const double R = outer_radius(groups, mult_total, cfg.tail_eps);
    QuadratureResult out = outer_product_integral(
        groups, [](double) { return 1.0; }, 0.0, R, R, cfg);
    double tail = 0.0;
    for (const AngleGroup& g : groups) tail += g.mult * std::exp(-R * g.l) / g.l;
    out.abs_error_bound += tail;
    return out;
}

QuadratureResult limit_constant(const Polygon& q, const QuadratureConfig& cfg) {
    QuadratureResult inner = shape_integral(AngleProfile::from_polygon(q), cfg);
    const double perim = q.perimeter();
    QuadratureResult out;
    out.value = perim * inner.value;
    out.abs_error_bound = perim * inner.abs_error_bound;
    out.evaluations = inner.evaluations;
    return out;
}

QuadratureResult moment_constant(double gamma, const Polygon& q, const QuadratureConfig& cfg) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw DomainError("moment order must be positive");
    const AngleProfile profile = AngleProfile::from_polygon(q);
    const std::vector<AngleGroup> groups = group_angles(profile.angles());
    double mult_total = 0.0;
    for (const AngleGroup& g : groups) mult_total += g.mult;

    // truncation bound: int_R^inf r^(g-1) e^{-l r} dr <= (2/l) R^(g-1) e^{-l R}
    // valid once r^(g-1) e^{-l r / 2} is decreasing, i.e. R >= 2(gamma-1)/l
    double R = outer_radius(groups, mult_total, cfg.tail_eps);
    for (const AngleGroup& g : groups)
        R = std::max(R, 2.0 * (gamma - 1.0) / g.l + 1.0);
    const auto tail_at = [&](double radius) {
        double tail = 0.0;
        for (const AngleGroup& g : groups)
            tail += g.mult * (2.0 / g.l) * std::pow(radius, gamma - 1.0) *
                    std::exp(-g.l * radius);
        return tail;
    };
    while (tail_at(R) > cfg.tail_eps) R *= 1.25;

    const auto weight = [gamma](double r) { return std::pow(r, gamma - 1.0); };

    QuadratureResult out;
    double lo = 0.0;
    if (gamma < 1.0) {
        // the weight is integrably singular at 0; on [0, delta] the product
        // factor is sandwiched in [F(delta), 1], giving an analytic bracket
        const double delta = std::min(1e-3, 0.25 * R);
        double logprod = 0.0;
        for (const AngleGroup& g : groups)
            logprod += g.mult * std::log1p(-vertex_tail_q(delta, g.alpha, cfg));
        const double f_delta = -std::expm1(logprod);
        const double head = std::pow(delta, gamma) / gamma;
        out.value += 0.5 * head * (1.0 + f_delta);
        out.abs_error_bound += 0.5 * head * (1.0 - f_delta);
        lo = delta;
    }

    const double weight_integral = std::pow(R, gamma) / gamma;
    QuadratureResult mid = outer_product_integral(groups, weight, lo, R,
                                                  weight_integral, cfg);
    out.value += mid.value;
    out.abs_error_bound += mid.abs_error_bound + tail_at(R);
    out.evaluations += mid.evaluations;

    const double prefactor = gamma * std::pow(q.perimeter(), gamma);
    out.value *= prefactor;
    out.abs_error_bound *= prefactor;
    return out;
}

double harmonic_number(int m) {
    if (m < 1) throw DomainError("harmonic number needs m >= 1");
    Neumaier acc;
    for (int k = m; k >= 1; --k) acc.add(1.0 / k);
    return acc.total();
}

double harmonic_alternating_sum(int m) {
    if (m < 1 || m > 64)
        throw DomainError("alternating harmonic form supported for m in [1, 64]");
    // binomials up to C(64, 32) fit in 64 bits exactly; the alternating sum
    // of the integer quotients is tiny (|.| < m) even though individual
    // binomials reach 1.8e18, so splitting C/k = quot + rem/k and summing the
    // quotients in integers removes the catastrophic cancellation entirely
    std::uint64_t binom = 1;
    __int128 int_part = 0;
    Neumaier frac;
    for (int k = 1; k <= m; ++k) {
        binom = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(binom) * static_cast<std::uint64_t>(m - k + 1)) /
            static_cast<std::uint64_t>(k));
        const std::uint64_t quot = binom / static_cast<std::uint64_t>(k);
        const std::uint64_t rem = binom % static_cast<std::uint64_t>(k);
        if (k % 2 == 1) {
            int_part += static_cast<__int128>(quot);
            frac.add(static_cast<double>(rem) / k);
        } else {
            int_part -= static_cast<__int128>(quot);
            frac.add(-static_cast<double>(rem) / k);
        }
    }
    return static_cast<double>(static_cast<long long>(int_part)) + frac.total();
}

double inclusion_exclusion_A(const Polygon& q) {
    const std::vector<double>& angles = q.interior_angles();
    const std::size_t m = angles.size();
    for (std::size_t i = 0; i < m; ++i)
        if (angles[i] < kHalfPi - 1e-9)
            throw HypothesisViolated("interior angle below pi/2 at vertex " +
                                     std::to_string(i));

    const auto [amin, amax] = std::minmax_element(angles.begin(), angles.end());
    const bool equal_angles = (*amax - *amin) <= 1e-12;

    if (m > 20) {
        if (!equal_angles)
            throw ComplexityLimit("subset enumeration supports at most 20 distinct-angle vertices");
        double mean = 0.0;
        for (double a : angles) mean += a;
        mean /= static_cast<double>(m);
        return q.perimeter() * std::sin(mean) * harmonic_number(static_cast<int>(m));
    }

    // exact subset enumeration: sums[S] = sum_{i in S} 1/sin(alpha_i)
    std::vector<double> inv(m);
    for (std::size_t i = 0; i < m; ++i) inv[i] = 1.0 / std::sin(angles[i]);
    const std::size_t nmask = std::size_t(1) << m;
    std::vector<double> sums(nmask, 0.0);
    Neumaier acc;
    for (std::size_t mask = 1; mask < nmask; ++mask) {
        const int low = std::countr_zero(static_cast<std::uint64_t>(mask));
        sums[mask] = sums[mask & (mask - 1)] + inv[static_cast<std::size_t>(low)];
        const int k = std::popcount(static_cast<std::uint64_t>(mask));
        acc.add((k % 2 == 1 ? 1.0 : -1.0) / sums[mask]);
    }
    return q.perimeter() * acc.total();
}

MgonConstant regular_mgon_constant(int m, const QuadratureConfig& cfg) {
    if (m < 4) throw DomainError("regular polygon bound needs m >= 4");
    const double alpha = kPi * (1.0 - 2.0 / m);
    const AngleProfile profile(std::vector<double>(static_cast<std::size_t>(m), alpha));
    MgonConstant out;
    out.constant = shape_integral(profile, cfg);  // unit perimeter
    out.ratio_mlogm = out.constant.value * m / std::log(static_cast<double>(m));
    return out;
}

// p(t, alpha, area): integral of
//     g(a) = exp(-c*(tan a + tan(alpha - a))) * c * tan(a)^2
// over a in (0, alpha) for acute alpha (plus the closed term e^{-c tan alpha}),
// or a in (alpha - pi/2, pi/2) otherwise, with c = t^2/(2*area).
double bhb_vertex_p(double t, double alpha, double area, const QuadratureConfig& cfg) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("bhb tail needs t > 0");
    check_angle(alpha);
    if (!(area > 0.0) || !std::isfinite(area))
        throw DomainError("bhb tail needs a positive area");

    const double c = t * t / (2.0 * area);
    const auto g = [&](double a) {
        const double ta = std::tan(a);
        const double tb = std::tan(alpha - a);
        const double e = -c * (ta + tb);
        if (e < -745.0) return 0.0;  // exp underflow; integrand is exactly 0 at double
        return std::exp(e) * c * ta * ta;
    };

    double value = 0.0;

    if (alpha < kHalfPi) {
        QuadratureResult part =
            integrate_adaptive_mesh(g, geometric_mesh(0.0, alpha, 8),
                                    cfg.inner_abs_tol, cfg.max_panels);
        value = part.value + std::exp(-c * std::tan(alpha));
    } else {
        const double lo = alpha - kHalfPi;
        const double split = lo + 0.75 * (kHalfPi - lo);
        // left piece in angle space; integrand vanishes fast at lo where
        // tan(alpha - a) blows up, so the mesh accumulates there
        QuadratureResult left =
            integrate_adaptive_mesh(g, geometric_mesh(lo, split, 24),
                                    cfg.inner_abs_tol, cfg.max_panels);
        // right piece after z = c*tan(a), which turns the tan blow-up at
        // pi/2 into plain exponential decay:
        //     g da = exp(-z - c*tan(alpha - atan(z/c))) * z^2/(z^2 + c^2) dz
        const auto gz = [&](double z) {
            const double rest = std::tan(alpha - std::atan(z / c));
            const double e = -z - c * rest;
            if (e < -745.0) return 0.0;
            return std::exp(e) * (z * z) / (z * z + c * c);
        };
        const double zstar = c * std::tan(split);
        const double zend = zstar + std::log(1.0 / cfg.inner_tail_eps);
        QuadratureResult right =
            integrate_adaptive(gz, zstar, zend, cfg.inner_abs_tol, cfg.max_panels);
        // bracketed truncation: tan(alpha - atan(z/c)) decreases to tan(lo)
        // and z^2/(z^2+c^2) increases to 1 as z grows
        const double hi = std::exp(-zend - c * std::tan(lo));
        const double lo_tail = std::exp(-zend - c * std::tan(alpha - std::atan(zend / c))) *
                               (zend * zend) / (zend * zend + c * c);
        value = left.value + right.value + 0.5 * (hi + lo_tail);
    }

    if (value < 0.0 || value > 1.0) {
        if (value < -1e-9 || value > 1.0 + 1e-9)
            throw Error("per-vertex interior tail left [0,1] beyond tolerance");
        value = std::clamp(value, 0.0, 1.0);
    }
    return value;
}

QuadratureResult interior_limit_expectation(const Polygon& q, const QuadratureConfig& cfg) {
    const std::vector<AngleGroup> groups = group_angles(q.interior_angles());
    const double area = q.area();
    double mult_total = 0.0;
    for (const AngleGroup& g : groups) mult_total += g.mult;

    // certified envelope p_i(t) <= 3*exp(-beta_i t^2), beta_i = tan(alpha_i/2)/(2A):
    // split e^{-c(tan a + tan(alpha-a))} at the midpoint minimum 2 tan(alpha/2)
    // and integrate the remaining half-decay in closed form
    std::vector<double> beta(groups.size());
    double beta_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < groups.size(); ++i) {
        beta[i] = std::tan(0.5 * groups[i].alpha) / (2.0 * area);
        beta_min = std::min(beta_min, beta[i]);
    }
    const auto tail_at = [&](double T) {
        // int_T^inf e^{-b t^2} dt <= e^{-b T^2} / (2 b T)
        double tail = 0.0;
        for (std::size_t i = 0; i < groups.size(); ++i)
            tail += groups[i].mult * 3.0 * std::exp(-beta[i] * T * T) /
                    (2.0 * beta[i] * T);
        return tail;
    };
    double T = std::sqrt(std::max(1.0, std::log(3.0 * mult_total / cfg.tail_eps)) / beta_min);
    while (tail_at(T) > cfg.tail_eps) T *= 1.15;

    const auto F = [&](double t) {
        double logprod = 0.0;
        for (const AngleGroup& g : groups)
            logprod += g.mult * std::log1p(-bhb_vertex_p(t, g.alpha, area, cfg));
        return -std::expm1(logprod);
    };

    // per-vertex values carry at most the inner tolerance plus both tail
    // bracket half-widths, integrated against the outer length T
    const double p_err = cfg.inner_abs_tol + 2.0 * cfg.inner_tail_eps;
    QuadratureResult out = integrate_adaptive(F, 0.0, T, cfg.outer_abs_tol, cfg.max_panels);
    out.abs_error_bound += tail_at(T) + T * mult_total * p_err;
    return out;
}

double disk_constant(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw DomainError("disk radius must be positive");
    // smooth-body constant at d=2: (1/2)*(sqrt(kappa)/(vol1(B^1)*density))^2
    // with kappa = 1/radius, density = 1/(2*pi*radius), vol1(B^1) = 2
    return kPi * kPi * radius / 2.0;
}

}  // namespace hullfront
