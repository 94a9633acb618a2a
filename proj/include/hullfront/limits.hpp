#pragma once

#include <vector>

#include "hullfront/geometry.hpp"
#include "hullfront/quadrature.hpp"

// Closed-form limiting constants for the expected Hausdorff distance between
// a convex polygon and the convex hull of n random points, plus the related
// per-vertex tail probabilities.  Everything reduces to 1-d integrals with
// certified truncation bounds; abs_error_bound fields account for quadrature
// estimates and analytic tails together.

namespace hullfront {

// Tolerance knobs for all integrals in this module.  Defaults give overall
// absolute error bounds comfortably below 1e-6; the CLI surfaces them.
struct QuadratureConfig {
    double tail_eps = 1e-8;        // allowance for truncating outer integrals
    double outer_abs_tol = 1e-8;   // adaptive tolerance, outer integral
    double inner_abs_tol = 1e-11;  // adaptive tolerance, per-vertex integral
    double inner_tail_eps = 1e-12; // allowance for truncating inner integrals
    int max_panels = 4000;
};

// List of interior angles, each in (0,pi), at least 3 of them.  When built
// from a Polygon the exterior angles are additionally checked to close up
// (sum pi - alpha_i = 2*pi within 1e-9).
class AngleProfile {
  public:
    explicit AngleProfile(std::vector<double> angles);
    static AngleProfile from_polygon(const Polygon& q);

    const std::vector<double>& angles() const { return angles_; }
    std::size_t size() const { return angles_.size(); }

  private:
    std::vector<double> angles_;
};

// Limiting probability that the rescaled hull misses a vertex of interior
// angle alpha by more than r (boundary sampling, unit-intensity limit):
//     q(r, alpha) = r * integral_{ell(alpha)}^inf exp(-r*(y + h(y,alpha))) dy.
// The acute branch integrates [1, 1/cos(alpha)] adaptively and adds the
// clamp region in closed form exp(-r*(1 + 1/cos(alpha))); the obtuse branch
// uses a mesh accumulating at the singular endpoint and a bracketed tail.
QuadratureResult vertex_tail_q_result(double r, double alpha,
                                      const QuadratureConfig& cfg = {});
double vertex_tail_q(double r, double alpha, const QuadratureConfig& cfg = {});

// I(profile) = integral_0^inf [1 - prod_i (1 - q(r, alpha_i))] dr, truncated
// at R with sum_i exp(-R*ell_i)/ell_i <= tail_eps.
QuadratureResult shape_integral(const AngleProfile& profile,
                                const QuadratureConfig& cfg = {});

// Main limiting constant: lim n*E[hausdorff] = perimeter * shape_integral.
QuadratureResult limit_constant(const Polygon& q, const QuadratureConfig& cfg = {});

// gamma-th moment constant:
//     gamma * perimeter^gamma * integral_0^inf r^(gamma-1) [1 - prod(1-q_i)] dr.
// gamma = 1 reduces to limit_constant.
QuadratureResult moment_constant(double gamma, const Polygon& q,
                                 const QuadratureConfig& cfg = {});

// Inclusion-exclusion bound A(Q); the limit constant lies in [A/5, A] when
// every interior angle is >= pi/2.  Exact subset enumeration for M <= 20;
// equal angles use the closed form perimeter*sin(alpha)*H_M for any M.
// Throws HypothesisViolated if some angle < pi/2, ComplexityLimit when
// M > 20 with unequal angles.
double inclusion_exclusion_A(const Polygon& q);

// H_M by direct summation.
double harmonic_number(int m);

// H_M via the alternating binomial identity
//     sum_{k=1}^M (M choose k) (-1)^{k+1} / k,
// evaluated with exact 64-bit binomials split into integer and fractional
// parts (plain floating summation loses the 1e-9 target by M = 64).
double harmonic_alternating_sum(int m);

struct MgonConstant {
    QuadratureResult constant;  // unit-perimeter regular M-gon limit constant
    double ratio_mlogm = 0.0;   // value * M / log M, bounded over the sweep
};

// Limit constant of the regular M-gon with unit perimeter, M >= 4.
MgonConstant regular_mgon_constant(int m, const QuadratureConfig& cfg = {});

// Per-vertex limiting tail for interior (area) sampling at scale sqrt(n):
// p(t, alpha, area) depends on t only through c = t^2/(2*area).  The
// obtuse branch substitutes z = c*tan(angle) to tame the tan blow-up at
// pi/2; values are clamped into [0,1] only within 1e-9 slack.
double bhb_vertex_p(double t, double alpha, double area,
                    const QuadratureConfig& cfg = {});

// lim sqrt(n)*E[hausdorff] for interior sampling:
//     integral_0^inf [1 - prod_i (1 - p_i(t))] dt,
// truncated where the certified bound p_i <= 3*exp(-t^2*tan(alpha_i/2)/(2*area))
// makes the remainder negligible.
QuadratureResult interior_limit_expectation(const Polygon& q,
                                            const QuadratureConfig& cfg = {});

// Smooth-body constant specialized to the circle of the given radius with
// uniform boundary density: curvature 1/radius, density 1/(2*pi*radius),
// giving pi^2*radius/2 at the (n/log n)^2 scaling.
double disk_constant(double radius);

}  // namespace hullfront
