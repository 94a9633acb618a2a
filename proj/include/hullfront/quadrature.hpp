#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "hullfront/errors.hpp"

// Adaptive Gauss(7)/Kronrod(15) quadrature over a finite interval or an
// explicit initial mesh.  Splitting order is deterministic (largest error
// estimate first, ties broken by panel creation index), so results are
// bit-reproducible for a given integrand and tolerance.

namespace hullfront {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_bound = 0.0;  // certified estimate, includes all panels
    std::uint64_t evaluations = 0;
};

namespace detail {

// 15-point Kronrod nodes on [-1,1] (positive half) and the matching weights;
// the embedded 7-point Gauss rule sits at kXgk[1], kXgk[3], kXgk[5], 0.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a = 0.0, b = 0.0;
    double value = 0.0;
    double err = 0.0;
    std::uint32_t id = 0;
};

// One G7/K15 evaluation on [a,b] with the standard sharpened error estimate
// (difference of rules damped by the scaled oscillation resasc).
template <class F>
Panel gk15(F& f, double a, double b, std::uint32_t id) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    const double fc = f(c);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = kWgk[7] * std::fabs(fc);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }

    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));

    const double habs = std::fabs(h);
    resabs *= habs;
    resasc *= habs;
    double err = std::fabs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / eps50)
        err = std::max(eps50 * resabs, err);

    return Panel{a, b, resk * h, err, id};
}

struct PanelWorse {
    bool operator()(const Panel& p, const Panel& q) const {
        if (p.err != q.err) return p.err < q.err;
        return p.id > q.id;  // older panel wins ties -> deterministic order
    }
};

}  // namespace detail

// Integrate f over the panels of an ascending mesh, splitting the worst panel
// until the summed error estimate drops below abs_tol or max_panels is hit.
// Zero-width mesh cells are skipped.  The result's abs_error_bound is the sum
// of the per-panel estimates actually achieved (it can exceed abs_tol when the
// panel budget runs out first).
template <class F>
QuadratureResult integrate_adaptive_mesh(F&& f, const std::vector<double>& mesh,
                                         double abs_tol, int max_panels = 4000) {
    if (mesh.size() < 2) throw DomainError("quadrature mesh needs at least two points");
    for (std::size_t i = 0; i + 1 < mesh.size(); ++i)
        if (!(mesh[i] <= mesh[i + 1]))
            throw DomainError("quadrature mesh must be ascending");
    if (!(abs_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");

    QuadratureResult out;
    std::priority_queue<detail::Panel, std::vector<detail::Panel>, detail::PanelWorse> heap;
    std::vector<detail::Panel> done;
    double active_err = 0.0;  // running total over heap + done (estimate only)

    std::uint32_t next_id = 0;
    for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
        if (!(mesh[i] < mesh[i + 1])) continue;
        detail::Panel p = detail::gk15(f, mesh[i], mesh[i + 1], next_id++);
        out.evaluations += 15;
        active_err += p.err;
        heap.push(p);
    }

    int panels = static_cast<int>(heap.size());
    while (active_err > abs_tol && !heap.empty() && panels < max_panels) {
        detail::Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            done.push_back(worst);  // interval exhausted at double precision
            continue;
        }
        active_err -= worst.err;
        detail::Panel left = detail::gk15(f, worst.a, mid, next_id++);
        detail::Panel right = detail::gk15(f, mid, worst.b, next_id++);
        out.evaluations += 30;
        active_err += left.err + right.err;
        heap.push(left);
        heap.push(right);
        ++panels;
    }

    while (!heap.empty()) {
        done.push_back(heap.top());
        heap.pop();
    }
    std::sort(done.begin(), done.end(),
              [](const detail::Panel& p, const detail::Panel& q) { return p.a < q.a; });

    double sum = 0.0, comp = 0.0, errsum = 0.0;
    for (const detail::Panel& p : done) {
        // Neumaier-compensated accumulation keeps the reduction order-exact
        double t = sum + p.value;
        if (std::fabs(sum) >= std::fabs(p.value))
            comp += (sum - t) + p.value;
        else
            comp += (p.value - t) + sum;
        sum = t;
        errsum += p.err;
    }
    out.value = sum + comp;
    out.abs_error_bound = errsum;
    return out;
}

template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                    int max_panels = 4000) {
    return integrate_adaptive_mesh(std::forward<F>(f), std::vector<double>{a, b},
                                   abs_tol, max_panels);
}

// Mesh on [a,b] whose cell widths shrink geometrically toward a:
// {a, a + w/2^levels, ..., a + w/2, b}.  Useful ahead of endpoint
// singularities that plain bisection would take many rounds to localize.
inline std::vector<double> geometric_mesh(double a, double b, int levels) {
    if (!(a < b)) throw DomainError("geometric_mesh needs a < b");
    if (levels < 1 || levels > 60) throw DomainError("geometric_mesh levels out of range");
    std::vector<double> mesh;
    mesh.reserve(static_cast<std::size_t>(levels) + 2);
    mesh.push_back(a);
    const double w = b - a;
    for (int j = levels; j >= 1; --j) {
        double x = a + std::ldexp(w, -j);
        if (x > mesh.back() && x < b) mesh.push_back(x);
    }
    mesh.push_back(b);
    return mesh;
}

}  // namespace hullfront
