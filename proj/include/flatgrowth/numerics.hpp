#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace flatgrowth::num {

/// n points from a to b inclusive, with the last point exactly b.
inline std::vector<double> linspace(double a, double b, int n) {
    if (n < 1) throw std::invalid_argument("linspace: n must be >= 1");
    std::vector<double> xs(n);
    if (n == 1) {
        xs[0] = a;
        return xs;
    }
    for (int i = 0; i < n; ++i)
        xs[i] = (i == n - 1) ? b : a + (b - a) * static_cast<double>(i) / (n - 1);
    return xs;
}

struct MinResult {
    double x = 0.0;
    double value = 0.0;
};

/// Bisection root finder for a continuous f with f(lo) and f(hi) of opposite
/// sign. Converges to relative interval width `rel_tol` (with a small absolute
/// floor so brackets touching zero terminate).
template <class F>
double bisect_root(F&& f, double lo, double hi, double rel_tol, int max_iter = 2000) {
    if (!(lo < hi)) throw std::invalid_argument("bisect_root: lo must be < hi");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw std::invalid_argument("bisect_root: no sign change in bracket");
    const bool lo_negative = flo < 0.0;
    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < max_iter; ++i) {
        const double scale = std::max(std::abs(lo), std::abs(hi));
        if (hi - lo <= rel_tol * scale + std::numeric_limits<double>::denorm_min()) break;
        mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval at machine resolution
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == lo_negative)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Golden-section minimization on [a, b]. Assumes f is unimodal there; if it
/// is not, the result is still one of the evaluated points with the smallest
/// value seen. Terminates when the interval width falls below
/// x_rel_tol * (|a| + |b|) (plus an absolute floor).
template <class F>
MinResult golden_min(F&& f, double a, double b, double x_rel_tol = 1e-10) {
    if (!(a <= b)) throw std::invalid_argument("golden_min: a must be <= b");
    constexpr double invphi = 0.6180339887498949;  // 1/phi
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    MinResult best = (f1 < f2) ? MinResult{x1, f1} : MinResult{x2, f2};
    while (b - a > x_rel_tol * (std::abs(a) + std::abs(b)) + 1e-300) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
        const MinResult cand = (f1 < f2) ? MinResult{x1, f1} : MinResult{x2, f2};
        if (cand.value < best.value) best = cand;
        if (x1 >= x2) break;  // machine resolution
    }
    return best;
}

/// Dense scan of n points on [a, b] followed by golden-section refinement of
/// the bracket around the best sample. Endpoint samples are kept, so an
/// extremum attained exactly at a sample is returned exactly.
template <class F>
MinResult scan_refine_min(F&& f, double a, double b, int n_scan, double x_rel_tol = 1e-10) {
    if (n_scan < 2) throw std::invalid_argument("scan_refine_min: n_scan must be >= 2");
    if (a == b) return {a, f(a)};
    MinResult best{a, f(a)};
    for (int i = 1; i < n_scan; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / (n_scan - 1);
        const double v = f(x);
        if (v < best.value) best = {x, v};
    }
    const double h = (b - a) / (n_scan - 1);
    const double lo = std::max(a, best.x - h);
    const double hi = std::min(b, best.x + h);
    const MinResult refined = golden_min(f, lo, hi, x_rel_tol);
    return refined.value < best.value ? refined : best;
}

/// Vertex of the parabola through (x0,y0), (x1,y1), (x2,y2). Falls back to the
/// middle point when the three are collinear or the vertex leaves [x0, x2].
inline MinResult quad_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double curv = (d12 - d01) / (x2 - x0);  // half the 2nd derivative
    if (curv == 0.0) return {x1, y1};
    // Vertex of the Newton-form interpolant y0 + d01(x-x0) + curv(x-x0)(x-x1).
    const double xv = 0.5 * ((x0 + x1) - d01 / curv);
    if (xv < x0 || xv > x2 || !std::isfinite(xv)) return {x1, y1};
    const double yv = y0 + d01 * (xv - x0) + curv * (xv - x0) * (xv - x1);
    return {xv, yv};
}

}  // namespace flatgrowth::num
