#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace rmut {

/// Trapezoid rule on a uniform grid with spacing dx.
inline double trapezoid(std::span<const double> y, double dx) {
    if (y.size() < 2) return 0.0;
    double s = 0.5 * (y.front() + y.back());
    for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
    return s * dx;
}

/// Trapezoid rule on a sorted, possibly non-uniform grid.
inline double trapezoid(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    return s;
}

/// Cumulative trapezoid with out[0] = 0, uniform spacing dx.
inline void cumtrapz(std::span<const double> y, double dx, std::span<double> out) {
    out[0] = 0.0;
    for (std::size_t i = 1; i < y.size(); ++i)
        out[i] = out[i - 1] + 0.5 * dx * (y[i] + y[i - 1]);
}

/// Composite quadrature weights for a sorted grid: Simpson when the grid is
/// uniform (3/8 rule absorbs an odd interval count), trapezoid otherwise.
inline std::vector<double> integration_weights(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<double> w(n, 0.0);
    if (n < 2) return w;

    const double dx = (x.back() - x.front()) / static_cast<double>(n - 1);
    bool uniform = true;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs((x[i] - x[i - 1]) - dx) > 1e-9 * std::max(1.0, std::abs(dx))) {
            uniform = false;
            break;
        }
    }

    if (!uniform || n < 4) {
        if (uniform && n == 3) {
            w[0] = dx / 3.0;
            w[1] = 4.0 * dx / 3.0;
            w[2] = dx / 3.0;
            return w;
        }
        for (std::size_t i = 1; i < n; ++i) {
            const double h = 0.5 * (x[i] - x[i - 1]);
            w[i - 1] += h;
            w[i] += h;
        }
        return w;
    }

    std::size_t intervals = n - 1;
    std::size_t simpson_end = intervals;          // index past the Simpson block
    const bool odd = (intervals % 2) != 0;
    if (odd) simpson_end = intervals - 3;         // leave three intervals for 3/8

    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
        w[i] += dx / 3.0;
        w[i + 1] += 4.0 * dx / 3.0;
        w[i + 2] += dx / 3.0;
    }
    if (odd) {
        const std::size_t i = simpson_end;
        w[i] += 3.0 * dx / 8.0;
        w[i + 1] += 9.0 * dx / 8.0;
        w[i + 2] += 9.0 * dx / 8.0;
        w[i + 3] += 3.0 * dx / 8.0;
    }
    return w;
}

/// Piecewise-linear interpolation on a sorted grid; clamps outside the range.
inline double lerp_sorted(std::span<const double> x, std::span<const double> y, double xq) {
    if (xq <= x.front()) return y.front();
    if (xq >= x.back()) return y.back();
    const auto it = std::upper_bound(x.begin(), x.end(), xq);
    const std::size_t i = static_cast<std::size_t>(it - x.begin());
    const double s = (xq - x[i - 1]) / (x[i] - x[i - 1]);
    return y[i - 1] + s * (y[i] - y[i - 1]);
}

/// Piecewise-linear interpolation on the uniform grid t_k = k*dt; clamps.
inline double lerp_uniform(std::span<const double> y, double dt, double tq) {
    if (tq <= 0.0) return y.front();
    const double pos = tq / dt;
    const std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= y.size()) return y.back();
    const double s = pos - static_cast<double>(i);
    return y[i] + s * (y[i + 1] - y[i]);
}

/// log(sum exp(l_i)) over a list of log-terms; -inf input entries are skipped.
inline double logsumexp(std::span<const double> l) {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : l) m = std::max(m, v);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double v : l) s += std::exp(v - m);
    return m + std::log(s);
}

}  // namespace rmut
