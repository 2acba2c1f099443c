#include "rmut/heat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "rmut/errors.hpp"
#include "rmut/numerics.hpp"
#include "rmut/special.hpp"

namespace rmut {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kSmallTime = 1e-6;  // below this the kernel is narrower than any grid

LogValue from_log(double lw) { return {lw, std::exp(lw)}; }

LogValue from_value(double v) {
    return {v > 0.0 ? std::log(v) : kNegInf, v};
}

// Convolution of tabulated data against the heat kernel of sd s = sqrt(2 sigma2 t).
// Quadrature nodes are the samples inside a +-10 s window around y, refined to
// at most s/8 spacing; terms are accumulated with log-sum-exp so the result
// stays meaningful far below the underflow threshold.
LogValue convolve_tabulated(const TabulatedInit& tab, double sigma2, double t, double y) {
    const double s2k = 2.0 * sigma2 * t;            // kernel variance
    const double s = std::sqrt(s2k);
    const double half_window = 10.0 * s;
    const double lo = std::max(tab.x.front(), y - half_window);
    const double hi = std::min(tab.x.back(), y + half_window);
    if (!(hi > lo)) return {kNegInf, 0.0};

    const auto begin = std::lower_bound(tab.x.begin(), tab.x.end(), lo);
    const auto end = std::upper_bound(tab.x.begin(), tab.x.end(), hi);
    std::size_t i0 = static_cast<std::size_t>(begin - tab.x.begin());
    std::size_t i1 = static_cast<std::size_t>(end - tab.x.begin());
    if (i0 > 0) --i0;
    if (i1 < tab.x.size()) ++i1;
    if (i1 - i0 < 2) return {kNegInf, 0.0};

    const double max_step = s / 8.0;
    std::vector<double> xs;
    std::vector<double> fs;
    xs.reserve(2 * (i1 - i0));
    fs.reserve(2 * (i1 - i0));
    for (std::size_t i = i0; i + 1 < i1; ++i) {
        const double x_a = tab.x[i];
        const double x_b = tab.x[i + 1];
        const int parts = std::max(1, static_cast<int>(std::ceil((x_b - x_a) / max_step)));
        for (int p = 0; p < parts; ++p) {
            const double frac = static_cast<double>(p) / parts;
            xs.push_back(x_a + frac * (x_b - x_a));
            fs.push_back(tab.f[i] + frac * (tab.f[i + 1] - tab.f[i]));
        }
    }
    xs.push_back(tab.x[i1 - 1]);
    fs.push_back(tab.f[i1 - 1]);

    const double log_norm = -0.5 * std::log(2.0 * std::numbers::pi * s2k);
    std::vector<double> log_terms;
    log_terms.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (fs[i] <= 0.0) continue;
        const double w = (i == 0               ? 0.5 * (xs[1] - xs[0])
                          : i + 1 == xs.size() ? 0.5 * (xs[i] - xs[i - 1])
                                               : 0.5 * (xs[i + 1] - xs[i - 1]));
        const double d = y - xs[i];
        log_terms.push_back(std::log(w * fs[i]) + log_norm - d * d / (2.0 * s2k));
    }
    if (log_terms.empty()) return {kNegInf, 0.0};
    return from_log(logsumexp(log_terms));
}

}  // namespace

HeatEval make_heat(const DensitySpec& spec, double sigma2) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("make_heat: sigma2 must be > 0");
    HeatEval h;
    h.spec = spec;
    h.sigma2 = sigma2;
    h.mode = spec.tabulated() ? HeatEval::Mode::convolution : HeatEval::Mode::closed_form;
    return h;
}

LogValue heat_eval(const HeatEval& h, double t, double y) {
    if (t < 0.0) throw SolverError(Err::NegativeTime, "heat_eval: t = " + std::to_string(t));

    if (const auto* g = h.spec.gaussian()) {
        const double var = 1.0 / g->a0 + 2.0 * h.sigma2 * t;
        const double d = y - g->m0;
        return from_log(-0.5 * std::log(2.0 * std::numbers::pi * var) - d * d / (2.0 * var));
    }
    if (const auto* u = h.spec.uniform()) {
        if (t == 0.0) return from_value(density_value(h.spec, y));
        const double s = std::sqrt(4.0 * h.sigma2 * t);
        const double lw = log_half_erf_diff((u->lo - y) / s, (u->hi - y) / s)
                          - std::log(u->hi - u->lo);
        return from_log(lw);
    }
    if (t < kSmallTime) return from_value(density_value(h.spec, y));
    return convolve_tabulated(*h.spec.tabulated(), h.sigma2, t, y);
}

}  // namespace rmut
