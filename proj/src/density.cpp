#include "rmut/density.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "rmut/errors.hpp"
#include "rmut/numerics.hpp"

namespace rmut {
namespace {

constexpr double kEndpointCeiling = 1e-12;  // admissibility proxy for fast-decaying tails
constexpr double kMassSlack = 1e-3;         // renormalize within this, reject beyond

double gauss_pdf(double a, double m, double x) {
    return std::sqrt(a / (2.0 * std::numbers::pi)) * std::exp(-0.5 * a * (x - m) * (x - m));
}

// Raw moments of tabulated data against the stored quadrature weights.
std::array<double, 4> tab_moments(const TabulatedInit& tab, const std::vector<double>& w) {
    std::array<double, 4> m{0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < tab.x.size(); ++i) {
        const double base = w[i] * tab.f[i];
        const double x = tab.x[i];
        m[0] += base;
        m[1] += base * x;
        m[2] += base * x * x;
        m[3] += base * x * x * x;
    }
    return m;
}

void check_positive_mean(const DensitySpec& spec, SolverPath path) {
    if (path == SolverPath::fixed_point && !(spec.m0 > 0.0)) {
        throw SolverError(Err::NonPositiveMeanRequired,
                          "fixed-point mean solver needs m0 > 0, got m0 = " +
                              std::to_string(spec.m0));
    }
}

// ln(sinh(w)/w) and derivatives of the uniform-family CGF in the overflow-free
// form q = exp(-2w). Series branch below |z| = 1e-3 avoids the removable
// singularity at w = 0.
double g_log_sinhc(double w) { return w - std::log(2.0 * w) + std::log1p(-std::exp(-2.0 * w)); }

double g1(double w) {
    const double q = std::exp(-2.0 * w);
    return (1.0 + q) / (1.0 - q) - 1.0 / w;
}

double g2(double w) {
    const double q = std::exp(-2.0 * w);
    const double om = 1.0 - q;
    return 1.0 / (w * w) - 4.0 * q / (om * om);
}

double g3(double w) {
    const double q = std::exp(-2.0 * w);
    const double om = 1.0 - q;
    return -2.0 / (w * w * w) + 8.0 * q * (1.0 + q) / (om * om * om);
}

double cgf_uniform(const UniformInit& u, double z, int order) {
    const double r = 0.5 * (u.hi - u.lo);
    const double c = 0.5 * (u.hi + u.lo);
    const double w = r * z;
    const bool series = std::abs(z) < 1e-3;
    switch (order) {
        case 0: {
            const double g = series ? w * w / 6.0 - std::pow(w, 4) / 180.0 + std::pow(w, 6) / 2835.0
                                    : g_log_sinhc(w);
            return c * z + g;
        }
        case 1: {
            const double g = series ? w / 3.0 - std::pow(w, 3) / 45.0 + 2.0 * std::pow(w, 5) / 945.0
                                    : g1(w);
            return c + r * g;
        }
        case 2: {
            const double g = series ? 1.0 / 3.0 - w * w / 15.0 + 2.0 * std::pow(w, 4) / 189.0
                                    : g2(w);
            return r * r * g;
        }
        case 3: {
            const double g = series ? -2.0 * w / 15.0 + 8.0 * std::pow(w, 3) / 189.0 : g3(w);
            return r * r * r * g;
        }
        default:
            throw std::invalid_argument("cgf0: order must be in {0,1,2,3}");
    }
}

// Exponentially-weighted quadrature moments of tabulated data, shifted so the
// dominant term is O(1) (no overflow for large z * x).
struct TiltedMoments {
    double log_m0;  // ln of the zeroth weighted moment
    double r1;      // ratio M1/M0
    double r2;      // M2/M0
    double r3;      // M3/M0
};

TiltedMoments tilted_moments(const TabulatedInit& tab, const std::vector<double>& w, double z) {
    double shift = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tab.x.size(); ++i) {
        if (tab.f[i] > 0.0) shift = std::max(shift, z * tab.x[i] + std::log(tab.f[i]));
    }
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (std::size_t i = 0; i < tab.x.size(); ++i) {
        if (tab.f[i] <= 0.0) continue;
        const double g = w[i] * std::exp(z * tab.x[i] + std::log(tab.f[i]) - shift);
        const double x = tab.x[i];
        s0 += g;
        s1 += g * x;
        s2 += g * x * x;
        s3 += g * x * x * x;
    }
    return {std::log(s0) + shift, s1 / s0, s2 / s0, s3 / s0};
}

double cgf_tabulated(const TabulatedInit& tab, const std::vector<double>& w, double z,
                     int order) {
    const TiltedMoments m = tilted_moments(tab, w, z);
    switch (order) {
        case 0:
            return m.log_m0;
        case 1:
            return m.r1;
        case 2:
            return m.r2 - m.r1 * m.r1;
        case 3:
            return m.r3 - 3.0 * m.r2 * m.r1 + 2.0 * m.r1 * m.r1 * m.r1;
        default:
            throw std::invalid_argument("cgf0: order must be in {0,1,2,3}");
    }
}

// Largest z at which the weighted right-endpoint contribution of the Simpson
// sum stays below 1e-10 of the integral. Scanned in 0.01 steps; when the last
// sample is exactly zero the last positive sample stands in for it.
double scan_z_max(const TabulatedInit& tab, const std::vector<double>& w) {
    std::size_t j = tab.x.size() - 1;
    while (j > 0 && tab.f[j] <= 0.0) --j;
    if (tab.f[j] <= 0.0) return 0.0;
    const double log_wf = std::log(w[j] * tab.f[j]);
    const double x_end = tab.x[j];
    double z_max = 0.0;
    for (double z = 0.01; z <= 200.0; z += 0.01) {
        const TiltedMoments m = tilted_moments(tab, w, z);
        if (log_wf + z * x_end >= m.log_m0 + std::log(1e-10)) break;
        z_max = z;
    }
    return z_max;
}

}  // namespace

DensitySpec make_density(const GaussianInit& g, SolverPath path) {
    if (!(g.a0 > 0.0)) {
        throw SolverError(Err::NonPositiveMass,
                          "gaussian family needs a0 > 0 for a normalizable density");
    }
    DensitySpec spec;
    spec.family = g;
    spec.mass = 1.0;
    spec.m0 = g.m0;
    check_positive_mean(spec, path);
    return spec;
}

DensitySpec make_density(const UniformInit& u, SolverPath path) {
    if (!(u.hi > u.lo)) {
        throw SolverError(Err::NonPositiveMass, "uniform family needs lo < hi");
    }
    DensitySpec spec;
    spec.family = u;
    spec.mass = 1.0;
    spec.m0 = 0.5 * (u.lo + u.hi);
    check_positive_mean(spec, path);
    return spec;
}

DensitySpec make_density(TabulatedInit tab, SolverPath path) {
    if (tab.x.size() != tab.f.size())
        throw std::invalid_argument("tabulated density: x and f sizes differ");
    if (tab.x.size() < 3)
        throw std::invalid_argument("tabulated density: need at least 3 samples");
    for (std::size_t i = 1; i < tab.x.size(); ++i) {
        if (!(tab.x[i] > tab.x[i - 1]) || !std::isfinite(tab.x[i])) {
            throw SolverError(Err::UnsortedGrid,
                              "tabulated x grid must be finite and strictly increasing");
        }
    }
    for (double v : tab.f) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw SolverError(Err::NegativeDensity, "tabulated density values must be >= 0");
    }

    const std::vector<double> w = integration_weights(tab.x);
    auto m = tab_moments(tab, w);
    if (!(m[0] > 0.0)) throw SolverError(Err::NonPositiveMass, "tabulated density has zero mass");
    if (std::abs(m[0] - 1.0) >= kMassSlack) {
        throw SolverError(Err::MassNotNormalized,
                          "tabulated mass " + std::to_string(m[0]) +
                              " deviates from 1 by more than 1e-3; refusing to rescale");
    }

    const double factor = 1.0 / m[0];
    for (double& v : tab.f) v *= factor;
    if (tab.f.front() >= kEndpointCeiling || tab.f.back() >= kEndpointCeiling) {
        throw SolverError(Err::HeavyTail,
                          "tabulated density endpoints must be below 1e-12; widen the grid");
    }

    DensitySpec spec;
    spec.m0 = m[1] * factor;
    spec.mass = 1.0;
    spec.rescale = factor;
    spec.family = std::move(tab);
    check_positive_mean(spec, path);
    return spec;
}

DensitySpec load_density_csv(const std::string& csv_path, SolverPath path) {
    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open density CSV: " + csv_path);
    TabulatedInit tab;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::string cell = line;
        std::replace(cell.begin(), cell.end(), ',', ' ');
        std::istringstream row(cell);
        double x, f;
        if (!(row >> x >> f)) {
            if (first) {
                first = false;  // header line
                continue;
            }
            throw std::runtime_error("malformed row in density CSV: " + line);
        }
        first = false;
        tab.x.push_back(x);
        tab.f.push_back(f);
    }
    return make_density(std::move(tab), path);
}

double moment(const DensitySpec& spec, int k) {
    if (k < 0 || k > 2) throw std::invalid_argument("moment: k must be in {0,1,2}");
    if (const auto* g = spec.gaussian()) {
        if (k == 0) return 1.0;
        if (k == 1) return g->m0;
        return 1.0 / g->a0 + g->m0 * g->m0;
    }
    if (const auto* u = spec.uniform()) {
        if (k == 0) return 1.0;
        if (k == 1) return 0.5 * (u->lo + u->hi);
        return (u->hi * u->hi + u->hi * u->lo + u->lo * u->lo) / 3.0;
    }
    const auto* tab = spec.tabulated();
    const std::vector<double> w = integration_weights(tab->x);
    const auto m = tab_moments(*tab, w);
    return m[static_cast<std::size_t>(k)];
}

double density_value(const DensitySpec& spec, double x) {
    if (const auto* g = spec.gaussian()) return gauss_pdf(g->a0, g->m0, x);
    if (const auto* u = spec.uniform()) {
        const double den = 1.0 / (u->hi - u->lo);
        const double eps = 1e-9 * std::max({1.0, std::abs(u->lo), std::abs(u->hi)});
        if (std::abs(x - u->lo) <= eps || std::abs(x - u->hi) <= eps) return 0.5 * den;
        return (x > u->lo && x < u->hi) ? den : 0.0;
    }
    const auto* tab = spec.tabulated();
    if (x <= tab->x.front() || x >= tab->x.back()) return 0.0;
    return lerp_sorted(tab->x, tab->f, x);
}

SupportInterval effective_support(const DensitySpec& spec) {
    if (const auto* g = spec.gaussian()) {
        const double sd = 1.0 / std::sqrt(g->a0);
        return {g->m0 - 7.0 * sd, g->m0 + 7.0 * sd};
    }
    if (const auto* u = spec.uniform()) return {u->lo, u->hi};
    const auto* tab = spec.tabulated();
    return {tab->x.front(), tab->x.back()};
}

CgfHandle make_cgf(const DensitySpec& spec) {
    CgfHandle h;
    h.spec = &spec;
    if (const auto* tab = spec.tabulated()) {
        h.weights = integration_weights(tab->x);
        h.z_max = scan_z_max(*tab, h.weights);
    } else {
        h.z_max = std::numeric_limits<double>::infinity();
    }
    return h;
}

CgfHandle make_cgf(const DensitySpec& spec, double z_max) {
    CgfHandle h;
    h.spec = &spec;
    h.z_max = z_max;
    if (const auto* tab = spec.tabulated()) h.weights = integration_weights(tab->x);
    return h;
}

double cgf0(const CgfHandle& h, double z, int order) {
    if (z < 0.0 || z > h.z_max * (1.0 + 1e-12)) {
        throw SolverError(Err::ZOutOfRange, "cgf argument z = " + std::to_string(z) +
                                                " outside [0, " + std::to_string(h.z_max) + "]");
    }
    const DensitySpec& spec = *h.spec;
    if (const auto* g = spec.gaussian()) {
        switch (order) {
            case 0: return g->m0 * z + z * z / (2.0 * g->a0);
            case 1: return g->m0 + z / g->a0;
            case 2: return 1.0 / g->a0;
            case 3: return 0.0;
            default: throw std::invalid_argument("cgf0: order must be in {0,1,2,3}");
        }
    }
    if (const auto* u = spec.uniform()) return cgf_uniform(*u, z, order);
    return cgf_tabulated(*spec.tabulated(), h.weights, z, order);
}

const char* to_string(Err code) {
    switch (code) {
        case Err::NonPositiveMass: return "NonPositiveMass";
        case Err::MassNotNormalized: return "MassNotNormalized";
        case Err::NegativeDensity: return "NegativeDensity";
        case Err::NonPositiveMeanRequired: return "NonPositiveMeanRequired";
        case Err::UnsortedGrid: return "UnsortedGrid";
        case Err::HeavyTail: return "HeavyTail";
        case Err::ZOutOfRange: return "ZOutOfRange";
        case Err::NoConvergence: return "NoConvergence";
        case Err::ZRangeExceeded: return "ZRangeExceeded";
        case Err::NegativeTime: return "NegativeTime";
        case Err::TOutOfRange: return "TOutOfRange";
        case Err::NonPositiveA0: return "NonPositiveA0";
        case Err::PastBlowup: return "PastBlowup";
        case Err::StiffnessAbort: return "StiffnessAbort";
        case Err::HorizonExceeded: return "HorizonExceeded";
        case Err::CflViolated: return "CflViolated";
        case Err::DomainTooSmall: return "DomainTooSmall";
        case Err::TimeMissing: return "TimeMissing";
    }
    return "UnknownError";
}

}  // namespace rmut
