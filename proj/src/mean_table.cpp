#include "rmut/mean_table.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rmut/errors.hpp"
#include "rmut/numerics.hpp"

namespace rmut {
namespace {

void validate_args(const DensitySpec& spec, double sigma2, double T, int N) {
    if (!(spec.m0 > 0.0)) {
        throw SolverError(Err::NonPositiveMeanRequired,
                          "mean fixed point requires m0 > 0, got " + std::to_string(spec.m0));
    }
    if (!(sigma2 > 0.0)) throw std::invalid_argument("solve_mean: sigma2 must be > 0");
    if (!(T > 0.0)) throw std::invalid_argument("solve_mean: T must be > 0");
    if (N < 2) throw std::invalid_argument("solve_mean: N must be >= 2");
}

// One Picard sweep: q -> sqrt(m0^2 + 2 sigma2 t^2 + 2 int_0^t C0''(A_q(s)) ds).
// Scratch vectors are reused across sweeps.
void picard_sweep(const CgfHandle& cgf, double m0, double sigma2,
                  std::span<const double> t, std::span<const double> q, double dt,
                  std::vector<double>& scratch, std::vector<double>& q_next) {
    const std::size_t n = q.size();
    scratch.resize(n);
    q_next.resize(n);
    for (std::size_t k = 0; k < n; ++k) scratch[k] = 1.0 / q[k];
    cumtrapz(scratch, dt, q_next);  // q_next temporarily holds A
    if (std::isfinite(cgf.z_max) && q_next.back() > cgf.z_max) {
        throw SolverError(Err::ZRangeExceeded,
                          "Picard iterate needs C0'' at z = " + std::to_string(q_next.back()) +
                              " beyond certified z_max = " + std::to_string(cgf.z_max));
    }
    for (std::size_t k = 0; k < n; ++k) scratch[k] = cgf0(cgf, q_next[k], 2);
    cumtrapz(scratch, dt, q_next);  // now the cumulative C0'' integral
    for (std::size_t k = 0; k < n; ++k) {
        q_next[k] = std::sqrt(m0 * m0 + 2.0 * sigma2 * t[k] * t[k] + 2.0 * q_next[k]);
    }
}

void check_feasible_range(const CgfHandle& cgf, double m0, double sigma2, double T) {
    if (!std::isfinite(cgf.z_max)) return;
    // A(T) <= asinh(sqrt(2 sigma2) T / m0) / sqrt(2 sigma2) from ubar >= sqrt(m0^2 + 2 s2 t^2).
    const double c = std::sqrt(2.0 * sigma2);
    const double bound = std::asinh(c * T / m0) / c;
    if (bound > cgf.z_max) {
        throw SolverError(Err::ZRangeExceeded,
                          "horizon T = " + std::to_string(T) + " needs the CGF out to z = " +
                              std::to_string(bound) + " but tabulated data certify only z_max = " +
                              std::to_string(cgf.z_max));
    }
}

}  // namespace

double MeanTable::ubar_at(double tq) const { return lerp_uniform(ubar, dt(), tq); }
double MeanTable::A_at(double tq) const { return lerp_uniform(A, dt(), tq); }
double MeanTable::B_at(double tq) const { return lerp_uniform(B, dt(), tq); }
double MeanTable::D_at(double tq) const { return lerp_uniform(D, dt(), tq); }
double MeanTable::E_at(double tq) const { return lerp_uniform(E, dt(), tq); }

MeanTable solve_mean(const DensitySpec& spec, double sigma2, double T, int N, double tol,
                     int max_iter) {
    validate_args(spec, sigma2, T, N);
    const CgfHandle cgf = make_cgf(spec);
    check_feasible_range(cgf, spec.m0, sigma2, T);

    const double dt = T / N;
    const std::size_t n = static_cast<std::size_t>(N) + 1;
    MeanTable table;
    table.t.resize(n);
    for (std::size_t k = 0; k < n; ++k) table.t[k] = dt * static_cast<double>(k);
    table.t.back() = T;

    std::vector<double> q(n, spec.m0), q_next, scratch;
    bool converged = false;
    double resid = 0.0;
    int iters = 0;
    for (int it = 0; it < max_iter; ++it) {
        picard_sweep(cgf, spec.m0, sigma2, table.t, q, dt, scratch, q_next);
        resid = 0.0;
        for (std::size_t k = 0; k < n; ++k) resid = std::max(resid, std::abs(q_next[k] - q[k]));
        q.swap(q_next);
        iters = it + 1;
        if (resid < tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw SolverError(Err::NoConvergence,
                          "Picard iteration did not reach tol = " + std::to_string(tol) +
                              " in " + std::to_string(max_iter) +
                              " sweeps; last residual = " + std::to_string(resid));
    }

    table.ubar = std::move(q);
    table.A.resize(n);
    table.B.resize(n);
    table.D.resize(n);
    table.E.resize(n);
    scratch.resize(n);
    for (std::size_t k = 0; k < n; ++k) scratch[k] = 1.0 / table.ubar[k];
    cumtrapz(scratch, dt, table.A);
    cumtrapz(table.A, dt, table.B);
    for (std::size_t k = 0; k < n; ++k) scratch[k] = table.A[k] * table.A[k];
    cumtrapz(scratch, dt, table.D);
    for (std::size_t k = 0; k < n; ++k) scratch[k] = table.t[k] / table.ubar[k];
    cumtrapz(scratch, dt, table.E);

    table.sigma2 = sigma2;
    table.iter_count = iters;
    table.residual_norm = resid;
    table.spec = spec;
    table.cgf_z_max = cgf.z_max;
    table.tol = tol;
    return table;
}

std::vector<double> picard_trace(const DensitySpec& spec, double sigma2, double T, int N,
                                 int n_iters) {
    validate_args(spec, sigma2, T, N);
    const CgfHandle cgf = make_cgf(spec);
    check_feasible_range(cgf, spec.m0, sigma2, T);

    const double dt = T / N;
    const std::size_t n = static_cast<std::size_t>(N) + 1;
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k) t[k] = dt * static_cast<double>(k);

    std::vector<double> q(n, spec.m0), q_next, scratch, trace;
    trace.reserve(static_cast<std::size_t>(n_iters));
    for (int it = 0; it < n_iters; ++it) {
        picard_sweep(cgf, spec.m0, sigma2, t, q, dt, scratch, q_next);
        double d = 0.0;
        for (std::size_t k = 0; k < n; ++k) d = std::max(d, std::abs(q_next[k] - q[k]));
        trace.push_back(d);
        q.swap(q_next);
    }
    return trace;
}

std::vector<std::vector<double>> picard_iterates(const DensitySpec& spec, double sigma2,
                                                 double T, int N, int n_iters) {
    validate_args(spec, sigma2, T, N);
    const CgfHandle cgf = make_cgf(spec);
    check_feasible_range(cgf, spec.m0, sigma2, T);

    const double dt = T / N;
    const std::size_t n = static_cast<std::size_t>(N) + 1;
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k) t[k] = dt * static_cast<double>(k);

    std::vector<std::vector<double>> iterates;
    iterates.emplace_back(n, spec.m0);
    std::vector<double> q_next, scratch;
    for (int it = 0; it < n_iters; ++it) {
        picard_sweep(cgf, spec.m0, sigma2, t, iterates.back(), dt, scratch, q_next);
        iterates.push_back(q_next);
    }
    return iterates;
}

double mean_consistency(const MeanTable& table) {
    const CgfHandle cgf = table.cgf();
    double resid = 0.0;
    for (std::size_t k = 0; k < table.t.size(); ++k) {
        const double rhs = cgf0(cgf, table.A[k], 1) + 2.0 * table.sigma2 * table.E[k];
        resid = std::max(resid, std::abs(table.ubar[k] - rhs));
    }
    return resid;
}

double variance_of(const MeanTable& table, double t) {
    const double slack = 1e-9 * std::max(1.0, table.horizon());
    if (t < -slack || t > table.horizon() + slack) {
        throw SolverError(Err::TOutOfRange, "variance_of: t = " + std::to_string(t) +
                                                " outside [0, " + std::to_string(table.horizon()) +
                                                "]");
    }
    const CgfHandle cgf = table.cgf();
    return cgf0(cgf, table.A_at(t), 2) + 2.0 * table.sigma2 * t;
}

}  // namespace rmut
