#pragma once

#include <span>
#include <vector>

#include "rmut/density.hpp"

namespace rmut {

/// Converged mean-fitness table on a uniform time grid, together with every
/// cumulative integral the reconstruction formulas consume:
///   A(t) = int_0^t ds / ubar(s)
///   B(t) = int_0^t A(s) ds
///   D(t) = int_0^t A(s)^2 ds
///   E(t) = int_0^t s / ubar(s) ds
/// Immutable after solve_mean(); queries interpolate piecewise-linearly.
struct MeanTable {
    std::vector<double> t;
    std::vector<double> ubar;
    std::vector<double> A;
    std::vector<double> B;
    std::vector<double> D;
    std::vector<double> E;
    double sigma2 = 1.0;
    int iter_count = 0;
    double residual_norm = 0.0;

    DensitySpec spec;     // originating density (re-solves, CGF queries)
    double cgf_z_max = 0.0;
    double tol = 1e-10;

    double horizon() const { return t.back(); }
    double dt() const { return t[1] - t[0]; }

    double ubar_at(double tq) const;
    double A_at(double tq) const;
    double B_at(double tq) const;
    double D_at(double tq) const;
    double E_at(double tq) const;

    CgfHandle cgf() const { return make_cgf(spec, cgf_z_max); }
};

/// Picard solve of ubar(t) = sqrt(m0^2 + 2 sigma2 t^2 + 2 int_0^t C0''(A(s)) ds)
/// on N+1 uniform nodes covering [0, T], starting from the constant iterate m0.
/// Stops when the sup-norm of successive iterates drops below tol.
MeanTable solve_mean(const DensitySpec& spec, double sigma2, double T, int N,
                     double tol = 1e-10, int max_iter = 64);

/// Sup-norm distances between successive Picard iterates, n = 0 .. n_iters-1.
std::vector<double> picard_trace(const DensitySpec& spec, double sigma2, double T, int N,
                                 int n_iters);

/// The first n_iters+1 Picard iterates themselves (q_0 .. q_n on the grid);
/// row 0 is the constant start.
std::vector<std::vector<double>> picard_iterates(const DensitySpec& spec, double sigma2,
                                                 double T, int N, int n_iters);

/// Sup-norm residual of the independent mean identity
/// ubar(t) = C0'(A(t)) + 2 sigma2 E(t), which the Picard loop never uses.
double mean_consistency(const MeanTable& table);

/// V(t) = C0''(A(t)) + 2 sigma2 t with A interpolated from the table.
double variance_of(const MeanTable& table, double t);

}  // namespace rmut
