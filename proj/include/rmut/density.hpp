#pragma once

#include <string>
#include <variant>
#include <vector>

namespace rmut {

struct GaussianInit {
    double a0 = 1.0;  // inverse variance, > 0
    double m0 = 0.0;  // mean
};

struct UniformInit {
    double lo = 0.0;
    double hi = 1.0;
};

struct TabulatedInit {
    std::vector<double> x;  // sorted trait grid
    std::vector<double> f;  // nonnegative density samples
};

/// Which solver the density is being prepared for. The fixed-point mean
/// solver requires a positive initial mean; the closed Gaussian forms
/// accept any m0.
enum class SolverPath { general, fixed_point };

/// A validated initial density of unit mass. Construct via make_density()
/// or load_density_csv(); immutable afterwards and safe to share across
/// threads.
struct DensitySpec {
    std::variant<GaussianInit, UniformInit, TabulatedInit> family;
    double mass = 1.0;     // always 1 after validation
    double m0 = 0.0;       // first moment
    double rescale = 1.0;  // normalization factor applied to tabulated input

    const GaussianInit* gaussian() const { return std::get_if<GaussianInit>(&family); }
    const UniformInit* uniform() const { return std::get_if<UniformInit>(&family); }
    const TabulatedInit* tabulated() const { return std::get_if<TabulatedInit>(&family); }
};

DensitySpec make_density(const GaussianInit& g, SolverPath path = SolverPath::general);
DensitySpec make_density(const UniformInit& u, SolverPath path = SolverPath::general);
DensitySpec make_density(TabulatedInit tab, SolverPath path = SolverPath::general);

/// Reads a two-column CSV (x, f); a non-numeric first line is treated as a
/// header and skipped.
DensitySpec load_density_csv(const std::string& csv_path,
                             SolverPath path = SolverPath::general);

/// k-th raw moment, k in {0, 1, 2}.
double moment(const DensitySpec& spec, int k);

/// Pointwise value of the initial density. Jump points of the uniform
/// family return the half value (midpoint convention, shared with the
/// finite-difference oracle's initialization).
double density_value(const DensitySpec& spec, double x);

/// Smallest and largest trait with non-negligible density; used for
/// finite-difference domain checks.
struct SupportInterval {
    double lo;
    double hi;
};
SupportInterval effective_support(const DensitySpec& spec);

/// Evaluation handle for the cumulant generating function of the initial
/// data and its first three derivatives. z_max bounds the certified
/// argument range: infinite for the analytic families, finite for tabulated
/// data (largest z at which the weighted endpoint contribution of the
/// quadrature stays below 1e-10 of the integral).
struct CgfHandle {
    const DensitySpec* spec = nullptr;
    double z_max = 0.0;
    std::vector<double> weights;  // quadrature weights for tabulated data
};

CgfHandle make_cgf(const DensitySpec& spec);

/// Variant that trusts a previously computed z_max (skips the scan).
CgfHandle make_cgf(const DensitySpec& spec, double z_max);

/// C0^(order)(z) for order in {0, 1, 2, 3}, 0 <= z <= z_max.
double cgf0(const CgfHandle& h, double z, int order);

}  // namespace rmut
