#include "rmut/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace rmut {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// erfc(x) ~ exp(-x^2) / (x sqrt(pi)) * sum_n (-1)^n (2n-1)!! / (2x^2)^n.
// Truncated where terms stop improving; for x >= 20 the relative error of
// the truncated series is far below double precision.
double log_erfc_asymptotic(double x) {
    const double inv2x2 = 1.0 / (2.0 * x * x);
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n <= 24; ++n) {
        term *= -static_cast<double>(2 * n - 1) * inv2x2;
        sum += term;
        if (std::abs(term) < 1e-18 * sum) break;
    }
    return -x * x - std::log(x * std::sqrt(std::numbers::pi)) + std::log(sum);
}

}  // namespace

double log_erfc(double x) {
    if (x < 20.0) return std::log(std::erfc(x));
    return log_erfc_asymptotic(x);
}

double log_half_erf_diff(double a, double b) {
    if (a > b) return kNegInf;
    if (a == b) return kNegInf;
    if (b <= 0.0) return log_half_erf_diff(-b, -a);  // erf is odd
    if (a < 0.0) {
        // Arguments straddle zero: plain difference has no cancellation.
        return std::log(0.5 * (std::erf(b) - std::erf(a)));
    }
    // 0 <= a < b: difference of complementary functions.
    if (a < 6.0) {
        const double v = 0.5 * (std::erfc(a) - std::erfc(b));
        if (v > 0.0) return std::log(v);
        return kNegInf;
    }
    // Both arguments deep in the tail: work on log scale.
    const double la = log_erfc(a);
    const double lb = log_erfc(b);
    const double d = lb - la;
    if (d < -745.0) return std::log(0.5) + la;  // second term underflows
    return std::log(0.5) + la + std::log1p(-std::exp(d));
}

}  // namespace rmut
