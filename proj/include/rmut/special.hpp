#pragma once

namespace rmut {

/// ln(erfc(x)) over the full double range; switches to the asymptotic series
/// of the complementary function where erfc itself underflows.
double log_erfc(double x);

/// ln(0.5*(erf(b) - erf(a))) for b >= a, stable when both arguments sit far
/// out in the same tail. Returns -inf when the difference is identically 0.
double log_half_erf_diff(double a, double b);

}  // namespace rmut
