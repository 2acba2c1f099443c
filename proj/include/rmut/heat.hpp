#pragma once

#include "rmut/density.hpp"

namespace rmut {

/// A density value carried together with its logarithm; log_value is the
/// primary representation (finite even where value underflows to 0).
struct LogValue {
    double log_value;
    double value;
};

/// Heat-equation evaluator for w_t = sigma2 * w_yy, w(0,.) = u0.
/// Gaussian and uniform data use closed forms; tabulated data fall back to
/// kernel convolution quadrature.
struct HeatEval {
    enum class Mode { closed_form, convolution };

    DensitySpec spec;
    double sigma2 = 1.0;
    Mode mode = Mode::closed_form;
};

HeatEval make_heat(const DensitySpec& spec, double sigma2);

/// w(t, y) in log-stable form; t >= 0.
LogValue heat_eval(const HeatEval& h, double t, double y);

}  // namespace rmut
