#pragma once

#include <stdexcept>
#include <string>

namespace rmut {

enum class Err {
    NonPositiveMass,
    MassNotNormalized,
    NegativeDensity,
    NonPositiveMeanRequired,
    UnsortedGrid,
    HeavyTail,
    ZOutOfRange,
    NoConvergence,
    ZRangeExceeded,
    NegativeTime,
    TOutOfRange,
    NonPositiveA0,
    PastBlowup,
    StiffnessAbort,
    HorizonExceeded,
    CflViolated,
    DomainTooSmall,
    TimeMissing,
};

const char* to_string(Err code);

/// Error raised by the solver layers; carries the module error code so
/// callers (and the CLI exit-code mapping) can dispatch on it.
class SolverError : public std::runtime_error {
public:
    SolverError(Err code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Err code() const noexcept { return code_; }

private:
    Err code_;
};

/// The Gaussian ODE cross-check hit the inverse-variance cap before the
/// requested horizon. Expected for data that concentrates in finite time.
class StiffnessAbort : public SolverError {
public:
    StiffnessAbort(double abort_time, const std::string& what)
        : SolverError(Err::StiffnessAbort, what), abort_time_(abort_time) {}

    double abort_time() const noexcept { return abort_time_; }

private:
    double abort_time_;
};

/// Invalid scenario/CLI configuration; carries the offending field path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error("invalid config at '" + field + "': " + what),
          field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace rmut
