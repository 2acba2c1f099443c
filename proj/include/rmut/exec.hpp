#pragma once

namespace rmut {

/// Execution policy for grid kernels. The OpenMP path is the production
/// default; the serial path is the reference implementation kept for tests
/// and benchmarks.
enum class Exec { serial, parallel };

}  // namespace rmut
