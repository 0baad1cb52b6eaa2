#pragma once

namespace laplace {

/// Selects the serial reference path or the OpenMP kernel of an operation.
/// Both paths produce identical results.
enum class Execution { Serial, Parallel };

/// Number of OpenMP threads available (1 when built without OpenMP).
int max_threads() noexcept;

} // namespace laplace
