#pragma once

#include <stdexcept>
#include <string>

namespace tropreg {

/// Malformed or out-of-range input (bad shapes, non-finite values, alpha outside (0,1), ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Exhaustive enumeration would exceed the configured candidate cap; the sampler is the way out.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The simplex engine failed to terminate or hit a numerical breakdown.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A sample-size calculator was asked for K when some cone has zero estimated angle.
class UnboundedSampleSize : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultTol = 1e-9;
inline constexpr std::size_t kDefaultCap = 10'000'000;

} // namespace tropreg
