#pragma once

// Derivative-free multi-start maximization over a real parameter vector.
// Start 0 is the zero vector; the others are uniform in [-pi, pi]^k seeded
// from (seed, start index), so results do not depend on thread scheduling.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qmin/algebra.hpp"
#include "qmin/types.hpp"

namespace qmin {

struct OptimizerOptions {
    std::size_t starts = 32;
    std::size_t max_iterations = 400;  ///< per start
    double convergence_tol = 1e-9;     ///< on the spread of simplex values
    std::uint64_t seed = 0;
    double degeneracy_tol = kDefaultDegeneracyTol;
    std::size_t threads = 1;

    /// Throws ValidationError(OutOfRange) unless every field is positive.
    void validate() const;
};

struct SearchResult {
    RealVector params;
    double value = 0;
    std::size_t best_start = 0;
    std::size_t starts = 0;
    std::size_t iterations = 0;   ///< summed over starts
    std::size_t evaluations = 0;
    std::vector<double> best_trace;  ///< best value after each start, in start order
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead per start, restarted around the incumbent after each
/// convergence until a restart stops improving. Across starts the larger
/// value wins; values within convergence_tol go to the lower start index.
/// The winner is then refined with small simplices to near machine
/// precision, so `value` can exceed the last best_trace entry slightly.
/// A zero-dimensional problem is evaluated once.
[[nodiscard]] SearchResult maximize(const Objective& f, std::size_t dim,
                                    const OptimizerOptions& opts);

} // namespace qmin
