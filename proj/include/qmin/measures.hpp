#pragma once

// Measurement-induced nonlocality (one- and two-sided), geometric discord
// (one- and two-sided) and an entropic two-sided discord bound.

#include <optional>
#include <string>
#include <vector>

#include "qmin/measurements.hpp"
#include "qmin/optimize.hpp"
#include "qmin/states.hpp"

namespace qmin {

enum class Method { ClosedForm, CorrelationMatrix, Optimized, Oracle };
enum class BoundKind { Exact, Lower, Upper };

[[nodiscard]] std::string to_string(Method m);
[[nodiscard]] std::string to_string(BoundKind b);

struct Diagnostics {
    std::size_t starts = 0;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    std::size_t best_start = 0;
    std::vector<double> best_trace;
    std::vector<std::size_t> group_dims_a;  ///< empty when side A is unmeasured
    std::vector<std::size_t> group_dims_b;
    double degeneracy_tol = kDefaultDegeneracyTol;
    std::uint64_t seed = 0;
    bool heuristic = false;
};

struct MeasureResult {
    double value = 0;
    std::optional<ProjectiveMeasurement> argmeasure;
    Method method = Method::Optimized;
    /// Exact for closed forms; Lower for maximizations (MiN) and Upper for
    /// minimizations (discords) found by local search.
    BoundKind bound = BoundKind::Exact;
    Diagnostics diagnostics;
};

/// max ||rho - Pi(rho)||^2 over bases that leave the chosen marginal
/// invariant. Exact (closed_form) when that marginal is nondegenerate.
[[nodiscard]] MeasureResult min_one_sided(const DensityMatrix& rho, Side side,
                                          const OptimizerOptions& opts = {});

/// Same over product bases leaving both marginals invariant, parameters of
/// both sides searched jointly.
[[nodiscard]] MeasureResult min_two_sided(const DensityMatrix& rho,
                                          const OptimizerOptions& opts = {});

/// 1 - sum_k lambda_k^4. This is the one-sided value for any pure state and
/// the two-sided value when the Schmidt coefficients are distinct; equal
/// coefficients leave room for a B basis unbiased to the A basis, and then
/// the two-sided value is larger.
[[nodiscard]] double min_pure_closed_form(const PureState& psi);

/// min over all bases of the chosen side of ||rho - Pi(rho)||^2, searched
/// with the correlation-matrix objective and re-evaluated directly at the
/// reported basis.
[[nodiscard]] MeasureResult gmqd_one_sided(const DensityMatrix& rho, Side side,
                                           const OptimizerOptions& opts = {});

[[nodiscard]] MeasureResult gmqd_two_sided(const DensityMatrix& rho,
                                           const OptimizerOptions& opts = {});

/// S(rho_A) + S(rho_B) - S(rho), in bits.
[[nodiscard]] double mutual_information(const DensityMatrix& rho);

/// Classical mutual information of a joint distribution laid out m x n
/// row-major (index i*n + j).
[[nodiscard]] double classical_mutual_information(const RealVector& joint, Dims dims);

/// I(rho) minus the best post-measurement mutual information found over
/// product bases. Always an upper bound and flagged heuristic.
[[nodiscard]] MeasureResult entropic_discord_two_sided(const DensityMatrix& rho,
                                                       const OptimizerOptions& opts = {});

} // namespace qmin
