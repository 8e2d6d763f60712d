#pragma once

// Brute-force baselines that share no search code with the measures module:
// an exhaustive Bloch-sphere grid for qubit factors, Haar sampling over the
// feasible family for any dimension, direct minimization over explicitly
// built CQ / classical states, and the discontinuity probe.

#include <cstdint>
#include <vector>

#include "qmin/measures.hpp"

namespace qmin {

enum class OracleMode { MinA, MinB, MinAB, GmqdA, GmqdAB };

[[nodiscard]] std::string to_string(OracleMode m);

struct GridSpec {
    /// Points per angle: theta_i = pi i / (res - 1), phi_j = 2 pi j / res.
    std::size_t resolution = 60;
};

/// For MiN modes the grid's pole is aligned with the marginal's Bloch vector,
/// so the eigenbasis is always a grid point; other points failing
/// leaves_marginal_invariant at 1e-9 are skipped. Measured factors must be
/// qubits (both factors for the two-sided modes), otherwise
/// UnsupportedDimension.
[[nodiscard]] MeasureResult grid_oracle(const DensityMatrix& rho, OracleMode mode,
                                        const GridSpec& spec = {});

/// Best of `samples` Haar-random feasible measurements (unconstrained for the
/// discord modes), evaluated through the channel. The computational and the
/// marginal eigenbases are always tried first.
[[nodiscard]] MeasureResult sampling_oracle(const DensityMatrix& rho, OracleMode mode,
                                            std::size_t samples, std::uint64_t seed);

enum class DirectMode { OneSidedA, TwoSided };

/// min ||rho - chi||^2 over CQ (one-sided) or classical (two-sided) states
/// chi built explicitly from sampled bases with the optimal weights. Same
/// candidate bases as sampling_oracle. Requires m, n <= 3.
[[nodiscard]] double gmqd_direct_oracle(const DensityMatrix& rho, DirectMode mode,
                                        std::size_t samples, std::uint64_t seed);

struct DiscontinuityProbeResult {
    std::size_t m = 2;
    double x = 0;
    double epsilon = 0;
    std::uint64_t seed = 0;  ///< recorded only; the construction is deterministic
    double trace_distance_between_sequences = 0;
    double n_ab_product = 0;   ///< perturbation diagonal in the computational bases
    double n_ab_unbiased = 0;  ///< B side rotated to the Fourier basis
    double min_gap = 0;
    ProjectiveMeasurement measurement_product;
    ProjectiveMeasurement measurement_unbiased;
};

/// Perturbs the Werner state rho_x by a nondegenerate product state sigma
/// and by its Fourier-rotated partner. Both perturbed states have
/// nondegenerate marginals, so each has a unique feasible measurement.
/// Throws ValidationError(OutOfRange) for epsilon outside (0, 1] and
/// NumericalError when a perturbed marginal is degenerate at the default
/// tolerance.
[[nodiscard]] DiscontinuityProbeResult discontinuity_probe(std::size_t m, double x,
                                                           double epsilon,
                                                           std::uint64_t seed = 0);

} // namespace qmin
