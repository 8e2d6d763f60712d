#pragma once

// Rank-1 projective measurements (one- and two-sided), their pinching
// channels, the marginal-invariance constraint, and the parameterization
// of every basis that leaves a marginal invariant.

#include <optional>
#include <span>
#include <vector>

#include "qmin/states.hpp"
#include "qmin/types.hpp"

namespace qmin {

class ProjectiveMeasurement {
public:
    /// Basis vectors are the columns. Throws ValidationError(NotOrthonormal).
    static ProjectiveMeasurement one_sided(Side side, ComplexMatrix basis);
    static ProjectiveMeasurement two_sided(ComplexMatrix basis_a, ComplexMatrix basis_b);

    [[nodiscard]] MeasuredSide side() const noexcept { return side_; }
    [[nodiscard]] const std::optional<ComplexMatrix>& basis_a() const noexcept { return basis_a_; }
    [[nodiscard]] const std::optional<ComplexMatrix>& basis_b() const noexcept { return basis_b_; }
    [[nodiscard]] bool touches(Side s) const noexcept {
        return s == Side::A ? basis_a_.has_value() : basis_b_.has_value();
    }

private:
    ProjectiveMeasurement() = default;

    MeasuredSide side_ = MeasuredSide::AB;
    std::optional<ComplexMatrix> basis_a_;
    std::optional<ComplexMatrix> basis_b_;
};

struct EigenGroup {
    double eigenvalue = 0;
    ComplexMatrix basis;  ///< orthonormal columns spanning the eigenspace
    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(basis.cols()); }
};

/// All bases that refine the eigenspaces of a marginal.
struct FeasibleFamily {
    Side side = Side::A;
    std::vector<EigenGroup> groups;
    std::size_t free_parameter_count = 0;  ///< sum of d^2 over groups with d > 1
    double group_tol = kDefaultDegeneracyTol;

    [[nodiscard]] std::size_t dim() const;
    /// Exactly one measurement (up to phases) leaves the marginal invariant.
    [[nodiscard]] bool is_singleton() const noexcept { return free_parameter_count == 0; }
    [[nodiscard]] std::vector<std::size_t> group_dims() const;
};

/// Sum_k P_k op P_k for the rank-1 projectors onto the basis columns.
[[nodiscard]] ComplexMatrix pinch(const ComplexMatrix& op, const ComplexMatrix& basis);

[[nodiscard]] DensityMatrix apply_one_sided(const DensityMatrix& rho,
                                            const ProjectiveMeasurement& pm);
[[nodiscard]] DensityMatrix apply_two_sided(const DensityMatrix& rho,
                                            const ProjectiveMeasurement& pm);
/// Dispatches on the measurement's side.
[[nodiscard]] DensityMatrix apply_measurement(const DensityMatrix& rho,
                                              const ProjectiveMeasurement& pm);

/// HS distance between each touched marginal and its pinched version is < tol.
[[nodiscard]] bool leaves_marginal_invariant(const DensityMatrix& rho,
                                             const ProjectiveMeasurement& pm,
                                             double tol);

[[nodiscard]] FeasibleFamily feasible_family(const ComplexMatrix& marginal, Side side,
                                             double group_tol = kDefaultDegeneracyTol);

/// The whole d-dimensional space as a single group: every basis is reachable.
[[nodiscard]] FeasibleFamily unconstrained_family(std::size_t d, Side side);

/// exp(iG) where G is the Hermitian matrix packed in params: d diagonal reals
/// followed by (re, im) of G_jk for j < k in row-major order.
[[nodiscard]] ComplexMatrix unitary_from_params(std::size_t d,
                                                std::span<const double> params);

/// Applies exp(iG_g) to each degenerate group's basis and concatenates the
/// groups in family order. Throws DimensionError on a wrong parameter count.
[[nodiscard]] ComplexMatrix realize_measurement(const FeasibleFamily& family,
                                                std::span<const double> params);

/// ||rho - Pi(rho)||_2^2 for the pinching in basis_a and/or basis_b (pass
/// nullptr for an unmeasured side). Sums the removed entries of the rotated
/// state directly, so the result is never negative.
[[nodiscard]] double pinch_distance_sq(const ComplexMatrix& rho, Dims dims,
                                       const ComplexMatrix* basis_a,
                                       const ComplexMatrix* basis_b);

/// Diagonal of (U (x) V)^dagger rho (U (x) V), i.e. the joint outcome
/// distribution of a two-sided measurement.
[[nodiscard]] RealVector product_basis_diagonal(const ComplexMatrix& rho, Dims dims,
                                                const ComplexMatrix& basis_a,
                                                const ComplexMatrix& basis_b);

} // namespace qmin
