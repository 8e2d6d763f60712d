#pragma once

// Validated bipartite states and the named families used throughout the
// library: Werner, isotropic, Bell-diagonal, maximally entangled mixed,
// classical, CQ and QC states, plus seeded random ensembles.

#include <array>
#include <cstdint>
#include <vector>

#include "qmin/algebra.hpp"
#include "qmin/types.hpp"

namespace qmin {

inline constexpr double kStateTol = 1e-10;

class DensityMatrix {
public:
    [[nodiscard]] Dims dims() const noexcept { return dims_; }
    [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return matrix_; }
    [[nodiscard]] ComplexMatrix marginal(Side keep) const;
    [[nodiscard]] double purity() const;  ///< Tr(rho^2)

private:
    friend DensityMatrix density_from_matrix(const ComplexMatrix&, Dims);
    DensityMatrix(Dims dims, ComplexMatrix m) : dims_(dims), matrix_(std::move(m)) {}

    Dims dims_;
    ComplexMatrix matrix_;
};

class PureState {
public:
    [[nodiscard]] Dims dims() const noexcept { return dims_; }
    [[nodiscard]] const ComplexVector& vector() const noexcept { return vector_; }
    [[nodiscard]] const SchmidtDecomposition& schmidt() const noexcept { return schmidt_; }
    [[nodiscard]] DensityMatrix density() const;

private:
    friend PureState pure_state(const ComplexVector&, Dims);
    PureState(Dims d, ComplexVector v, SchmidtDecomposition s)
        : dims_(d), vector_(std::move(v)), schmidt_(std::move(s)) {}

    Dims dims_;
    ComplexVector vector_;
    SchmidtDecomposition schmidt_;
};

struct ClassicalSpectrum {
    RealMatrix p;             ///< m x n probabilities p_ij
    ComplexMatrix basis_a;    ///< columns |i>
    ComplexMatrix basis_b;    ///< columns |j'>
};

/// Validates and Hermitizes a candidate state. Throws ValidationError with
/// NotHermitian / TraceNotOne / Negative, or DimensionError.
[[nodiscard]] DensityMatrix density_from_matrix(const ComplexMatrix& m, Dims dims);

[[nodiscard]] PureState pure_state(const ComplexVector& psi, Dims dims);

/// Werner state on m (x) m; marginals are I/m for every x.
[[nodiscard]] DensityMatrix werner(std::size_t m, double x);

/// Isotropic state on m (x) m.
[[nodiscard]] DensityMatrix isotropic(std::size_t m, double x);

/// (1/4)(I + sum_i c_i sigma_i (x) sigma_i).
[[nodiscard]] DensityMatrix bell_diagonal(const std::array<double, 3>& c);

/// Mixture of K maximally entangled pure states whose B supports are the
/// consecutive disjoint blocks {k*m, ..., k*m + m - 1} of the computational basis.
[[nodiscard]] DensityMatrix max_entangled_mixed(std::size_t m, std::size_t n,
                                                std::span<const double> p);

[[nodiscard]] DensityMatrix classical_state(const ClassicalSpectrum& spec);

/// sum_i p_i |i><i| (x) rho_i^B.
[[nodiscard]] DensityMatrix cq_state(std::span<const double> p,
                                     const ComplexMatrix& basis_a,
                                     const std::vector<ComplexMatrix>& conditionals);

/// sum_j q_j rho_j^A (x) |j'><j'|.
[[nodiscard]] DensityMatrix qc_state(std::span<const double> q,
                                     const std::vector<ComplexMatrix>& conditionals,
                                     const ComplexMatrix& basis_b);

/// (1/sqrt m) sum_i |ii>.
[[nodiscard]] ComplexVector max_entangled_vector(std::size_t m, std::size_t n);

/// Haar-like mixed state: orthonormalized Gaussian columns with flat
/// Dirichlet weights. Deterministic for a given seed.
[[nodiscard]] DensityMatrix random_density(Dims dims, std::size_t rank,
                                           std::uint64_t seed);

[[nodiscard]] PureState random_pure(Dims dims, std::uint64_t seed);

/// Pauli matrices; index 0 is the identity.
[[nodiscard]] ComplexMatrix pauli(int index);

/// Normalized discrete Fourier basis (columns) of dimension d.
[[nodiscard]] ComplexMatrix fourier_basis(std::size_t d);

} // namespace qmin
