#pragma once

// Bipartite linear algebra on dense complex matrices: Hilbert-Schmidt
// geometry, partial trace and transpose, Hermitian eigensystems with
// explicit degeneracy grouping, Schmidt decomposition and entropy.

#include <cstddef>
#include <span>
#include <vector>

#include "qmin/types.hpp"

namespace qmin {

inline constexpr double kDefaultDegeneracyTol = 1e-8;
inline constexpr double kHermitianTol = 1e-10;

struct DegeneracyGroup {
    std::size_t first = 0;  ///< index of the first eigenvalue in the group
    std::size_t size = 0;
};

struct HermitianEigensystem {
    RealVector eigenvalues;      ///< descending
    ComplexMatrix eigenvectors;  ///< orthonormal columns, same order
    std::vector<DegeneracyGroup> groups;
    double group_tol = kDefaultDegeneracyTol;

    /// Columns spanning the eigenspace of group g.
    [[nodiscard]] ComplexMatrix group_basis(std::size_t g) const;
};

struct SchmidtDecomposition {
    RealVector coefficients;  ///< lambda_k > 0, descending
    ComplexMatrix left;       ///< m x r, orthonormal columns |k>
    ComplexMatrix right;      ///< n x r, orthonormal columns |k'>
};

/// Tr(M^dagger M). Requires a square matrix.
[[nodiscard]] double hs_norm_sq(const ComplexMatrix& m);

[[nodiscard]] ComplexMatrix partial_trace(const ComplexMatrix& rho, Dims dims,
                                          Side traced);

[[nodiscard]] ComplexMatrix partial_transpose(const ComplexMatrix& rho,
                                              Dims dims, Side side);

[[nodiscard]] ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

[[nodiscard]] bool is_hermitian(const ComplexMatrix& m,
                                double tol = kHermitianTol);

/// Largest |M - M^dagger| entry.
[[nodiscard]] double hermiticity_defect(const ComplexMatrix& m);

/// Eigensystem of a Hermitian matrix. Eigenvalues are sorted descending,
/// each eigenvector's largest-magnitude component is made real positive and
/// consecutive eigenvalues closer than group_tol share a degeneracy group.
[[nodiscard]] HermitianEigensystem eig_hermitian(
    const ComplexMatrix& h, double group_tol = kDefaultDegeneracyTol);

[[nodiscard]] SchmidtDecomposition schmidt_decompose(const ComplexVector& psi,
                                                     Dims dims);

/// -sum lambda log2 lambda over the spectrum of a density matrix.
[[nodiscard]] double von_neumann_entropy(const ComplexMatrix& rho);

/// Shannon entropy (bits) of a nonnegative weight vector.
[[nodiscard]] double shannon_entropy(std::span<const double> p);

/// Max over columns of |<c_i|c_j> - delta_ij|.
[[nodiscard]] double orthonormality_defect(const ComplexMatrix& basis);

/// Trace norm (sum of |eigenvalues|) of a Hermitian matrix.
[[nodiscard]] double trace_norm(const ComplexMatrix& h);

} // namespace qmin
