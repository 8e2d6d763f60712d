#pragma once

// Two operator decompositions of a bipartite state:
//  * rho = sum_ij c_ij X_i (x) Y_j in Hermitian HS-orthonormal bases, with the
//    measurement matrices A, B that turn pinching into matrix algebra;
//  * rho = sum_ij E_ij (x) B_ij = sum_kl A_kl (x) F_kl over matrix units.

#include <vector>

#include "qmin/measurements.hpp"
#include "qmin/states.hpp"

namespace qmin {

/// I/sqrt(d) followed by the generalized Gell-Mann matrices scaled to
/// Tr(X_i X_j) = delta_ij: for each pair j < k the symmetric then the
/// antisymmetric element, then the d - 1 diagonal elements.
[[nodiscard]] std::vector<ComplexMatrix> gell_mann_basis(std::size_t d);

struct OperatorBasisDecomposition {
    std::vector<ComplexMatrix> x;  ///< m^2 operators on H_A
    std::vector<ComplexMatrix> y;  ///< n^2 operators on H_B
    RealMatrix c;                  ///< m^2 x n^2

    [[nodiscard]] ComplexMatrix reconstruct() const;
};

struct MeasurementMatrices {
    RealMatrix a;  ///< m x m^2, a_ki = Tr(|k><k| X_i)
    RealMatrix b;  ///< n x n^2, b_lj = Tr(|l'><l'| Y_j)
};

enum class PinchMode { OneSidedA, OneSidedB, TwoSided };

/// Coefficients in the canonical basis. Throws ValidationError(NotHermitian)
/// if any c_ij has imaginary part above 1e-10.
[[nodiscard]] OperatorBasisDecomposition correlation_matrix(const DensityMatrix& rho);

/// Row k holds the coordinates of |k><k| (basis column k) in `ops`.
[[nodiscard]] RealMatrix projector_coordinates(const ComplexMatrix& basis,
                                               const std::vector<ComplexMatrix>& ops);

[[nodiscard]] MeasurementMatrices measurement_matrices(const ProjectiveMeasurement& pm,
                                                       const OperatorBasisDecomposition& dec);

/// Tr(CC^t) minus the retained weight: Tr(ACC^tA^t), Tr(CB^tBC^t) or
/// Tr(ACB^tBC^tA^t). The unused matrix may be empty.
[[nodiscard]] double pinch_objective_from_matrices(const RealMatrix& c, const RealMatrix& a,
                                                   const RealMatrix& b, PinchMode mode);

struct GmqdBound {
    double value = 0;      ///< raw, not clamped
    bool negative = false;
    double trace_cct = 0;
    RealVector eigenvalues;  ///< of CC^t, descending
    std::size_t terms = 0;   ///< how many leading eigenvalues were subtracted
};

/// Tr(CC^t) minus the top m (one-sided A), top n (one-sided B) or
/// top min(m, n) (two-sided) eigenvalues of CC^t.
[[nodiscard]] GmqdBound gmqd_lower_bound(const DensityMatrix& rho, PinchMode mode);

enum class BlockDirection { ByA, ByB };

struct BlockDecomposition {
    BlockDirection direction = BlockDirection::ByA;
    std::size_t count = 0;      ///< blocks per index (m for ByA, n for ByB)
    std::size_t block_dim = 0;  ///< n for ByA, m for ByB
    std::vector<ComplexMatrix> blocks;  ///< row-major over (i, j)

    [[nodiscard]] const ComplexMatrix& block(std::size_t i, std::size_t j) const {
        return blocks.at(i * count + j);
    }
    [[nodiscard]] ComplexMatrix reassemble() const;
};

/// Blocks against the computational basis of the indexing side, or against
/// `basis` (columns) when given.
[[nodiscard]] BlockDecomposition block_decomposition(const DensityMatrix& rho,
                                                     BlockDirection direction,
                                                     const ComplexMatrix* basis = nullptr);

} // namespace qmin
