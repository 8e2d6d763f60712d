#pragma once

// Structural tests for zero measurement-induced nonlocality, two
// independent implementations of the two-sided test, and the closure
// operations (depolarizing, partial transpose) used to exercise them.

#include <optional>
#include <string>

#include "qmin/states.hpp"

namespace qmin {

enum class NullityViolation {
    None,
    NonCommutingBlocks,      ///< a block that must vanish or commute does not
    EigenspaceNotContained,  ///< a marginal eigenspace is split by some block
    DegeneracyConsistency,   ///< equal marginal weights, unequal conditionals
};

[[nodiscard]] std::string to_string(NullityViolation v);

struct NullityWitness {
    std::size_t i = 0;
    std::size_t j = 0;
    double residual = 0;  ///< HS norm of the offending quantity
    Side side = Side::A;
};

struct NullityCertificate {
    ComplexMatrix basis_a;  ///< marginal eigenbasis (columns)
    ComplexMatrix basis_b;  ///< empty for a one-sided report
    RealMatrix p;           ///< p_ij in those bases (two-sided only)
    double rebuild_residual = 0;
};

struct NullityReport {
    bool is_zero = false;
    NullityViolation violation = NullityViolation::None;
    std::optional<NullityWitness> witness;
    std::optional<NullityCertificate> certificate;
    double max_residual = 0;  ///< largest residual among all checked conditions
    double margin = 0;        ///< tol - max_residual; negative when nonzero
    double tol = 0;
};

/// Zero one-sided MiN: in the eigenbasis of the measured marginal, blocks
/// between distinct basis vectors vanish and the conditional blocks within
/// each eigenvalue group coincide. Within a group this is necessary and
/// sufficient, since the block matrix must be diagonal in every rotated basis.
[[nodiscard]] NullityReport is_zero_min_one_sided(const DensityMatrix& rho, Side side,
                                                  double tol,
                                                  double group_tol = kDefaultDegeneracyTol);

/// Conjunction of both one-sided tests, with the p_ij table read off in the
/// two marginal eigenbases and the state rebuilt from it as a cross-check.
[[nodiscard]] NullityReport is_zero_min_two_sided(const DensityMatrix& rho, double tol,
                                                  double group_tol = kDefaultDegeneracyTol);

/// Operator-condition test on the computational-basis blocks A_kl and B_ij:
/// every block normal, blocks pairwise commuting, and every eigenspace of
/// rho_B (rho_A) contained in an eigenspace of each B_ij (A_kl).
[[nodiscard]] NullityReport check_block_operators(const DensityMatrix& rho, double tol,
                                           double group_tol = kDefaultDegeneracyTol);

/// t rho + (1 - t) I / mn. Throws ValidationError(OutOfRange) unless t in [0, 1].
[[nodiscard]] DensityMatrix depolarize(const DensityMatrix& rho, double t);

} // namespace qmin
