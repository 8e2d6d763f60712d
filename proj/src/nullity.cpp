#include "qmin/nullity.hpp"

#include <algorithm>
#include <cmath>

#include "qmin/decompositions.hpp"
#include "qmin/error.hpp"

namespace qmin {
namespace {

double hs_norm(const ComplexMatrix& m) { return std::sqrt(hs_norm_sq(m)); }

// Tracks the worst residual and the first failing condition.
struct Verdict {
    explicit Verdict(double t) : tol(t) {}

    double tol;
    double max_residual = 0;
    NullityViolation violation = NullityViolation::None;
    std::optional<NullityWitness> witness;

    void check(double residual, NullityViolation kind, std::size_t i, std::size_t j, Side side) {
        max_residual = std::max(max_residual, residual);
        if (residual >= tol && violation == NullityViolation::None) {
            violation = kind;
            witness = NullityWitness{i, j, residual, side};
        }
    }

    NullityReport report() const {
        NullityReport r;
        r.is_zero = violation == NullityViolation::None;
        r.violation = violation;
        r.witness = witness;
        r.max_residual = max_residual;
        r.margin = tol - max_residual;
        r.tol = tol;
        return r;
    }
};

void check_tol(double tol) {
    if (!(tol > 0))
        throw ValidationError(ValidationKind::OutOfRange, "nullity tolerance must be positive");
}

// Group label of every eigenvector index.
std::vector<std::size_t> group_of(const HermitianEigensystem& es) {
    std::vector<std::size_t> label(static_cast<std::size_t>(es.eigenvalues.size()));
    for (std::size_t g = 0; g < es.groups.size(); ++g)
        for (std::size_t k = 0; k < es.groups[g].size; ++k)
            label[es.groups[g].first + k] = g;
    return label;
}

void one_sided_conditions(const DensityMatrix& rho, Side side, double group_tol, Verdict& v,
                          HermitianEigensystem& es_out) {
    es_out = eig_hermitian(rho.marginal(side), group_tol);
    const auto dir = side == Side::A ? BlockDirection::ByA : BlockDirection::ByB;
    const BlockDecomposition blocks = block_decomposition(rho, dir, &es_out.eigenvectors);
    const auto label = group_of(es_out);
    for (std::size_t i = 0; i < blocks.count; ++i)
        for (std::size_t j = i + 1; j < blocks.count; ++j) {
            v.check(hs_norm(blocks.block(i, j)), NullityViolation::NonCommutingBlocks, i, j, side);
            if (label[i] == label[j])
                v.check(hs_norm(blocks.block(i, i) - blocks.block(j, j)),
                        NullityViolation::DegeneracyConsistency, i, j, side);
        }
}

// Residual of the best scalar approximation c I to a square matrix.
double scalar_residual(const ComplexMatrix& m) {
    const Complex c = m.trace() / static_cast<double>(m.rows());
    ComplexMatrix d = m;
    d.diagonal().array() -= c;
    return hs_norm(d);
}

void block_operator_side(const BlockDecomposition& blocks, const HermitianEigensystem& es,
                   Side side, Verdict& v) {
    const std::size_t nb = blocks.blocks.size();
    for (std::size_t a = 0; a < nb; ++a) {
        const auto& x = blocks.blocks[a];
        v.check(hs_norm(x * x.adjoint() - x.adjoint() * x), NullityViolation::NonCommutingBlocks,
                a, a, side);
    }
    for (std::size_t a = 0; a < nb; ++a)
        for (std::size_t b = a + 1; b < nb; ++b) {
            const auto& x = blocks.blocks[a];
            const auto& y = blocks.blocks[b];
            v.check(hs_norm(x * y - y * x), NullityViolation::NonCommutingBlocks, a, b, side);
        }
    // Containment: each block compressed onto a marginal eigenspace is a
    // scalar there and has no component mixing two eigenspaces.
    for (std::size_t a = 0; a < nb; ++a) {
        const auto& x = blocks.blocks[a];
        for (std::size_t g = 0; g < es.groups.size(); ++g) {
            const ComplexMatrix vg = es.group_basis(g);
            v.check(scalar_residual(vg.adjoint() * x * vg),
                    NullityViolation::EigenspaceNotContained, a, g, side);
            for (std::size_t h = g + 1; h < es.groups.size(); ++h) {
                const ComplexMatrix vh = es.group_basis(h);
                v.check(hs_norm(vg.adjoint() * x * vh) + hs_norm(vh.adjoint() * x * vg),
                        NullityViolation::EigenspaceNotContained, a, g, side);
            }
        }
    }
}

} // namespace

std::string to_string(NullityViolation v) {
    switch (v) {
    case NullityViolation::None: return "none";
    case NullityViolation::NonCommutingBlocks: return "non_commuting_blocks";
    case NullityViolation::EigenspaceNotContained: return "eigenspace_not_contained";
    case NullityViolation::DegeneracyConsistency: return "degeneracy_consistency";
    }
    return "?";
}

NullityReport is_zero_min_one_sided(const DensityMatrix& rho, Side side, double tol,
                                    double group_tol) {
    check_tol(tol);
    Verdict v(tol);
    HermitianEigensystem es;
    one_sided_conditions(rho, side, group_tol, v, es);
    NullityReport r = v.report();
    if (r.is_zero) {
        NullityCertificate cert;
        (side == Side::A ? cert.basis_a : cert.basis_b) = es.eigenvectors;
        r.certificate = std::move(cert);
    }
    return r;
}

NullityReport is_zero_min_two_sided(const DensityMatrix& rho, double tol, double group_tol) {
    check_tol(tol);
    Verdict v(tol);
    HermitianEigensystem ea, eb;
    one_sided_conditions(rho, Side::A, group_tol, v, ea);
    one_sided_conditions(rho, Side::B, group_tol, v, eb);
    NullityReport r = v.report();
    if (!r.is_zero)
        return r;

    const Dims dims = rho.dims();
    NullityCertificate cert;
    cert.basis_a = ea.eigenvectors;
    cert.basis_b = eb.eigenvectors;
    const RealVector diag = product_basis_diagonal(rho.matrix(), dims, cert.basis_a, cert.basis_b);
    cert.p = Eigen::Map<const RealMatrix>(diag.data(), static_cast<Eigen::Index>(dims.m),
                                          static_cast<Eigen::Index>(dims.n));
    const ComplexMatrix w = kron(cert.basis_a, cert.basis_b);
    const ComplexMatrix rebuilt = w * diag.cast<Complex>().asDiagonal() * w.adjoint();
    cert.rebuild_residual = std::sqrt(hs_norm_sq(rebuilt - rho.matrix()));
    r.max_residual = std::max(r.max_residual, cert.rebuild_residual);
    r.margin = tol - r.max_residual;
    if (cert.rebuild_residual >= tol) {
        // Both one-sided conditions passing forces a diagonal table, so this
        // only fires near the tolerance boundary.
        r.is_zero = false;
        r.violation = NullityViolation::NonCommutingBlocks;
        r.witness = NullityWitness{0, 0, cert.rebuild_residual, Side::A};
        return r;
    }
    r.certificate = std::move(cert);
    return r;
}

NullityReport check_block_operators(const DensityMatrix& rho, double tol, double group_tol) {
    check_tol(tol);
    Verdict v(tol);
    const auto ea = eig_hermitian(rho.marginal(Side::A), group_tol);
    const auto eb = eig_hermitian(rho.marginal(Side::B), group_tol);
    // B_ij live on H_B and are tested against rho_B; A_kl against rho_A.
    block_operator_side(block_decomposition(rho, BlockDirection::ByA), eb, Side::B, v);
    block_operator_side(block_decomposition(rho, BlockDirection::ByB), ea, Side::A, v);
    return v.report();
}

DensityMatrix depolarize(const DensityMatrix& rho, double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw ValidationError(ValidationKind::OutOfRange, "depolarize: t must lie in [0, 1]");
    const auto d = static_cast<Eigen::Index>(rho.dims().total());
    const ComplexMatrix mixed = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
    return density_from_matrix(t * rho.matrix() + (1.0 - t) * mixed, rho.dims());
}

} // namespace qmin
