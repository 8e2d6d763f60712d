#include "qmin/decompositions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmin/error.hpp"

namespace qmin {
namespace {

constexpr double kImagResidueTol = 1e-10;

// Re Tr(P X) with a residue check on the imaginary part.
double real_trace_product(const ComplexMatrix& p, const ComplexMatrix& x) {
    const Complex t = (p.transpose().cwiseProduct(x)).sum();
    if (std::abs(t.imag()) > kImagResidueTol)
        throw ValidationError(ValidationKind::NotHermitian,
                              "complex coefficient in Hermitian expansion (imag = " +
                                  std::to_string(t.imag()) + ")");
    return t.real();
}

} // namespace

std::vector<ComplexMatrix> gell_mann_basis(std::size_t d) {
    if (d < 2)
        throw DimensionError("gell_mann_basis: d must be >= 2");
    const auto di = static_cast<Eigen::Index>(d);
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<ComplexMatrix> ops;
    ops.reserve(d * d);
    ops.push_back(ComplexMatrix::Identity(di, di) / std::sqrt(static_cast<double>(d)));
    for (Eigen::Index j = 0; j < di; ++j)
        for (Eigen::Index k = j + 1; k < di; ++k) {
            ComplexMatrix sym = ComplexMatrix::Zero(di, di);
            sym(j, k) = sym(k, j) = s;
            ops.push_back(sym);
            ComplexMatrix anti = ComplexMatrix::Zero(di, di);
            anti(j, k) = Complex(0.0, -s);
            anti(k, j) = Complex(0.0, s);
            ops.push_back(anti);
        }
    for (Eigen::Index l = 1; l < di; ++l) {
        ComplexMatrix diag = ComplexMatrix::Zero(di, di);
        const double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
        for (Eigen::Index k = 0; k < l; ++k)
            diag(k, k) = norm;
        diag(l, l) = -static_cast<double>(l) * norm;
        ops.push_back(diag);
    }
    return ops;
}

ComplexMatrix OperatorBasisDecomposition::reconstruct() const {
    const auto dim = x.front().rows() * y.front().rows();
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) {
            const double cij = c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (cij != 0.0)
                out += cij * kron(x[i], y[j]);
        }
    return out;
}

OperatorBasisDecomposition correlation_matrix(const DensityMatrix& rho) {
    const Dims dims = rho.dims();
    OperatorBasisDecomposition dec;
    dec.x = gell_mann_basis(dims.m);
    dec.y = gell_mann_basis(dims.n);
    dec.c.resize(static_cast<Eigen::Index>(dec.x.size()),
                 static_cast<Eigen::Index>(dec.y.size()));
    const auto n = static_cast<Eigen::Index>(dims.n);
    const ComplexMatrix idn = ComplexMatrix::Identity(n, n);
    for (std::size_t i = 0; i < dec.x.size(); ++i) {
        // R_i = Tr_A[(X_i (x) I) rho], then c_ij = Tr(R_i Y_j).
        const ComplexMatrix r =
            partial_trace(kron(dec.x[i], idn) * rho.matrix(), dims, Side::A);
        for (std::size_t j = 0; j < dec.y.size(); ++j)
            dec.c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                real_trace_product(r, dec.y[j]);
    }
    return dec;
}

RealMatrix projector_coordinates(const ComplexMatrix& basis,
                                 const std::vector<ComplexMatrix>& ops) {
    if (ops.empty() || ops.front().rows() != basis.rows())
        throw DimensionError("projector_coordinates: basis and operators differ in dimension");
    RealMatrix out(basis.cols(), static_cast<Eigen::Index>(ops.size()));
    for (Eigen::Index k = 0; k < basis.cols(); ++k) {
        const ComplexVector v = basis.col(k);
        for (std::size_t i = 0; i < ops.size(); ++i)
            out(k, static_cast<Eigen::Index>(i)) = v.dot(ops[i] * v).real();
    }
    return out;
}

MeasurementMatrices measurement_matrices(const ProjectiveMeasurement& pm,
                                         const OperatorBasisDecomposition& dec) {
    if (pm.side() != MeasuredSide::AB)
        throw DimensionError("measurement_matrices: needs a two-sided measurement");
    return {projector_coordinates(*pm.basis_a(), dec.x),
            projector_coordinates(*pm.basis_b(), dec.y)};
}

double pinch_objective_from_matrices(const RealMatrix& c, const RealMatrix& a,
                                     const RealMatrix& b, PinchMode mode) {
    const bool use_a = mode != PinchMode::OneSidedB;
    const bool use_b = mode != PinchMode::OneSidedA;
    if (use_a && a.cols() != c.rows())
        throw DimensionError("pinch_objective_from_matrices: A and C shapes differ");
    if (use_b && b.cols() != c.cols())
        throw DimensionError("pinch_objective_from_matrices: B and C shapes differ");
    const double total = c.squaredNorm();
    switch (mode) {
    case PinchMode::OneSidedA: return total - (a * c).squaredNorm();
    case PinchMode::OneSidedB: return total - (c * b.transpose()).squaredNorm();
    case PinchMode::TwoSided: return total - (a * c * b.transpose()).squaredNorm();
    }
    return total;
}

GmqdBound gmqd_lower_bound(const DensityMatrix& rho, PinchMode mode) {
    const auto dec = correlation_matrix(rho);
    const Eigen::MatrixXd cct = dec.c * dec.c.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cct);
    GmqdBound out;
    out.eigenvalues = es.eigenvalues().reverse();
    out.trace_cct = cct.trace();
    const Dims dims = rho.dims();
    out.terms = mode == PinchMode::OneSidedA   ? dims.m
                : mode == PinchMode::OneSidedB ? dims.n
                                               : std::min(dims.m, dims.n);
    out.terms = std::min<std::size_t>(out.terms, static_cast<std::size_t>(out.eigenvalues.size()));
    out.value = out.trace_cct - out.eigenvalues.head(static_cast<Eigen::Index>(out.terms)).sum();
    out.negative = out.value < 0.0;
    return out;
}

ComplexMatrix BlockDecomposition::reassemble() const {
    const auto cnt = static_cast<Eigen::Index>(count);
    const auto bd = static_cast<Eigen::Index>(block_dim);
    const auto d = cnt * bd;
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < cnt; ++i)
        for (Eigen::Index j = 0; j < cnt; ++j) {
            const auto& blk = block(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            if (direction == BlockDirection::ByA) {
                out.block(i * bd, j * bd, bd, bd) = blk;
            } else {
                for (Eigen::Index r = 0; r < bd; ++r)
                    for (Eigen::Index s = 0; s < bd; ++s)
                        out(r * cnt + i, s * cnt + j) = blk(r, s);
            }
        }
    return out;
}

BlockDecomposition block_decomposition(const DensityMatrix& rho, BlockDirection direction,
                                       const ComplexMatrix* basis) {
    const Dims dims = rho.dims();
    const auto m = static_cast<Eigen::Index>(dims.m);
    const auto n = static_cast<Eigen::Index>(dims.n);
    ComplexMatrix r = rho.matrix();
    if (basis) {
        const bool by_a = direction == BlockDirection::ByA;
        if (basis->rows() != (by_a ? m : n))
            throw DimensionError("block_decomposition: basis dimension mismatch");
        const ComplexMatrix w = by_a ? kron(*basis, ComplexMatrix::Identity(n, n))
                                     : kron(ComplexMatrix::Identity(m, m), *basis);
        r = w.adjoint() * r * w;
    }

    BlockDecomposition dec;
    dec.direction = direction;
    if (direction == BlockDirection::ByA) {
        dec.count = dims.m;
        dec.block_dim = dims.n;
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j)
                dec.blocks.emplace_back(r.block(i * n, j * n, n, n));
    } else {
        dec.count = dims.n;
        dec.block_dim = dims.m;
        for (Eigen::Index k = 0; k < n; ++k)
            for (Eigen::Index l = 0; l < n; ++l) {
                ComplexMatrix blk(m, m);
                for (Eigen::Index i = 0; i < m; ++i)
                    for (Eigen::Index ip = 0; ip < m; ++ip)
                        blk(i, ip) = r(i * n + k, ip * n + l);
                dec.blocks.push_back(std::move(blk));
            }
    }
    return dec;
}

} // namespace qmin
