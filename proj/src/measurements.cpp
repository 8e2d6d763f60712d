#include "qmin/measurements.hpp"

#include <cmath>
#include <string>

#include "qmin/error.hpp"
#include "qmin/kernels/kernels.hpp"

namespace qmin {
namespace {

constexpr double kBasisTol = 1e-10;

void require_basis(const ComplexMatrix& basis, const char* what) {
    if (basis.rows() != basis.cols() || basis.rows() == 0)
        throw DimensionError(std::string(what) + ": basis must be square");
    if (orthonormality_defect(basis) > kBasisTol)
        throw ValidationError(ValidationKind::NotOrthonormal, what);
}

void require_side_dim(const ComplexMatrix& basis, std::size_t d, const char* what) {
    if (static_cast<std::size_t>(basis.rows()) != d)
        throw DimensionError(std::string(what) + ": basis dimension " +
                             std::to_string(basis.rows()) + " does not match factor " +
                             std::to_string(d));
}

// (U (x) V)^dagger rho (U (x) V) through the kernel GEMMs.
ComplexMatrix rotate(const ComplexMatrix& rho, const ComplexMatrix& w) {
    const auto d = static_cast<std::size_t>(rho.rows());
    ComplexMatrix t(rho.rows(), rho.cols());
    ComplexMatrix out(rho.rows(), rho.cols());
    kernels::gemm_nn(d, d, d, rho.data(), w.data(), t.data());
    kernels::gemm_hn(d, d, d, w.data(), t.data(), out.data());
    return out;
}

ComplexMatrix frame(Dims dims, const ComplexMatrix* basis_a, const ComplexMatrix* basis_b) {
    const auto m = static_cast<Eigen::Index>(dims.m);
    const auto n = static_cast<Eigen::Index>(dims.n);
    const ComplexMatrix ua = basis_a ? *basis_a : ComplexMatrix::Identity(m, m);
    const ComplexMatrix ub = basis_b ? *basis_b : ComplexMatrix::Identity(n, n);
    return kron(ua, ub);
}

} // namespace

ProjectiveMeasurement ProjectiveMeasurement::one_sided(Side side, ComplexMatrix basis) {
    require_basis(basis, "ProjectiveMeasurement::one_sided");
    ProjectiveMeasurement pm;
    pm.side_ = side == Side::A ? MeasuredSide::A : MeasuredSide::B;
    (side == Side::A ? pm.basis_a_ : pm.basis_b_) = std::move(basis);
    return pm;
}

ProjectiveMeasurement ProjectiveMeasurement::two_sided(ComplexMatrix basis_a,
                                                       ComplexMatrix basis_b) {
    require_basis(basis_a, "ProjectiveMeasurement::two_sided (A)");
    require_basis(basis_b, "ProjectiveMeasurement::two_sided (B)");
    ProjectiveMeasurement pm;
    pm.side_ = MeasuredSide::AB;
    pm.basis_a_ = std::move(basis_a);
    pm.basis_b_ = std::move(basis_b);
    return pm;
}

std::size_t FeasibleFamily::dim() const {
    std::size_t d = 0;
    for (const auto& g : groups)
        d += g.dim();
    return d;
}

std::vector<std::size_t> FeasibleFamily::group_dims() const {
    std::vector<std::size_t> dims;
    dims.reserve(groups.size());
    for (const auto& g : groups)
        dims.push_back(g.dim());
    return dims;
}

ComplexMatrix pinch(const ComplexMatrix& op, const ComplexMatrix& basis) {
    if (op.rows() != basis.rows())
        throw DimensionError("pinch: operator and basis dimensions differ");
    ComplexMatrix out = ComplexMatrix::Zero(op.rows(), op.cols());
    for (Eigen::Index k = 0; k < basis.cols(); ++k) {
        const ComplexVector v = basis.col(k);
        const Complex amp = v.dot(op * v);  // <v|op|v>
        out += amp * v * v.adjoint();
    }
    return out;
}

DensityMatrix apply_one_sided(const DensityMatrix& rho, const ProjectiveMeasurement& pm) {
    if (pm.side() == MeasuredSide::AB)
        throw DimensionError("apply_one_sided: measurement is two-sided");
    const Dims dims = rho.dims();
    const bool on_a = pm.side() == MeasuredSide::A;
    const ComplexMatrix& basis = on_a ? *pm.basis_a() : *pm.basis_b();
    require_side_dim(basis, on_a ? dims.m : dims.n, "apply_one_sided");

    const ComplexMatrix w = frame(dims, on_a ? &basis : nullptr, on_a ? nullptr : &basis);
    ComplexMatrix r = rotate(rho.matrix(), w);
    const auto n = static_cast<Eigen::Index>(dims.n);
    for (Eigen::Index row = 0; row < r.rows(); ++row)
        for (Eigen::Index col = 0; col < r.cols(); ++col) {
            const bool keep = on_a ? (row / n == col / n) : (row % n == col % n);
            if (!keep)
                r(row, col) = 0.0;
        }
    return density_from_matrix(w * r * w.adjoint(), dims);
}

DensityMatrix apply_two_sided(const DensityMatrix& rho, const ProjectiveMeasurement& pm) {
    if (pm.side() != MeasuredSide::AB)
        throw DimensionError("apply_two_sided: measurement is one-sided");
    const Dims dims = rho.dims();
    require_side_dim(*pm.basis_a(), dims.m, "apply_two_sided (A)");
    require_side_dim(*pm.basis_b(), dims.n, "apply_two_sided (B)");
    const ComplexMatrix w = kron(*pm.basis_a(), *pm.basis_b());
    const RealVector diag = product_basis_diagonal(rho.matrix(), dims, *pm.basis_a(),
                                                   *pm.basis_b());
    return density_from_matrix(w * diag.cast<Complex>().asDiagonal() * w.adjoint(), dims);
}

DensityMatrix apply_measurement(const DensityMatrix& rho, const ProjectiveMeasurement& pm) {
    return pm.side() == MeasuredSide::AB ? apply_two_sided(rho, pm) : apply_one_sided(rho, pm);
}

bool leaves_marginal_invariant(const DensityMatrix& rho, const ProjectiveMeasurement& pm,
                               double tol) {
    for (Side s : {Side::A, Side::B}) {
        if (!pm.touches(s))
            continue;
        const ComplexMatrix& basis = s == Side::A ? *pm.basis_a() : *pm.basis_b();
        const ComplexMatrix marg = rho.marginal(s);
        if (marg.rows() != basis.rows())
            return false;
        if (std::sqrt(hs_norm_sq(marg - pinch(marg, basis))) >= tol)
            return false;
    }
    return true;
}

FeasibleFamily feasible_family(const ComplexMatrix& marginal, Side side, double group_tol) {
    const auto es = eig_hermitian(marginal, group_tol);
    FeasibleFamily fam;
    fam.side = side;
    fam.group_tol = group_tol;
    for (std::size_t g = 0; g < es.groups.size(); ++g) {
        EigenGroup grp;
        const auto& info = es.groups[g];
        grp.eigenvalue = es.eigenvalues.segment(static_cast<Eigen::Index>(info.first),
                                                static_cast<Eigen::Index>(info.size))
                             .mean();
        grp.basis = es.group_basis(g);
        if (info.size > 1)
            fam.free_parameter_count += info.size * info.size;
        fam.groups.push_back(std::move(grp));
    }
    return fam;
}

FeasibleFamily unconstrained_family(std::size_t d, Side side) {
    FeasibleFamily fam;
    fam.side = side;
    const auto di = static_cast<Eigen::Index>(d);
    fam.groups.push_back({0.0, ComplexMatrix::Identity(di, di)});
    fam.free_parameter_count = d > 1 ? d * d : 0;
    return fam;
}

ComplexMatrix unitary_from_params(std::size_t d, std::span<const double> params) {
    if (params.size() != d * d)
        throw DimensionError("unitary_from_params: expected " + std::to_string(d * d) +
                             " parameters");
    const auto di = static_cast<Eigen::Index>(d);
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(di, di);
    std::size_t p = 0;
    for (Eigen::Index k = 0; k < di; ++k)
        g(k, k) = params[p++];
    for (Eigen::Index j = 0; j < di; ++j)
        for (Eigen::Index k = j + 1; k < di; ++k) {
            const Complex v(params[p], params[p + 1]);
            p += 2;
            g(j, k) = v;
            g(k, j) = std::conj(v);
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
    const Eigen::VectorXcd phases =
        (es.eigenvalues().cast<Complex>() * Complex(0.0, 1.0)).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix realize_measurement(const FeasibleFamily& family,
                                  std::span<const double> params) {
    if (params.size() != family.free_parameter_count)
        throw DimensionError("realize_measurement: expected " +
                             std::to_string(family.free_parameter_count) +
                             " parameters, got " + std::to_string(params.size()));
    const auto d = static_cast<Eigen::Index>(family.dim());
    ComplexMatrix basis(d, d);
    Eigen::Index col = 0;
    std::size_t offset = 0;
    for (const auto& grp : family.groups) {
        const auto gd = static_cast<Eigen::Index>(grp.dim());
        if (gd > 1) {
            const std::size_t count = grp.dim() * grp.dim();
            basis.middleCols(col, gd) =
                grp.basis * unitary_from_params(grp.dim(), params.subspan(offset, count));
            offset += count;
        } else {
            basis.middleCols(col, gd) = grp.basis;
        }
        col += gd;
    }
    return basis;
}

double pinch_distance_sq(const ComplexMatrix& rho, Dims dims, const ComplexMatrix* basis_a,
                         const ComplexMatrix* basis_b) {
    if (basis_a)
        require_side_dim(*basis_a, dims.m, "pinch_distance_sq (A)");
    if (basis_b)
        require_side_dim(*basis_b, dims.n, "pinch_distance_sq (B)");
    const ComplexMatrix r = rotate(rho, frame(dims, basis_a, basis_b));
    const std::size_t d = dims.total();
    const std::size_t n = dims.n;
    double total = 0.0;
    for (std::size_t row = 0; row < d; ++row) {
        const Complex* rp = r.data() + row * d;
        if (basis_a && basis_b) {
            total += kernels::sum_abs_sq({rp, row});
            total += kernels::sum_abs_sq({rp + row + 1, d - row - 1});
        } else if (basis_a) {
            const std::size_t blk = row / n;
            total += kernels::sum_abs_sq({rp, blk * n});
            total += kernels::sum_abs_sq({rp + (blk + 1) * n, d - (blk + 1) * n});
        } else if (basis_b) {
            const std::size_t j = row % n;
            for (std::size_t col = 0; col < d; ++col)
                if (col % n != j)
                    total += std::norm(rp[col]);
        }
    }
    return total;
}

RealVector product_basis_diagonal(const ComplexMatrix& rho, Dims dims,
                                  const ComplexMatrix& basis_a, const ComplexMatrix& basis_b) {
    require_side_dim(basis_a, dims.m, "product_basis_diagonal (A)");
    require_side_dim(basis_b, dims.n, "product_basis_diagonal (B)");
    const ComplexMatrix w = kron(basis_a, basis_b);
    const auto d = static_cast<std::size_t>(w.rows());
    ComplexMatrix t(w.rows(), w.cols());
    kernels::gemm_nn(d, d, d, rho.data(), w.data(), t.data());
    RealVector diag(w.cols());
    for (Eigen::Index k = 0; k < w.cols(); ++k)
        diag(k) = w.col(k).dot(t.col(k)).real();
    return diag;
}

} // namespace qmin
