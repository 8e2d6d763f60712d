#include "qmin/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qmin/error.hpp"
#include "qmin/kernels/kernels.hpp"

namespace qmin {
namespace {

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols())
        throw DimensionError(std::string(what) + ": matrix is not square");
}

void require_bipartite(const ComplexMatrix& rho, Dims dims, const char* what) {
    const auto d = static_cast<Eigen::Index>(dims.total());
    if (dims.m == 0 || dims.n == 0 || rho.rows() != d || rho.cols() != d)
        throw DimensionError(std::string(what) + ": expected " +
                             std::to_string(dims.total()) + "x" +
                             std::to_string(dims.total()) + " matrix");
}

void fix_phase(ComplexMatrix& vecs) {
    for (Eigen::Index c = 0; c < vecs.cols(); ++c) {
        double best = 0.0;
        for (Eigen::Index r = 0; r < vecs.rows(); ++r)
            best = std::max(best, std::abs(vecs(r, c)));
        for (Eigen::Index r = 0; r < vecs.rows(); ++r) {
            const Complex v = vecs(r, c);
            if (std::abs(v) >= best - 1e-12) {
                const Complex phase = std::conj(v) / std::abs(v);
                vecs.col(c) *= phase;
                vecs(r, c) = Complex(std::abs(v), 0.0);
                break;
            }
        }
    }
}

} // namespace

ComplexMatrix HermitianEigensystem::group_basis(std::size_t g) const {
    const auto& grp = groups.at(g);
    return eigenvectors.middleCols(static_cast<Eigen::Index>(grp.first),
                                   static_cast<Eigen::Index>(grp.size));
}

double hs_norm_sq(const ComplexMatrix& m) {
    require_square(m, "hs_norm_sq");
    return kernels::sum_abs_sq({m.data(), static_cast<std::size_t>(m.size())});
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, Dims dims, Side traced) {
    require_bipartite(rho, dims, "partial_trace");
    const auto m = static_cast<Eigen::Index>(dims.m);
    const auto n = static_cast<Eigen::Index>(dims.n);
    if (traced == Side::B) {
        ComplexMatrix out = ComplexMatrix::Zero(m, m);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index k = 0; k < m; ++k)
                for (Eigen::Index j = 0; j < n; ++j)
                    out(i, k) += rho(i * n + j, k * n + j);
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index l = 0; l < n; ++l)
            for (Eigen::Index i = 0; i < m; ++i)
                out(j, l) += rho(i * n + j, i * n + l);
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, Dims dims, Side side) {
    require_bipartite(rho, dims, "partial_transpose");
    const auto m = static_cast<Eigen::Index>(dims.m);
    const auto n = static_cast<Eigen::Index>(dims.n);
    ComplexMatrix out(rho.rows(), rho.cols());
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < m; ++k)
                for (Eigen::Index l = 0; l < n; ++l) {
                    // <ij|rho^T|kl>: swap the transposed factor's indices.
                    const Eigen::Index r = side == Side::A ? k * n + j : i * n + l;
                    const Eigen::Index c = side == Side::A ? i * n + l : k * n + j;
                    out(i * n + j, k * n + l) = rho(r, c);
                }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k)
            out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
    return out;
}

double hermiticity_defect(const ComplexMatrix& m) {
    require_square(m, "hermiticity_defect");
    double worst = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i; j < m.cols(); ++j)
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    return worst;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

HermitianEigensystem eig_hermitian(const ComplexMatrix& h, double group_tol) {
    require_square(h, "eig_hermitian");
    if (!(group_tol > 0.0))
        throw ValidationError(ValidationKind::OutOfRange,
                              "degeneracy tolerance must be positive");
    if (!h.allFinite())
        throw ValidationError(ValidationKind::NonFinite, "eig_hermitian input");
    if (hermiticity_defect(h) > kHermitianTol)
        throw ValidationError(ValidationKind::NotHermitian, "eig_hermitian input");

    const Eigen::MatrixXcd hc = (h + h.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hc);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eig_hermitian: eigensolver did not converge");

    const auto d = h.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
        return solver.eigenvalues()(a) > solver.eigenvalues()(b);
    });

    HermitianEigensystem es;
    es.group_tol = group_tol;
    es.eigenvalues.resize(d);
    es.eigenvectors.resize(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        es.eigenvalues(k) = solver.eigenvalues()(order[static_cast<std::size_t>(k)]);
        es.eigenvectors.col(k) =
            solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
    }
    fix_phase(es.eigenvectors);

    for (std::size_t k = 0; k < static_cast<std::size_t>(d); ++k) {
        const auto ki = static_cast<Eigen::Index>(k);
        if (k > 0 && es.eigenvalues(ki - 1) - es.eigenvalues(ki) < group_tol)
            ++es.groups.back().size;
        else
            es.groups.push_back({k, 1});
    }
    return es;
}

SchmidtDecomposition schmidt_decompose(const ComplexVector& psi, Dims dims) {
    if (static_cast<std::size_t>(psi.size()) != dims.total() || dims.total() == 0)
        throw DimensionError("schmidt_decompose: vector length does not match dims");
    if (std::abs(psi.norm() - 1.0) > 1e-10)
        throw ValidationError(ValidationKind::NotNormalized,
                              "schmidt_decompose: |psi| = " + std::to_string(psi.norm()));

    const auto m = static_cast<Eigen::Index>(dims.m);
    const auto n = static_cast<Eigen::Index>(dims.n);
    Eigen::MatrixXcd coeff(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            coeff(i, j) = psi(i * n + j);

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(coeff,
                                           Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > 1e-12)
        ++rank;

    // coeff = U S V^dagger, so psi = sum_k s_k |u_k> (x) conj(v_k).
    SchmidtDecomposition out;
    out.coefficients = s.head(rank);
    out.left = svd.matrixU().leftCols(rank);
    out.right = svd.matrixV().leftCols(rank).conjugate();
    return out;
}

double shannon_entropy(std::span<const double> p) {
    double h = 0.0;
    for (double v : p)
        if (v > 0.0)
            h -= v * std::log2(v);
    return h;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
    require_square(rho, "von_neumann_entropy");
    if (std::abs(rho.trace().real() - 1.0) > 1e-10)
        throw ValidationError(ValidationKind::TraceNotOne, "von_neumann_entropy input");
    const auto es = eig_hermitian(rho);
    if (es.eigenvalues.minCoeff() < -1e-10)
        throw ValidationError(ValidationKind::Negative, "von_neumann_entropy input");
    return shannon_entropy({es.eigenvalues.data(),
                            static_cast<std::size_t>(es.eigenvalues.size())});
}

double orthonormality_defect(const ComplexMatrix& basis) {
    const ComplexMatrix gram = basis.adjoint() * basis;
    return (gram - ComplexMatrix::Identity(gram.rows(), gram.cols()))
        .cwiseAbs()
        .maxCoeff();
}

double trace_norm(const ComplexMatrix& h) {
    return eig_hermitian(h).eigenvalues.cwiseAbs().sum();
}

} // namespace qmin
