#include "qmin/states.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "qmin/error.hpp"
#include "qmin/random.hpp"

namespace qmin {
namespace {

void require_unit_interval(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0))
        throw ValidationError(ValidationKind::OutOfRange,
                              std::string(what) + ": x = " + std::to_string(x) +
                                  " outside [0, 1]");
}

void require_local_dim(std::size_t m, const char* what) {
    if (m < 2)
        throw ValidationError(ValidationKind::OutOfRange,
                              std::string(what) + ": dimension must be >= 2");
}

void require_probabilities(std::span<const double> p, const char* what) {
    double total = 0.0;
    for (double v : p) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw ValidationError(ValidationKind::BadProbabilities,
                                  std::string(what) + ": negative or non-finite weight");
        total += v;
    }
    if (p.empty() || std::abs(total - 1.0) > kStateTol)
        throw ValidationError(ValidationKind::BadProbabilities,
                              std::string(what) + ": weights sum to " +
                                  std::to_string(total));
}

void require_orthonormal(const ComplexMatrix& basis, std::size_t d, const char* what) {
    if (basis.rows() != static_cast<Eigen::Index>(d) ||
        basis.cols() != static_cast<Eigen::Index>(d))
        throw DimensionError(std::string(what) + ": basis has wrong shape");
    if (orthonormality_defect(basis) > kStateTol)
        throw ValidationError(ValidationKind::NotOrthonormal, what);
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

} // namespace

ComplexMatrix DensityMatrix::marginal(Side keep) const {
    return partial_trace(matrix_, dims_, keep == Side::A ? Side::B : Side::A);
}

double DensityMatrix::purity() const { return hs_norm_sq(matrix_); }

DensityMatrix density_from_matrix(const ComplexMatrix& m, Dims dims) {
    const auto d = static_cast<Eigen::Index>(dims.total());
    if (dims.m == 0 || dims.n == 0 || m.rows() != d || m.cols() != d)
        throw DimensionError("density_from_matrix: expected a " +
                             std::to_string(dims.total()) + "x" +
                             std::to_string(dims.total()) + " matrix");
    if (!m.allFinite())
        throw ValidationError(ValidationKind::NonFinite, "density_from_matrix");
    const double defect = hermiticity_defect(m);
    if (defect > kStateTol)
        throw ValidationError(ValidationKind::NotHermitian,
                              "max |M - M^dagger| = " + std::to_string(defect));
    ComplexMatrix h = (m + m.adjoint()) / 2.0;
    const double tr = h.trace().real();
    if (std::abs(tr - 1.0) > kStateTol)
        throw ValidationError(ValidationKind::TraceNotOne, "trace = " + std::to_string(tr));
    const double smallest = eig_hermitian(h).eigenvalues.minCoeff();
    if (smallest < -kStateTol)
        throw ValidationError(ValidationKind::Negative,
                              "smallest eigenvalue = " + std::to_string(smallest));
    return DensityMatrix(dims, std::move(h));
}

PureState pure_state(const ComplexVector& psi, Dims dims) {
    auto s = schmidt_decompose(psi, dims);
    return PureState(dims, psi, std::move(s));
}

DensityMatrix PureState::density() const {
    return density_from_matrix(projector(vector_), dims_);
}

DensityMatrix werner(std::size_t m, double x) {
    require_local_dim(m, "werner");
    require_unit_interval(x, "werner");
    const double md = static_cast<double>(m);
    const double denom = md * md * md - md;
    const auto d = static_cast<Eigen::Index>(m * m);
    ComplexMatrix rho = ComplexMatrix::Identity(d, d) * ((md - x) / denom);
    const double f = (md * x - 1.0) / denom;
    const auto mi = static_cast<Eigen::Index>(m);
    for (Eigen::Index i = 0; i < mi; ++i)
        for (Eigen::Index j = 0; j < mi; ++j)
            rho(i * mi + j, j * mi + i) += f;
    return density_from_matrix(rho, {m, m});
}

ComplexVector max_entangled_vector(std::size_t m, std::size_t n) {
    if (m > n)
        throw DimensionError("max_entangled_vector: need m <= n");
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(m * n));
    const double amp = 1.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t i = 0; i < m; ++i)
        v(static_cast<Eigen::Index>(i * n + i)) = amp;
    return v;
}

DensityMatrix isotropic(std::size_t m, double x) {
    require_local_dim(m, "isotropic");
    require_unit_interval(x, "isotropic");
    const double d2 = static_cast<double>(m * m);
    const auto d = static_cast<Eigen::Index>(m * m);
    ComplexMatrix rho = ComplexMatrix::Identity(d, d) * ((1.0 - x) / (d2 - 1.0));
    rho += projector(max_entangled_vector(m, m)) * ((d2 * x - 1.0) / (d2 - 1.0));
    return density_from_matrix(rho, {m, m});
}

ComplexMatrix pauli(int index) {
    ComplexMatrix s(2, 2);
    const Complex i(0.0, 1.0);
    switch (index) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -i, i, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw DimensionError("pauli: index must be 0..3");
    }
    return s;
}

DensityMatrix bell_diagonal(const std::array<double, 3>& c) {
    ComplexMatrix rho = kron(pauli(0), pauli(0));
    for (int k = 0; k < 3; ++k)
        rho += c[static_cast<std::size_t>(k)] * kron(pauli(k + 1), pauli(k + 1));
    return density_from_matrix(rho / 4.0, {2, 2});
}

DensityMatrix max_entangled_mixed(std::size_t m, std::size_t n,
                                  std::span<const double> p) {
    require_probabilities(p, "max_entangled_mixed");
    if (n < p.size() * m)
        throw ValidationError(ValidationKind::Capacity,
                              "max_entangled_mixed: need n >= K*m, got n = " +
                                  std::to_string(n) + ", K*m = " +
                                  std::to_string(p.size() * m));
    const auto d = static_cast<Eigen::Index>(m * n);
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t k = 0; k < p.size(); ++k) {
        ComplexVector v = ComplexVector::Zero(d);
        for (std::size_t i = 0; i < m; ++i)
            v(static_cast<Eigen::Index>(i * n + k * m + i)) = amp;
        rho += p[k] * projector(v);
    }
    return density_from_matrix(rho, {m, n});
}

DensityMatrix classical_state(const ClassicalSpectrum& spec) {
    const auto m = static_cast<std::size_t>(spec.p.rows());
    const auto n = static_cast<std::size_t>(spec.p.cols());
    require_orthonormal(spec.basis_a, m, "classical_state basis_a");
    require_orthonormal(spec.basis_b, n, "classical_state basis_b");
    require_probabilities({spec.p.data(), static_cast<std::size_t>(spec.p.size())},
                          "classical_state");
    const auto d = static_cast<Eigen::Index>(m * n);
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < spec.p.rows(); ++i)
        for (Eigen::Index j = 0; j < spec.p.cols(); ++j)
            if (spec.p(i, j) != 0.0)
                rho += spec.p(i, j) * kron(projector(spec.basis_a.col(i)),
                                           projector(spec.basis_b.col(j)));
    return density_from_matrix(rho, {m, n});
}

DensityMatrix cq_state(std::span<const double> p, const ComplexMatrix& basis_a,
                       const std::vector<ComplexMatrix>& conditionals) {
    const auto m = static_cast<std::size_t>(basis_a.rows());
    if (p.size() != m || conditionals.size() != m)
        throw DimensionError("cq_state: need one weight and conditional per basis vector");
    require_orthonormal(basis_a, m, "cq_state basis_a");
    require_probabilities(p, "cq_state");
    const auto n = static_cast<std::size_t>(conditionals.front().rows());
    ComplexMatrix rho = ComplexMatrix::Zero(static_cast<Eigen::Index>(m * n),
                                            static_cast<Eigen::Index>(m * n));
    for (std::size_t i = 0; i < m; ++i)
        rho += p[i] * kron(projector(basis_a.col(static_cast<Eigen::Index>(i))),
                           density_from_matrix(conditionals[i], {1, n}).matrix());
    return density_from_matrix(rho, {m, n});
}

DensityMatrix qc_state(std::span<const double> q,
                       const std::vector<ComplexMatrix>& conditionals,
                       const ComplexMatrix& basis_b) {
    const auto n = static_cast<std::size_t>(basis_b.rows());
    if (q.size() != n || conditionals.size() != n)
        throw DimensionError("qc_state: need one weight and conditional per basis vector");
    require_orthonormal(basis_b, n, "qc_state basis_b");
    require_probabilities(q, "qc_state");
    const auto m = static_cast<std::size_t>(conditionals.front().rows());
    ComplexMatrix rho = ComplexMatrix::Zero(static_cast<Eigen::Index>(m * n),
                                            static_cast<Eigen::Index>(m * n));
    for (std::size_t j = 0; j < n; ++j)
        rho += q[j] * kron(density_from_matrix(conditionals[j], {m, 1}).matrix(),
                           projector(basis_b.col(static_cast<Eigen::Index>(j))));
    return density_from_matrix(rho, {m, n});
}

DensityMatrix random_density(Dims dims, std::size_t rank, std::uint64_t seed) {
    const std::size_t d = dims.total();
    if (rank == 0 || rank > d)
        throw DimensionError("random_density: rank must be in [1, m*n]");
    Rng rng(seed);
    const ComplexMatrix q = haar_isometry(d, rank, rng);
    std::exponential_distribution<double> expo(1.0);
    RealVector w(static_cast<Eigen::Index>(rank));
    for (Eigen::Index k = 0; k < w.size(); ++k)
        w(k) = expo(rng);
    w /= w.sum();
    const ComplexMatrix rho = q * w.cast<Complex>().asDiagonal() * q.adjoint();
    return density_from_matrix(rho, dims);
}

PureState random_pure(Dims dims, std::uint64_t seed) {
    if (dims.total() == 0)
        throw DimensionError("random_pure: empty dims");
    Rng rng(seed);
    ComplexVector v = gaussian_matrix(dims.total(), 1, rng).col(0);
    v.normalize();
    return pure_state(v, dims);
}

ComplexMatrix fourier_basis(std::size_t d) {
    const auto di = static_cast<Eigen::Index>(d);
    ComplexMatrix f(di, di);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index j = 0; j < di; ++j)
        for (Eigen::Index k = 0; k < di; ++k)
            f(j, k) = std::polar(norm, 2.0 * M_PI * static_cast<double>(j * k) /
                                           static_cast<double>(d));
    return f;
}

} // namespace qmin
