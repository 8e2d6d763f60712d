#include "qmin/random.hpp"

#include <cmath>

#include "qmin/error.hpp"

namespace qmin {

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix g(rows, cols);
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    return g;
}

ComplexMatrix haar_isometry(std::size_t d, std::size_t k, Rng& rng) {
    if (k > d || d == 0)
        throw DimensionError("haar_isometry: need 0 < k <= d");
    const Eigen::MatrixXcd g = gaussian_matrix(d, k, rng);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(
                                                 static_cast<Eigen::Index>(d),
                                                 static_cast<Eigen::Index>(k));
    for (Eigen::Index c = 0; c < q.cols(); ++c) {
        const Complex diag = r(c, c);
        if (std::abs(diag) > 0.0)
            q.col(c) *= diag / std::abs(diag);
    }
    return q;
}

ComplexMatrix haar_unitary(std::size_t d, Rng& rng) { return haar_isometry(d, d, rng); }

} // namespace qmin
