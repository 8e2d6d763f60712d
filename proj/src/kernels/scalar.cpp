#include "qmin/kernels/kernels.hpp"

namespace qmin::kernels::detail {
namespace {

double sum_abs_sq_scalar(const Complex* x, std::size_t len) {
    const auto* d = reinterpret_cast<const double*>(x);
    double acc = 0.0;
    for (std::size_t i = 0; i < 2 * len; ++i)
        acc += d[i] * d[i];
    return acc;
}

// y += alpha * x over interleaved complex rows.
inline void caxpy(double ar, double ai, const double* x, double* y,
                  std::size_t len) {
    for (std::size_t j = 0; j < len; ++j) {
        const double xr = x[2 * j];
        const double xi = x[2 * j + 1];
        y[2 * j] += ar * xr - ai * xi;
        y[2 * j + 1] += ar * xi + ai * xr;
    }
}

void gemm_nn_scalar(std::size_t rows, std::size_t inner, std::size_t cols,
                    const Complex* a, const Complex* b, Complex* c) {
    const auto* ad = reinterpret_cast<const double*>(a);
    const auto* bd = reinterpret_cast<const double*>(b);
    auto* cd = reinterpret_cast<double*>(c);
    for (std::size_t i = 0; i < rows * cols * 2; ++i)
        cd[i] = 0.0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t p = 0; p < inner; ++p) {
            const double* ap = ad + 2 * (i * inner + p);
            caxpy(ap[0], ap[1], bd + 2 * p * cols, cd + 2 * i * cols, cols);
        }
}

void gemm_hn_scalar(std::size_t rows, std::size_t inner, std::size_t cols,
                    const Complex* a, const Complex* b, Complex* c) {
    const auto* ad = reinterpret_cast<const double*>(a);
    const auto* bd = reinterpret_cast<const double*>(b);
    auto* cd = reinterpret_cast<double*>(c);
    for (std::size_t i = 0; i < rows * cols * 2; ++i)
        cd[i] = 0.0;
    for (std::size_t p = 0; p < inner; ++p)
        for (std::size_t i = 0; i < rows; ++i) {
            const double* ap = ad + 2 * (p * rows + i);
            caxpy(ap[0], -ap[1], bd + 2 * p * cols, cd + 2 * i * cols, cols);
        }
}

Extrema quadratic_form_extrema_scalar(const Sym3& q, const double* x,
                                      const double* y, const double* z,
                                      std::size_t len) {
    Extrema e;
    for (std::size_t i = 0; i < len; ++i) {
        const double v = q.xx * x[i] * x[i] + q.yy * y[i] * y[i] +
                         q.zz * z[i] * z[i] +
                         2.0 * (q.xy * x[i] * y[i] + q.xz * x[i] * z[i] +
                                q.yz * y[i] * z[i]);
        if (i == 0 || v < e.min) {
            e.min = v;
            e.argmin = i;
        }
        if (i == 0 || v > e.max) {
            e.max = v;
            e.argmax = i;
        }
    }
    return e;
}

} // namespace

const Table& scalar_table() noexcept {
    static const Table t{sum_abs_sq_scalar, gemm_nn_scalar, gemm_hn_scalar,
                         quadratic_form_extrema_scalar};
    return t;
}

} // namespace qmin::kernels::detail
