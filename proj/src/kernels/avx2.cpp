// Compiled with -mavx2 only; callers reach it through the dispatch table
// after a CPU feature check.

#include <immintrin.h>

#include "qmin/kernels/kernels.hpp"

namespace qmin::kernels::detail {
namespace {

double sum_abs_sq_avx2(const Complex* x, std::size_t len) {
    const auto* d = reinterpret_cast<const double*>(x);
    const std::size_t count = 2 * len;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= count; i += 8) {
        const __m256d a = _mm256_loadu_pd(d + i);
        const __m256d b = _mm256_loadu_pd(d + i + 4);
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(a, a));
        acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(b, b));
    }
    for (; i + 4 <= count; i += 4) {
        const __m256d a = _mm256_loadu_pd(d + i);
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(a, a));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < count; ++i)
        total += d[i] * d[i];
    return total;
}

inline void caxpy(double ar, double ai, const double* x, double* y,
                  std::size_t len) {
    const __m256d vr = _mm256_set1_pd(ar);
    const __m256d vi = _mm256_set1_pd(ai);
    std::size_t j = 0;
    for (; j + 2 <= len; j += 2) {
        const __m256d xv = _mm256_loadu_pd(x + 2 * j);
        const __m256d xs = _mm256_permute_pd(xv, 0b0101);
        const __m256d prod =
            _mm256_addsub_pd(_mm256_mul_pd(vr, xv), _mm256_mul_pd(vi, xs));
        _mm256_storeu_pd(y + 2 * j,
                         _mm256_add_pd(_mm256_loadu_pd(y + 2 * j), prod));
    }
    for (; j < len; ++j) {
        const double xr = x[2 * j];
        const double xi = x[2 * j + 1];
        y[2 * j] += ar * xr - ai * xi;
        y[2 * j + 1] += ar * xi + ai * xr;
    }
}

void gemm_nn_avx2(std::size_t rows, std::size_t inner, std::size_t cols,
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

void gemm_hn_avx2(std::size_t rows, std::size_t inner, std::size_t cols,
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

inline double quad_scalar(const Sym3& q, double x, double y, double z) {
    return q.xx * x * x + q.yy * y * y + q.zz * z * z +
           2.0 * (q.xy * x * y + q.xz * x * z + q.yz * y * z);
}

Extrema quadratic_form_extrema_avx2(const Sym3& q, const double* x,
                                    const double* y, const double* z,
                                    std::size_t len) {
    if (len < 4) {
        Extrema e;
        for (std::size_t i = 0; i < len; ++i) {
            const double v = quad_scalar(q, x[i], y[i], z[i]);
            if (i == 0 || v < e.min) { e.min = v; e.argmin = i; }
            if (i == 0 || v > e.max) { e.max = v; e.argmax = i; }
        }
        return e;
    }

    const __m256d qxx = _mm256_set1_pd(q.xx), qyy = _mm256_set1_pd(q.yy),
                  qzz = _mm256_set1_pd(q.zz), qxy = _mm256_set1_pd(q.xy),
                  qxz = _mm256_set1_pd(q.xz), qyz = _mm256_set1_pd(q.yz);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d four = _mm256_set1_pd(4.0);

    auto eval = [&](std::size_t i) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vy = _mm256_loadu_pd(y + i);
        const __m256d vz = _mm256_loadu_pd(z + i);
        const __m256d diag = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(_mm256_mul_pd(qxx, vx), vx),
                          _mm256_mul_pd(_mm256_mul_pd(qyy, vy), vy)),
            _mm256_mul_pd(_mm256_mul_pd(qzz, vz), vz));
        const __m256d off = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(_mm256_mul_pd(qxy, vx), vy),
                          _mm256_mul_pd(_mm256_mul_pd(qxz, vx), vz)),
            _mm256_mul_pd(_mm256_mul_pd(qyz, vy), vz));
        return _mm256_add_pd(diag, _mm256_mul_pd(two, off));
    };

    __m256d idx = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    __m256d vmin = eval(0), vmax = vmin;
    __m256d imin = idx, imax = idx;
    std::size_t i = 4;
    for (; i + 4 <= len; i += 4) {
        idx = _mm256_add_pd(idx, four);
        const __m256d v = eval(i);
        const __m256d lt = _mm256_cmp_pd(v, vmin, _CMP_LT_OQ);
        const __m256d gt = _mm256_cmp_pd(v, vmax, _CMP_GT_OQ);
        vmin = _mm256_blendv_pd(vmin, v, lt);
        imin = _mm256_blendv_pd(imin, idx, lt);
        vmax = _mm256_blendv_pd(vmax, v, gt);
        imax = _mm256_blendv_pd(imax, idx, gt);
    }

    alignas(32) double mins[4], maxs[4], mini[4], maxi[4];
    _mm256_store_pd(mins, vmin);
    _mm256_store_pd(maxs, vmax);
    _mm256_store_pd(mini, imin);
    _mm256_store_pd(maxi, imax);

    Extrema e{mins[0], static_cast<std::size_t>(mini[0]), maxs[0],
              static_cast<std::size_t>(maxi[0])};
    for (int lane = 1; lane < 4; ++lane) {
        const auto li = static_cast<std::size_t>(mini[lane]);
        if (mins[lane] < e.min || (mins[lane] == e.min && li < e.argmin)) {
            e.min = mins[lane];
            e.argmin = li;
        }
        const auto ai = static_cast<std::size_t>(maxi[lane]);
        if (maxs[lane] > e.max || (maxs[lane] == e.max && ai < e.argmax)) {
            e.max = maxs[lane];
            e.argmax = ai;
        }
    }
    for (; i < len; ++i) {
        const double v = quad_scalar(q, x[i], y[i], z[i]);
        if (v < e.min) { e.min = v; e.argmin = i; }
        if (v > e.max) { e.max = v; e.argmax = i; }
    }
    return e;
}

} // namespace

const Table& avx2_table() noexcept {
    static const Table t{sum_abs_sq_avx2, gemm_nn_avx2, gemm_hn_avx2,
                         quadratic_form_extrema_avx2};
    return t;
}

} // namespace qmin::kernels::detail
