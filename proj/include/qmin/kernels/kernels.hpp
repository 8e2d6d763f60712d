#pragma once

// Data-parallel inner loops shared by the channel objectives and the oracles.
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant chosen once at runtime. The two are equivalence-tested.

#include <cstddef>
#include <span>
#include <string_view>

#include "qmin/types.hpp"

namespace qmin::kernels {

enum class Backend { Scalar, Avx2 };

[[nodiscard]] std::string_view to_string(Backend b) noexcept;

/// True when the backend was compiled in and the CPU supports it.
[[nodiscard]] bool backend_available(Backend b) noexcept;

[[nodiscard]] Backend active_backend() noexcept;

/// Pins the backend for the whole process. Throws qmin::Error when the
/// requested backend is unavailable. Intended for tests and benchmarks.
void force_backend(Backend b);

/// Symmetric 3x3 quadratic form, upper triangle.
struct Sym3 {
    double xx = 0, yy = 0, zz = 0, xy = 0, xz = 0, yz = 0;
};

struct Extrema {
    double min = 0;
    std::size_t argmin = 0;
    double max = 0;
    std::size_t argmax = 0;
};

/// Sum of |x_k|^2.
[[nodiscard]] double sum_abs_sq(std::span<const Complex> x);

/// C (rows x cols) = A (rows x inner) * B (inner x cols), all row-major.
void gemm_nn(std::size_t rows, std::size_t inner, std::size_t cols,
             const Complex* a, const Complex* b, Complex* c);

/// C (rows x cols) = A^H * B with A stored inner x rows, B inner x cols.
void gemm_hn(std::size_t rows, std::size_t inner, std::size_t cols,
             const Complex* a, const Complex* b, Complex* c);

/// Evaluates v^T Q v for every unit vector v = (x[i], y[i], z[i]) and returns
/// the extreme values. Ties resolve to the lowest index. Inputs must be
/// non-empty and of equal length.
[[nodiscard]] Extrema quadratic_form_extrema(const Sym3& q,
                                             std::span<const double> x,
                                             std::span<const double> y,
                                             std::span<const double> z);

namespace detail {

struct Table {
    double (*sum_abs_sq)(const Complex*, std::size_t);
    void (*gemm_nn)(std::size_t, std::size_t, std::size_t, const Complex*,
                    const Complex*, Complex*);
    void (*gemm_hn)(std::size_t, std::size_t, std::size_t, const Complex*,
                    const Complex*, Complex*);
    Extrema (*quadratic_form_extrema)(const Sym3&, const double*, const double*,
                                      const double*, std::size_t);
};

const Table& scalar_table() noexcept;
#if defined(QMIN_HAVE_AVX2)
const Table& avx2_table() noexcept;
#endif

} // namespace detail
} // namespace qmin::kernels
