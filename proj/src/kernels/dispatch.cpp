#include <atomic>
#include <cstdlib>
#include <string>

#include "qmin/error.hpp"
#include "qmin/kernels/kernels.hpp"

namespace qmin::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(QMIN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend detect() noexcept {
    if (const char* env = std::getenv("QMIN_KERNELS");
        env != nullptr && std::string(env) == "scalar")
        return Backend::Scalar;
    return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() noexcept {
    static std::atomic<Backend> b{detect()};
    return b;
}

const detail::Table& table() noexcept {
#if defined(QMIN_HAVE_AVX2)
    if (current().load(std::memory_order_relaxed) == Backend::Avx2)
        return detail::avx2_table();
#endif
    return detail::scalar_table();
}

} // namespace

std::string_view to_string(Backend b) noexcept {
    return b == Backend::Avx2 ? "avx2" : "scalar";
}

bool backend_available(Backend b) noexcept {
    return b == Backend::Scalar || cpu_has_avx2();
}

Backend active_backend() noexcept { return current().load(); }

void force_backend(Backend b) {
    if (!backend_available(b))
        throw Error("kernel backend unavailable: " + std::string(to_string(b)));
    current().store(b);
}

double sum_abs_sq(std::span<const Complex> x) {
    return table().sum_abs_sq(x.data(), x.size());
}

void gemm_nn(std::size_t rows, std::size_t inner, std::size_t cols,
             const Complex* a, const Complex* b, Complex* c) {
    table().gemm_nn(rows, inner, cols, a, b, c);
}

void gemm_hn(std::size_t rows, std::size_t inner, std::size_t cols,
             const Complex* a, const Complex* b, Complex* c) {
    table().gemm_hn(rows, inner, cols, a, b, c);
}

Extrema quadratic_form_extrema(const Sym3& q, std::span<const double> x,
                               std::span<const double> y,
                               std::span<const double> z) {
    if (x.empty() || x.size() != y.size() || x.size() != z.size())
        throw DimensionError("quadratic_form_extrema: mismatched or empty inputs");
    return table().quadratic_form_extrema(q, x.data(), y.data(), z.data(),
                                          x.size());
}

} // namespace qmin::kernels
