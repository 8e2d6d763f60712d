#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

namespace qmin {

using Complex = std::complex<double>;

// Composite index convention: |i> (x) |j'> lives at row i * n + j.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealVector = Eigen::VectorXd;

struct Dims {
    std::size_t m = 0;
    std::size_t n = 0;

    [[nodiscard]] constexpr std::size_t total() const noexcept { return m * n; }
    friend constexpr bool operator==(Dims, Dims) = default;
};

enum class Side { A, B };
enum class MeasuredSide { A, B, AB };

[[nodiscard]] constexpr std::string_view to_string(Side s) noexcept {
    return s == Side::A ? "A" : "B";
}

[[nodiscard]] constexpr std::string_view to_string(MeasuredSide s) noexcept {
    switch (s) {
    case MeasuredSide::A: return "A";
    case MeasuredSide::B: return "B";
    case MeasuredSide::AB: return "AB";
    }
    return "?";
}

} // namespace qmin
