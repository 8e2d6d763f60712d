#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmin {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes or subsystem dimensions that do not fit together.
class DimensionError : public Error {
public:
    using Error::Error;
};

enum class ValidationKind {
    NotHermitian,
    TraceNotOne,
    Negative,
    NotNormalized,
    NotOrthonormal,
    OutOfRange,
    Capacity,
    NonFinite,
    BadProbabilities,
    Malformed,
};

[[nodiscard]] constexpr std::string_view to_string(ValidationKind k) noexcept {
    switch (k) {
    case ValidationKind::NotHermitian: return "not_hermitian";
    case ValidationKind::TraceNotOne: return "trace_not_one";
    case ValidationKind::Negative: return "negative";
    case ValidationKind::NotNormalized: return "not_normalized";
    case ValidationKind::NotOrthonormal: return "not_orthonormal";
    case ValidationKind::OutOfRange: return "out_of_range";
    case ValidationKind::Capacity: return "capacity";
    case ValidationKind::NonFinite: return "non_finite";
    case ValidationKind::BadProbabilities: return "bad_probabilities";
    case ValidationKind::Malformed: return "malformed";
    }
    return "unknown";
}

class ValidationError : public Error {
public:
    ValidationError(ValidationKind kind, const std::string& what)
        : Error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ValidationKind kind() const noexcept { return kind_; }

private:
    ValidationKind kind_;
};

/// Raised by the qubit-only oracles when asked to scan a larger factor.
class UnsupportedDimension : public Error {
public:
    using Error::Error;
};

/// A computation reached a regime where its answer is not meaningful
/// (e.g. a perturbed marginal that is still degenerate under tolerance).
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace qmin
