#include "qmin/measures.hpp"

#include <algorithm>
#include <cmath>

#include "qmin/decompositions.hpp"
#include "qmin/error.hpp"

namespace qmin {
namespace {

std::span<const double> head(std::span<const double> p, std::size_t k) { return p.first(k); }
std::span<const double> tail(std::span<const double> p, std::size_t k) { return p.subspan(k); }

void fill_search(Diagnostics& d, const SearchResult& s, const OptimizerOptions& opts) {
    d.starts = s.starts;
    d.iterations = s.iterations;
    d.evaluations = s.evaluations;
    d.best_start = s.best_start;
    d.best_trace = s.best_trace;
    d.degeneracy_tol = opts.degeneracy_tol;
    d.seed = opts.seed;
}

std::span<const double> as_span(const RealVector& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

} // namespace

std::string to_string(Method m) {
    switch (m) {
    case Method::ClosedForm: return "closed_form";
    case Method::CorrelationMatrix: return "correlation_matrix";
    case Method::Optimized: return "optimized";
    case Method::Oracle: return "oracle";
    }
    return "?";
}

std::string to_string(BoundKind b) {
    switch (b) {
    case BoundKind::Exact: return "exact";
    case BoundKind::Lower: return "lower";
    case BoundKind::Upper: return "upper";
    }
    return "?";
}

MeasureResult min_one_sided(const DensityMatrix& rho, Side side, const OptimizerOptions& opts) {
    opts.validate();
    const Dims dims = rho.dims();
    const FeasibleFamily fam = feasible_family(rho.marginal(side), side, opts.degeneracy_tol);
    const ComplexMatrix& r = rho.matrix();
    auto objective = [&](std::span<const double> p) {
        const ComplexMatrix u = realize_measurement(fam, p);
        return side == Side::A ? pinch_distance_sq(r, dims, &u, nullptr)
                               : pinch_distance_sq(r, dims, nullptr, &u);
    };
    const SearchResult s = maximize(objective, fam.free_parameter_count, opts);

    MeasureResult out;
    const ComplexMatrix basis = realize_measurement(fam, as_span(s.params));
    out.argmeasure = ProjectiveMeasurement::one_sided(side, basis);
    out.value = s.value;
    out.method = fam.is_singleton() ? Method::ClosedForm : Method::Optimized;
    out.bound = fam.is_singleton() ? BoundKind::Exact : BoundKind::Lower;
    fill_search(out.diagnostics, s, opts);
    (side == Side::A ? out.diagnostics.group_dims_a : out.diagnostics.group_dims_b) =
        fam.group_dims();
    return out;
}

MeasureResult min_two_sided(const DensityMatrix& rho, const OptimizerOptions& opts) {
    opts.validate();
    const Dims dims = rho.dims();
    const FeasibleFamily fa = feasible_family(rho.marginal(Side::A), Side::A, opts.degeneracy_tol);
    const FeasibleFamily fb = feasible_family(rho.marginal(Side::B), Side::B, opts.degeneracy_tol);
    const std::size_t ka = fa.free_parameter_count;
    const ComplexMatrix& r = rho.matrix();
    auto objective = [&](std::span<const double> p) {
        const ComplexMatrix u = realize_measurement(fa, head(p, ka));
        const ComplexMatrix v = realize_measurement(fb, tail(p, ka));
        return pinch_distance_sq(r, dims, &u, &v);
    };
    const SearchResult s = maximize(objective, ka + fb.free_parameter_count, opts);

    MeasureResult out;
    const auto p = as_span(s.params);
    out.argmeasure = ProjectiveMeasurement::two_sided(realize_measurement(fa, head(p, ka)),
                                                      realize_measurement(fb, tail(p, ka)));
    out.value = s.value;
    const bool exact = fa.is_singleton() && fb.is_singleton();
    out.method = exact ? Method::ClosedForm : Method::Optimized;
    out.bound = exact ? BoundKind::Exact : BoundKind::Lower;
    fill_search(out.diagnostics, s, opts);
    out.diagnostics.group_dims_a = fa.group_dims();
    out.diagnostics.group_dims_b = fb.group_dims();
    return out;
}

double min_pure_closed_form(const PureState& psi) {
    const RealVector& l = psi.schmidt().coefficients;
    return 1.0 - l.array().pow(4).sum();
}

MeasureResult gmqd_one_sided(const DensityMatrix& rho, Side side, const OptimizerOptions& opts) {
    opts.validate();
    const Dims dims = rho.dims();
    const std::size_t d = side == Side::A ? dims.m : dims.n;
    const FeasibleFamily fam = unconstrained_family(d, side);
    const auto dec = correlation_matrix(rho);
    const auto& ops = side == Side::A ? dec.x : dec.y;
    const PinchMode mode = side == Side::A ? PinchMode::OneSidedA : PinchMode::OneSidedB;
    const RealMatrix none;
    auto objective = [&](std::span<const double> p) {
        const RealMatrix coords = projector_coordinates(realize_measurement(fam, p), ops);
        return -(side == Side::A ? pinch_objective_from_matrices(dec.c, coords, none, mode)
                                 : pinch_objective_from_matrices(dec.c, none, coords, mode));
    };
    const SearchResult s = maximize(objective, fam.free_parameter_count, opts);

    MeasureResult out;
    const ComplexMatrix basis = realize_measurement(fam, as_span(s.params));
    out.argmeasure = ProjectiveMeasurement::one_sided(side, basis);
    out.value = side == Side::A ? pinch_distance_sq(rho.matrix(), dims, &basis, nullptr)
                                : pinch_distance_sq(rho.matrix(), dims, nullptr, &basis);
    out.method = Method::CorrelationMatrix;
    out.bound = BoundKind::Upper;
    fill_search(out.diagnostics, s, opts);
    (side == Side::A ? out.diagnostics.group_dims_a : out.diagnostics.group_dims_b) = {d};
    return out;
}

MeasureResult gmqd_two_sided(const DensityMatrix& rho, const OptimizerOptions& opts) {
    opts.validate();
    const Dims dims = rho.dims();
    const FeasibleFamily fa = unconstrained_family(dims.m, Side::A);
    const FeasibleFamily fb = unconstrained_family(dims.n, Side::B);
    const std::size_t ka = fa.free_parameter_count;
    const auto dec = correlation_matrix(rho);
    auto objective = [&](std::span<const double> p) {
        const RealMatrix a = projector_coordinates(realize_measurement(fa, head(p, ka)), dec.x);
        const RealMatrix b = projector_coordinates(realize_measurement(fb, tail(p, ka)), dec.y);
        return -pinch_objective_from_matrices(dec.c, a, b, PinchMode::TwoSided);
    };
    const SearchResult s = maximize(objective, ka + fb.free_parameter_count, opts);

    MeasureResult out;
    const auto p = as_span(s.params);
    const ComplexMatrix u = realize_measurement(fa, head(p, ka));
    const ComplexMatrix v = realize_measurement(fb, tail(p, ka));
    out.argmeasure = ProjectiveMeasurement::two_sided(u, v);
    out.value = pinch_distance_sq(rho.matrix(), dims, &u, &v);
    out.method = Method::CorrelationMatrix;
    out.bound = BoundKind::Upper;
    fill_search(out.diagnostics, s, opts);
    out.diagnostics.group_dims_a = {dims.m};
    out.diagnostics.group_dims_b = {dims.n};
    return out;
}

double mutual_information(const DensityMatrix& rho) {
    return von_neumann_entropy(rho.marginal(Side::A)) + von_neumann_entropy(rho.marginal(Side::B)) -
           von_neumann_entropy(rho.matrix());
}

double classical_mutual_information(const RealVector& joint, Dims dims) {
    if (static_cast<std::size_t>(joint.size()) != dims.total())
        throw DimensionError("classical_mutual_information: distribution size mismatch");
    const auto m = static_cast<Eigen::Index>(dims.m);
    const auto n = static_cast<Eigen::Index>(dims.n);
    const Eigen::Map<const RealMatrix> p(joint.data(), m, n);
    const RealVector pa = p.rowwise().sum();
    const RealVector pb = p.colwise().sum().transpose();
    return shannon_entropy(as_span(pa)) + shannon_entropy(as_span(pb)) -
           shannon_entropy(as_span(joint));
}

MeasureResult entropic_discord_two_sided(const DensityMatrix& rho, const OptimizerOptions& opts) {
    opts.validate();
    const Dims dims = rho.dims();
    const FeasibleFamily fa = unconstrained_family(dims.m, Side::A);
    const FeasibleFamily fb = unconstrained_family(dims.n, Side::B);
    const std::size_t ka = fa.free_parameter_count;
    const ComplexMatrix& r = rho.matrix();
    auto objective = [&](std::span<const double> p) {
        const ComplexMatrix u = realize_measurement(fa, head(p, ka));
        const ComplexMatrix v = realize_measurement(fb, tail(p, ka));
        RealVector joint = product_basis_diagonal(r, dims, u, v).cwiseMax(0.0);
        joint /= joint.sum();
        return classical_mutual_information(joint, dims);
    };
    const SearchResult s = maximize(objective, ka + fb.free_parameter_count, opts);

    MeasureResult out;
    const auto p = as_span(s.params);
    out.argmeasure = ProjectiveMeasurement::two_sided(realize_measurement(fa, head(p, ka)),
                                                      realize_measurement(fb, tail(p, ka)));
    // Measurement cannot increase mutual information, so anything below zero
    // is round-off.
    out.value = std::max(0.0, mutual_information(rho) - s.value);
    out.method = Method::Optimized;
    out.bound = BoundKind::Upper;
    fill_search(out.diagnostics, s, opts);
    out.diagnostics.group_dims_a = {dims.m};
    out.diagnostics.group_dims_b = {dims.n};
    out.diagnostics.heuristic = true;
    return out;
}

} // namespace qmin
