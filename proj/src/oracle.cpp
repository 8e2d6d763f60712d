#include "qmin/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "qmin/error.hpp"
#include "qmin/kernels/kernels.hpp"
#include "qmin/random.hpp"

namespace qmin {
namespace {

constexpr double kGridFeasibilityTol = 1e-9;

using Vec3 = std::array<double, 3>;

bool is_min_mode(OracleMode m) {
    return m == OracleMode::MinA || m == OracleMode::MinB || m == OracleMode::MinAB;
}

// Columns (|+a>, |-a>) for the Bloch direction a. The southern hemisphere
// is built from -a with the columns swapped to stay well conditioned.
ComplexMatrix qubit_basis(const Vec3& a) {
    const double norm = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    const double sign = a[2] < 0 ? -1.0 : 1.0;
    const double x = sign * a[0] / norm, y = sign * a[1] / norm, z = sign * a[2] / norm;
    const double c = std::sqrt((1.0 + z) / 2.0);
    const Complex s = Complex(x, y) / (2.0 * c);
    ComplexMatrix u(2, 2);
    if (sign > 0)
        u << c, -std::conj(s), s, c;
    else
        u << -std::conj(s), c, c, s;
    return u;
}

Vec3 bloch_vector(const ComplexMatrix& rho2) {
    return {2.0 * rho2(1, 0).real(), 2.0 * rho2(1, 0).imag(),
            (rho2(0, 0) - rho2(1, 1)).real()};
}

// Unit vectors of the grid, in a frame whose pole is `pole`.
struct Grid {
    std::vector<double> x, y, z;
};

Grid make_grid(std::size_t res, const Vec3& pole) {
    // Rotation taking e_z to the pole (Rodrigues about e_z x pole).
    Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
    const Eigen::Vector3d p(pole[0], pole[1], pole[2]);
    const Eigen::Vector3d ez = Eigen::Vector3d::UnitZ();
    if (p.norm() > 0) {
        const Eigen::Vector3d n = p.normalized();
        const double c = ez.dot(n);
        if (c < -1.0 + 1e-15) {
            r = Eigen::Vector3d(1, -1, -1).asDiagonal();
        } else {
            const Eigen::Vector3d v = ez.cross(n);
            Eigen::Matrix3d k;
            k << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
            r += k + k * k / (1.0 + c);
        }
    }
    Grid g;
    for (std::size_t i = 0; i < res; ++i) {
        const double th = std::numbers::pi * static_cast<double>(i) / static_cast<double>(res - 1);
        for (std::size_t j = 0; j < res; ++j) {
            const double ph = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(res);
            const Eigen::Vector3d v =
                r * Eigen::Vector3d(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                                    std::cos(th));
            g.x.push_back(v.x());
            g.y.push_back(v.y());
            g.z.push_back(v.z());
        }
    }
    return g;
}

Vec3 at(const Grid& g, std::size_t k) { return {g.x[k], g.y[k], g.z[k]}; }

Grid filter_feasible(const DensityMatrix& rho, Side side, const Grid& g) {
    Grid out;
    for (std::size_t k = 0; k < g.x.size(); ++k) {
        const auto pm = ProjectiveMeasurement::one_sided(side, qubit_basis(at(g, k)));
        if (leaves_marginal_invariant(rho, pm, kGridFeasibilityTol)) {
            out.x.push_back(g.x[k]);
            out.y.push_back(g.y[k]);
            out.z.push_back(g.z[k]);
        }
    }
    return out;
}

kernels::Sym3 to_sym3(const Eigen::Matrix3d& q) {
    return {q(0, 0), q(1, 1), q(2, 2), q(0, 1), q(0, 2), q(1, 2)};
}

// rho = sum_mu sigma_mu/sqrt2 (x) R_mu over the measured qubit; returns the
// 3x3 Gram matrix Re Tr(R_k R_l), k, l = 1..3, and sum_k ||R_k||^2.
std::pair<Eigen::Matrix3d, double> qubit_gram(const DensityMatrix& rho, Side side) {
    const Dims dims = rho.dims();
    const auto other = static_cast<Eigen::Index>(side == Side::A ? dims.n : dims.m);
    const ComplexMatrix id = ComplexMatrix::Identity(other, other);
    std::array<ComplexMatrix, 3> r;
    for (int k = 1; k <= 3; ++k) {
        const ComplexMatrix s = pauli(k) / std::sqrt(2.0);
        const ComplexMatrix op = side == Side::A ? kron(s, id) : kron(id, s);
        r[static_cast<std::size_t>(k - 1)] =
            partial_trace(op * rho.matrix(), dims, side);
    }
    Eigen::Matrix3d g;
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < 3; ++l)
            g(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) =
                (r[k] * r[l]).trace().real();
    return {g, g.trace()};
}

MeasureResult grid_one_sided(const DensityMatrix& rho, OracleMode mode, const Grid& grid, Side side) {
    const auto [gram, total] = qubit_gram(rho, side);
    if (grid.x.empty())
        throw NumericalError("grid_oracle: no feasible grid point");
    // distance = total - a^T G a; MiN maximizes it, discord minimizes it.
    const auto e = kernels::quadratic_form_extrema(to_sym3(gram), grid.x, grid.y, grid.z);
    const std::size_t k = is_min_mode(mode) ? e.argmin : e.argmax;
    MeasureResult out;
    const ComplexMatrix basis = qubit_basis(at(grid, k));
    out.argmeasure = ProjectiveMeasurement::one_sided(side, basis);
    out.value = std::max(0.0, total - (is_min_mode(mode) ? e.min : e.max));
    out.diagnostics.evaluations = grid.x.size();
    return out;
}

MeasureResult grid_two_sided(const DensityMatrix& rho, OracleMode mode, const Grid& ga,
                             const Grid& gb) {
    if (ga.x.empty() || gb.x.empty())
        throw NumericalError("grid_oracle: no feasible grid point");
    Eigen::Vector3d r, s;
    Eigen::Matrix3d t;
    const ComplexMatrix& m = rho.matrix();
    auto expect = [&](const ComplexMatrix& op) { return (op * m).trace().real(); };
    for (int i = 1; i <= 3; ++i) {
        r(i - 1) = expect(kron(pauli(i), pauli(0)));
        s(i - 1) = expect(kron(pauli(0), pauli(i)));
        for (int j = 1; j <= 3; ++j)
            t(i - 1, j - 1) = expect(kron(pauli(i), pauli(j)));
    }
    const double total = r.squaredNorm() + s.squaredNorm() + t.squaredNorm();
    const bool maximize_distance = is_min_mode(mode);
    // distance = (total - (r.a)^2 - b^T (s s^T + T^T a a^T T) b) / 4
    double best = maximize_distance ? -1.0 : std::numeric_limits<double>::infinity();
    std::size_t best_a = 0, best_b = 0;
    const Eigen::Matrix3d sst = s * s.transpose();
    for (std::size_t k = 0; k < ga.x.size(); ++k) {
        const Eigen::Vector3d a(ga.x[k], ga.y[k], ga.z[k]);
        const Eigen::Vector3d ta = t.transpose() * a;
        const double ra = r.dot(a);
        const auto e = kernels::quadratic_form_extrema(to_sym3(sst + ta * ta.transpose()),
                                                       gb.x, gb.y, gb.z);
        const double v = (total - ra * ra - (maximize_distance ? e.min : e.max)) / 4.0;
        if (maximize_distance ? v > best : v < best) {
            best = v;
            best_a = k;
            best_b = maximize_distance ? e.argmin : e.argmax;
        }
    }
    MeasureResult out;
    out.argmeasure = ProjectiveMeasurement::two_sided(qubit_basis(at(ga, best_a)),
                                                      qubit_basis(at(gb, best_b)));
    out.value = std::max(0.0, best);
    out.diagnostics.evaluations = ga.x.size() * gb.x.size();
    return out;
}

// Candidate bases per side: computational, marginal eigenbasis, then Haar.
ComplexMatrix candidate(std::size_t index, const HermitianEigensystem& es, Rng& rng) {
    const auto d = static_cast<std::size_t>(es.eigenvalues.size());
    if (index == 0)
        return ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    if (index == 1)
        return es.eigenvectors;
    return haar_unitary(d, rng);
}

// Haar-random basis inside each eigen-group of the family.
ComplexMatrix feasible_sample(const FeasibleFamily& fam, Rng& rng) {
    const auto d = static_cast<Eigen::Index>(fam.dim());
    ComplexMatrix out(d, d);
    Eigen::Index col = 0;
    for (const auto& g : fam.groups) {
        const auto k = static_cast<Eigen::Index>(g.dim());
        out.middleCols(col, k) = k > 1 ? ComplexMatrix(g.basis * haar_unitary(g.dim(), rng))
                                       : g.basis;
        col += k;
    }
    return out;
}

} // namespace

std::string to_string(OracleMode m) {
    switch (m) {
    case OracleMode::MinA: return "min_A";
    case OracleMode::MinB: return "min_B";
    case OracleMode::MinAB: return "min_AB";
    case OracleMode::GmqdA: return "gmqd_A";
    case OracleMode::GmqdAB: return "gmqd_AB";
    }
    return "?";
}

MeasureResult grid_oracle(const DensityMatrix& rho, OracleMode mode, const GridSpec& spec) {
    if (spec.resolution < 8)
        throw ValidationError(ValidationKind::OutOfRange, "grid_oracle: resolution must be >= 8");
    const Dims dims = rho.dims();
    const bool uses_a = mode != OracleMode::MinB;
    const bool uses_b = mode == OracleMode::MinB || mode == OracleMode::MinAB ||
                        mode == OracleMode::GmqdAB;
    if ((uses_a && dims.m != 2) || (uses_b && dims.n != 2))
        throw UnsupportedDimension("grid_oracle: measured factors must be qubits");

    const bool constrained = is_min_mode(mode);
    auto side_grid = [&](Side side) {
        if (!constrained)
            return make_grid(spec.resolution, {0.0, 0.0, 1.0});
        const Vec3 pole = bloch_vector(rho.marginal(side));
        return filter_feasible(rho, side, make_grid(spec.resolution, pole));
    };

    MeasureResult out;
    if (mode == OracleMode::MinAB || mode == OracleMode::GmqdAB)
        out = grid_two_sided(rho, mode, side_grid(Side::A), side_grid(Side::B));
    else {
        const Side side = mode == OracleMode::MinB ? Side::B : Side::A;
        out = grid_one_sided(rho, mode, side_grid(side), side);
    }
    out.method = Method::Oracle;
    out.bound = constrained ? BoundKind::Lower : BoundKind::Upper;
    out.diagnostics.starts = 1;
    return out;
}

MeasureResult sampling_oracle(const DensityMatrix& rho, OracleMode mode, std::size_t samples,
                              std::uint64_t seed) {
    if (samples == 0)
        throw ValidationError(ValidationKind::OutOfRange, "sampling_oracle: samples must be positive");
    Rng rng(seed);
    const bool constrained = is_min_mode(mode);
    const bool two = mode == OracleMode::MinAB || mode == OracleMode::GmqdAB;
    const Side one_side = mode == OracleMode::MinB ? Side::B : Side::A;

    const auto ea = eig_hermitian(rho.marginal(Side::A));
    const auto eb = eig_hermitian(rho.marginal(Side::B));
    const FeasibleFamily fa = feasible_family(rho.marginal(Side::A), Side::A);
    const FeasibleFamily fb = feasible_family(rho.marginal(Side::B), Side::B);

    auto draw = [&](std::size_t s, Side side) {
        const auto& es = side == Side::A ? ea : eb;
        if (constrained) {
            const auto& fam = side == Side::A ? fa : fb;
            return s == 0 ? realize_measurement(fam, std::vector<double>(fam.free_parameter_count))
                          : feasible_sample(fam, rng);
        }
        return candidate(s, es, rng);
    };

    double best = constrained ? -1.0 : std::numeric_limits<double>::infinity();
    std::optional<ProjectiveMeasurement> arg;
    for (std::size_t s = 0; s < samples; ++s) {
        const ProjectiveMeasurement pm =
            two ? ProjectiveMeasurement::two_sided(draw(s, Side::A), draw(s, Side::B))
                : ProjectiveMeasurement::one_sided(one_side, draw(s, one_side));
        const double v = hs_norm_sq(rho.matrix() - apply_measurement(rho, pm).matrix());
        if (constrained ? v > best : v < best) {
            best = v;
            arg = pm;
        }
    }
    MeasureResult out;
    out.value = best;
    out.argmeasure = arg;
    out.method = Method::Oracle;
    out.bound = constrained ? BoundKind::Lower : BoundKind::Upper;
    out.diagnostics.starts = samples;
    out.diagnostics.evaluations = samples;
    out.diagnostics.seed = seed;
    out.diagnostics.group_dims_a = fa.group_dims();
    out.diagnostics.group_dims_b = fb.group_dims();
    return out;
}

double gmqd_direct_oracle(const DensityMatrix& rho, DirectMode mode, std::size_t samples,
                          std::uint64_t seed) {
    const Dims dims = rho.dims();
    if (dims.m > 3 || dims.n > 3)
        throw UnsupportedDimension("gmqd_direct_oracle: supports up to 3 x 3");
    if (samples == 0)
        throw ValidationError(ValidationKind::OutOfRange, "gmqd_direct_oracle: samples must be positive");
    Rng rng(seed);
    const auto m = static_cast<Eigen::Index>(dims.m);
    const auto n = static_cast<Eigen::Index>(dims.n);
    const ComplexMatrix& r = rho.matrix();
    const auto ea = eig_hermitian(rho.marginal(Side::A));
    const auto eb = eig_hermitian(rho.marginal(Side::B));

    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < samples; ++s) {
        const ComplexMatrix u = candidate(s, ea, rng);
        ComplexMatrix chi = ComplexMatrix::Zero(m * n, m * n);
        if (mode == DirectMode::OneSidedA) {
            // chi = sum_i |u_i><u_i| (x) <u_i| rho |u_i>, the optimal conditional.
            for (Eigen::Index i = 0; i < m; ++i) {
                const ComplexMatrix proj = u.col(i) * u.col(i).adjoint();
                const ComplexMatrix ket = kron(u.col(i), ComplexMatrix::Identity(n, n));
                chi += kron(proj, ket.adjoint() * r * ket);
            }
        } else {
            const ComplexMatrix v = candidate(s, eb, rng);
            for (Eigen::Index i = 0; i < m; ++i)
                for (Eigen::Index j = 0; j < n; ++j) {
                    const ComplexVector e = kron(u.col(i), v.col(j));
                    const Complex p = e.dot(r * e);
                    chi += p.real() * (e * e.adjoint());
                }
        }
        best = std::min(best, (r - chi).squaredNorm());
    }
    return best;
}

DiscontinuityProbeResult discontinuity_probe(std::size_t m, double x, double epsilon,
                                             std::uint64_t seed) {
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw ValidationError(ValidationKind::OutOfRange,
                              "discontinuity_probe: epsilon must lie in (0, 1]");
    const DensityMatrix base = werner(m, x);
    const Dims dims{m, m};
    const auto d = static_cast<Eigen::Index>(m);

    RealVector lambda(d), delta(d);
    if (m == 2) {
        lambda << 0.7, 0.3;
        delta << 0.6, 0.4;
    } else {
        const double md = static_cast<double>(m);
        for (Eigen::Index i = 0; i < d; ++i) {
            const double k = static_cast<double>(i);
            lambda(i) = 2.0 * (md - k) / (md * (md + 1.0));
            delta(i) = (2.0 * (md - k) + 1.0) / (md * (md + 2.0));
        }
    }
    const ComplexMatrix la = lambda.cast<Complex>().asDiagonal();
    const ComplexMatrix db = delta.cast<Complex>().asDiagonal();
    const ComplexMatrix f = fourier_basis(m);
    const ComplexMatrix sigma = kron(la, db);
    const ComplexMatrix sigma_unbiased = kron(la, f * db * f.adjoint());

    const double w = 1.0 / (1.0 + epsilon);
    const DensityMatrix rho_n = density_from_matrix(w * (base.matrix() + epsilon * sigma), dims);
    const DensityMatrix varrho_n =
        density_from_matrix(w * (base.matrix() + epsilon * sigma_unbiased), dims);

    auto unique_measurement = [&](const DensityMatrix& s) {
        const auto fa = feasible_family(s.marginal(Side::A), Side::A);
        const auto fb = feasible_family(s.marginal(Side::B), Side::B);
        if (!fa.is_singleton() || !fb.is_singleton())
            throw NumericalError("discontinuity_probe: perturbed marginal is degenerate; "
                                 "increase epsilon");
        return ProjectiveMeasurement::two_sided(realize_measurement(fa, {}),
                                                realize_measurement(fb, {}));
    };

    DiscontinuityProbeResult out{
        m, x, epsilon, seed, 0, 0, 0, 0, unique_measurement(rho_n), unique_measurement(varrho_n)};
    out.n_ab_product = pinch_distance_sq(rho_n.matrix(), dims, &*out.measurement_product.basis_a(),
                                         &*out.measurement_product.basis_b());
    out.n_ab_unbiased = pinch_distance_sq(varrho_n.matrix(), dims,
                                          &*out.measurement_unbiased.basis_a(),
                                          &*out.measurement_unbiased.basis_b());
    out.min_gap = std::abs(out.n_ab_unbiased - out.n_ab_product);
    out.trace_distance_between_sequences = 0.5 * trace_norm(rho_n.matrix() - varrho_n.matrix());
    return out;
}

} // namespace qmin
