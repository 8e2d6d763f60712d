#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "qmin/error.hpp"
#include "qmin/measurements.hpp"
#include "qmin/random.hpp"
#include "support/reference.hpp"

using namespace qmin;
using Catch::Matchers::WithinAbs;

namespace {

const ComplexMatrix kId2 = ComplexMatrix::Identity(2, 2);

ComplexMatrix hadamard() { return fourier_basis(2); }

DensityMatrix bell() { return pure_state(max_entangled_vector(2, 2), {2, 2}).density(); }

} // namespace

TEST_CASE("ProjectiveMeasurement construction", "[measurements]") {
    CHECK_NOTHROW(ProjectiveMeasurement::one_sided(Side::A, hadamard()));
    ComplexMatrix bad = kId2;
    bad(0, 1) = 0.1;
    CHECK_THROWS_AS(ProjectiveMeasurement::one_sided(Side::A, bad), ValidationError);
    const auto pm = ProjectiveMeasurement::two_sided(kId2, ComplexMatrix::Identity(3, 3));
    CHECK(pm.touches(Side::A));
    CHECK(pm.touches(Side::B));
    CHECK(pm.side() == MeasuredSide::AB);
}

TEST_CASE("apply_one_sided", "[measurements]") {
    ComplexMatrix d = ComplexMatrix::Zero(4, 4);
    d.diagonal() << 0.1, 0.2, 0.3, 0.4;
    const auto diag = density_from_matrix(d, {2, 2});
    const auto pa = ProjectiveMeasurement::one_sided(Side::A, kId2);
    CHECK((apply_one_sided(diag, pa).matrix() - d).norm() < 1e-15);

    ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
    expect(0, 0) = expect(3, 3) = 0.5;
    CHECK((apply_one_sided(bell(), pa).matrix() - expect).norm() < 1e-15);

    const auto rho = random_density({2, 3}, 6, 4);
    Rng rng(1);
    const ComplexMatrix u = haar_unitary(2, rng), v = haar_unitary(3, rng);
    const auto ma = ProjectiveMeasurement::one_sided(Side::A, u);
    const auto mb = ProjectiveMeasurement::one_sided(Side::B, v);
    const auto once = apply_one_sided(rho, ma);
    CHECK((once.matrix() - ref::pinch_a(rho.matrix(), u, 3)).norm() < 1e-13);
    CHECK((apply_one_sided(once, ma).matrix() - once.matrix()).norm() < 1e-13);
    CHECK((apply_one_sided(rho, mb).matrix() - ref::pinch_b(rho.matrix(), v, 2)).norm() < 1e-13);
    CHECK_THROWS_AS(apply_one_sided(rho, ProjectiveMeasurement::one_sided(Side::B, kId2)),
                    DimensionError);
}

TEST_CASE("apply_two_sided", "[measurements]") {
    const auto comp = ProjectiveMeasurement::two_sided(kId2, kId2);
    ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
    expect(0, 0) = expect(3, 3) = 0.5;
    CHECK((apply_two_sided(bell(), comp).matrix() - expect).norm() < 1e-15);

    const auto bd = bell_diagonal({0.3, -0.4, 0.5});
    CHECK((apply_two_sided(bd, comp).matrix() - ref::bell_diagonal(0, 0, 0.5)).norm() < 1e-15);

    const auto rho = random_density({2, 3}, 6, 8);
    Rng rng(2);
    const ComplexMatrix u = haar_unitary(2, rng), v = haar_unitary(3, rng);
    const auto both = apply_two_sided(rho, ProjectiveMeasurement::two_sided(u, v));
    CHECK((both.matrix() - ref::pinch_ab(rho.matrix(), u, v)).norm() < 1e-13);
    const auto ab = apply_one_sided(apply_one_sided(rho, ProjectiveMeasurement::one_sided(Side::A, u)),
                                    ProjectiveMeasurement::one_sided(Side::B, v));
    const auto ba = apply_one_sided(apply_one_sided(rho, ProjectiveMeasurement::one_sided(Side::B, v)),
                                    ProjectiveMeasurement::one_sided(Side::A, u));
    CHECK((both.matrix() - ab.matrix()).norm() < 1e-13);
    CHECK((both.matrix() - ba.matrix()).norm() < 1e-13);
    // Output commutes with every product projector.
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 3; ++j) {
            const ComplexMatrix p = ref::kron(ref::projector(u, i), ref::projector(v, j));
            CHECK((p * both.matrix() - both.matrix() * p).norm() < 1e-12);
        }
    // Pinching is an HS-orthogonal projection.
    CHECK_THAT((rho.matrix() * both.matrix()).trace().real(),
               WithinAbs((both.matrix() * both.matrix()).trace().real(), 1e-10));
}

TEST_CASE("leaves_marginal_invariant", "[measurements]") {
    Rng rng(5);
    const auto pm = ProjectiveMeasurement::one_sided(Side::A, haar_unitary(2, rng));
    CHECK(leaves_marginal_invariant(bell(), pm, 1e-9));

    ClassicalSpectrum spec;
    spec.p.resize(2, 2);
    spec.p << 0.4, 0.3, 0.2, 0.1;
    spec.basis_a = spec.basis_b = kId2;
    const auto cl = classical_state(spec);
    CHECK(leaves_marginal_invariant(cl, ProjectiveMeasurement::one_sided(Side::A, kId2), 1e-9));
    CHECK_FALSE(
        leaves_marginal_invariant(cl, ProjectiveMeasurement::one_sided(Side::A, hadamard()), 1e-9));
}

TEST_CASE("feasible_family", "[measurements]") {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d.diagonal() << 0.7, 0.3;
    const auto f1 = feasible_family(d, Side::A);
    CHECK(f1.group_dims() == std::vector<std::size_t>{1, 1});
    CHECK(f1.free_parameter_count == 0);
    CHECK(f1.is_singleton());

    const auto f2 = feasible_family(kId2 / 2.0, Side::A);
    CHECK(f2.group_dims() == std::vector<std::size_t>{2});
    CHECK(f2.free_parameter_count == 4);

    ComplexMatrix d3 = ComplexMatrix::Zero(3, 3);
    d3.diagonal() << 0.4, 0.2, 0.4;
    CHECK(feasible_family(d3, Side::B, 1e-8).group_dims() == std::vector<std::size_t>{2, 1});

    // A zero eigenspace is its own group and stays free.
    ComplexMatrix d4 = ComplexMatrix::Zero(3, 3);
    d4.diagonal() << 0.5, 0.5, 0.0;
    const auto f4 = feasible_family(d4, Side::B);
    CHECK(f4.group_dims() == std::vector<std::size_t>{2, 1});
}

TEST_CASE("realize_measurement", "[measurements]") {
    const auto fam = feasible_family(kId2 / 2.0, Side::A);
    const std::vector<double> zero(4, 0.0);
    CHECK((realize_measurement(fam, zero) - fam.groups[0].basis).norm() < 1e-15);
    CHECK_THROWS_AS(realize_measurement(fam, std::vector<double>(3, 0.0)), DimensionError);

    // G = (pi/4) sigma_x: exp(iG) maps |0> to (|0> + i|1>)/sqrt2, unbiased.
    const std::vector<double> x_rot{0.0, 0.0, std::numbers::pi / 4, 0.0};
    const ComplexMatrix u = realize_measurement(fam, x_rot);
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index k = 0; k < 2; ++k)
            CHECK_THAT(std::norm(u(i, k)), WithinAbs(0.5, 1e-14));

    ComplexMatrix deg = ComplexMatrix::Zero(3, 3);
    deg.diagonal() << 0.35, 0.35, 0.3;
    const auto f3 = feasible_family(deg, Side::A);
    Rng rng(9);
    std::uniform_real_distribution<double> ang(-3, 3);
    for (int t = 0; t < 10; ++t) {
        std::vector<double> p(f3.free_parameter_count);
        for (auto& v : p)
            v = ang(rng);
        const ComplexMatrix b = realize_measurement(f3, p);
        CHECK(orthonormality_defect(b) < 1e-10);
        CHECK((pinch(deg, b) - deg).norm() < 1e-9);
    }
}

TEST_CASE("pinch_distance_sq matches the channel", "[measurements]") {
    Rng rng(21);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto rho = random_density({2, 3}, 1 + s % 6, s);
        const ComplexMatrix u = haar_unitary(2, rng), v = haar_unitary(3, rng);
        const ComplexMatrix& r = rho.matrix();
        CHECK_THAT(pinch_distance_sq(r, {2, 3}, &u, &v),
                   WithinAbs(ref::hs_sq(r - ref::pinch_ab(r, u, v)), 1e-12));
        CHECK_THAT(pinch_distance_sq(r, {2, 3}, &u, nullptr),
                   WithinAbs(ref::hs_sq(r - ref::pinch_a(r, u, 3)), 1e-12));
        CHECK_THAT(pinch_distance_sq(r, {2, 3}, nullptr, &v),
                   WithinAbs(ref::hs_sq(r - ref::pinch_b(r, v, 2)), 1e-12));
        const RealVector diag = product_basis_diagonal(r, {2, 3}, u, v);
        CHECK_THAT(diag.sum(), WithinAbs(1.0, 1e-12));
    }
}
