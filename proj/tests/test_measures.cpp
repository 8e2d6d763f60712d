#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qmin/decompositions.hpp"
#include "qmin/measures.hpp"
#include "qmin/random.hpp"
#include "support/reference.hpp"

using namespace qmin;
using Catch::Matchers::WithinAbs;

namespace {

DensityMatrix bell() { return pure_state(max_entangled_vector(2, 2), {2, 2}).density(); }

PureState schmidt_state(std::vector<double> lambda, Dims d) {
    ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(d.total()));
    for (std::size_t k = 0; k < lambda.size(); ++k)
        psi(static_cast<Eigen::Index>(k * d.n + k)) = lambda[k];
    return pure_state(psi, d);
}

OptimizerOptions quick() {
    OptimizerOptions o;
    o.starts = 8;
    return o;
}

} // namespace

TEST_CASE("min_pure_closed_form", "[measures]") {
    ComplexVector prod = ComplexVector::Zero(4);
    prod(0) = 1;
    CHECK(min_pure_closed_form(pure_state(prod, {2, 2})) == 0.0);
    CHECK_THAT(min_pure_closed_form(pure_state(max_entangled_vector(3, 4), {3, 4})),
               WithinAbs(2.0 / 3.0, 1e-12));
    CHECK_THAT(min_pure_closed_form(schmidt_state({std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2)}, {3, 3})),
               WithinAbs(0.62, 1e-12));
}

TEST_CASE("one-sided MiN", "[measures]") {
    const auto psi = schmidt_state({std::sqrt(0.9), std::sqrt(0.1)}, {2, 2});
    const auto r = min_one_sided(psi.density(), Side::A, quick());
    CHECK_THAT(r.value, WithinAbs(0.18, 1e-12));
    CHECK(r.method == Method::ClosedForm);
    CHECK(r.bound == BoundKind::Exact);

    ComplexMatrix ra(2, 2), rb(2, 2);
    ra << 0.6, 0.2, 0.2, 0.4;
    rb << 0.5, Complex(0, 0.1), Complex(0, -0.1), 0.5;
    const auto prod = density_from_matrix(kron(ra, rb), {2, 2});
    CHECK(min_one_sided(prod, Side::A, quick()).value < 1e-12);
    CHECK(min_one_sided(prod, Side::B, quick()).value < 1e-12);

    // Mixture of maximally entangled blocks: every A basis is feasible and
    // the blocks are HS-orthogonal, so the removed weight is
    // (m - 1)/m * sum_k p_k^2 = 0.5 * (0.36 + 0.16).
    const double p[2] = {0.6, 0.4};
    const auto mm = min_one_sided(max_entangled_mixed(2, 4, p), Side::A, quick());
    CHECK_THAT(mm.value, WithinAbs(0.26, 1e-8));
    CHECK(mm.method == Method::Optimized);
    CHECK(mm.bound == BoundKind::Lower);
    CHECK(mm.diagnostics.group_dims_a == std::vector<std::size_t>{2});
}

TEST_CASE("two-sided MiN", "[measures]") {
    // Equal Schmidt coefficients let the B basis be unbiased to the
    // conjugated A basis, which removes 3/4 rather than 1/2.
    const auto b = min_two_sided(bell(), quick());
    CHECK_THAT(b.value, WithinAbs(0.75, 1e-8));
    CHECK_THAT(b.value, WithinAbs(ref::bell_diagonal_min_ab(1, -1, 1), 1e-8));
    REQUIRE(b.argmeasure);
    const ComplexMatrix r = bell().matrix();
    CHECK_THAT(ref::hs_sq(r - ref::pinch_ab(r, *b.argmeasure->basis_a(), *b.argmeasure->basis_b())),
               WithinAbs(b.value, 1e-8));

    CHECK(min_two_sided(werner(2, 0.5), quick()).value < 1e-12);
    for (double c1 : {0.3, -0.7})
        CHECK_THAT(min_two_sided(bell_diagonal({c1, 0, 0}), quick()).value,
                   WithinAbs(c1 * c1 / 4, 1e-8));
    CHECK_THAT(min_two_sided(werner(3, 0.8), quick()).value, WithinAbs(ref::werner_min_ab(3, 0.8), 1e-7));

    // Distinct Schmidt coefficients: unique feasible measurement.
    const auto psi = schmidt_state({std::sqrt(0.7), std::sqrt(0.2), std::sqrt(0.1)}, {3, 3});
    const auto e = min_two_sided(psi.density(), quick());
    CHECK(e.method == Method::ClosedForm);
    CHECK_THAT(e.value, WithinAbs(min_pure_closed_form(psi), 1e-12));
    CHECK(e.value < 4.0);
}

TEST_CASE("geometric discord", "[measures]") {
    const double q[2] = {0.3, 0.7};
    ComplexMatrix r0(2, 2), r1(2, 2);
    r0 << 0.8, 0.3, 0.3, 0.2;
    r1 << 0.5, Complex(0, 0.2), Complex(0, -0.2), 0.5;
    const auto cq = cq_state(q, fourier_basis(2), {r0, r1});
    CHECK(gmqd_one_sided(cq, Side::A, quick()).value < 1e-9);

    // Bell: Tr CC^t = 1 and the best product pinching keeps 1/2.
    const auto g2 = gmqd_two_sided(bell(), quick());
    CHECK_THAT(g2.value, WithinAbs(0.5, 1e-8));
    CHECK_THAT(g2.value, WithinAbs(ref::bell_diagonal_gmqd_ab(1, -1, 1), 1e-8));
    CHECK(g2.method == Method::CorrelationMatrix);
    CHECK(g2.bound == BoundKind::Upper);
    CHECK_THAT(gmqd_one_sided(bell(), Side::A, quick()).value, WithinAbs(0.5, 1e-8));

    const auto mixed = density_from_matrix(ComplexMatrix::Identity(4, 4) / 4.0, {2, 2});
    CHECK(gmqd_one_sided(mixed, Side::B, quick()).value < 1e-12);

    ClassicalSpectrum spec;
    spec.p.resize(2, 2);
    spec.p << 0.1, 0.2, 0.3, 0.4;
    spec.basis_a = fourier_basis(2);
    Rng rng(3);
    spec.basis_b = haar_unitary(2, rng);
    CHECK(gmqd_two_sided(classical_state(spec), quick()).value < 1e-9);
    for (double t : {-0.6, 0.4})
        CHECK(gmqd_two_sided(bell_diagonal({0, 0, t}), quick()).value < 1e-12);
    const auto bd = bell_diagonal({0.5, -0.3, 0.2});
    CHECK_THAT(gmqd_two_sided(bd, quick()).value, WithinAbs(ref::bell_diagonal_gmqd_ab(0.5, -0.3, 0.2), 1e-8));
}

TEST_CASE("mutual information and entropic discord", "[measures]") {
    ComplexMatrix ra(2, 2), rb(2, 2);
    ra << 0.6, 0.2, 0.2, 0.4;
    rb << 0.9, 0, 0, 0.1;
    const auto prod = density_from_matrix(kron(ra, rb), {2, 2});
    CHECK(std::abs(mutual_information(prod)) < 1e-9);
    CHECK_THAT(mutual_information(bell()), WithinAbs(2.0, 1e-9));
    ComplexMatrix corr = ComplexMatrix::Zero(4, 4);
    corr(0, 0) = corr(3, 3) = 0.5;
    const auto cl = density_from_matrix(corr, {2, 2});
    CHECK_THAT(mutual_information(cl), WithinAbs(1.0, 1e-9));

    CHECK(entropic_discord_two_sided(cl, quick()).value < 1e-9);
    CHECK(entropic_discord_two_sided(prod, quick()).value < 1e-9);
    const auto e = entropic_discord_two_sided(bell(), quick());
    CHECK_THAT(e.value, WithinAbs(1.0, 1e-7));
    CHECK(e.bound == BoundKind::Upper);
    CHECK(e.diagnostics.heuristic);
}

TEST_CASE("result is reproducible from its measurement", "[measures]") {
    const auto rho = random_density({2, 2}, 2, 13);
    const auto r = min_two_sided(rho, quick());
    REQUIRE(r.argmeasure);
    const ComplexMatrix& m = rho.matrix();
    CHECK_THAT(ref::hs_sq(m - ref::pinch_ab(m, *r.argmeasure->basis_a(), *r.argmeasure->basis_b())),
               WithinAbs(r.value, 1e-8));
    const auto again = min_two_sided(rho, quick());
    CHECK(again.value == r.value);
}
