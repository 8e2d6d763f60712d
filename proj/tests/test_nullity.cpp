#include <catch2/catch_amalgamated.hpp>

#include "qmin/error.hpp"
#include "qmin/measures.hpp"
#include "qmin/nullity.hpp"
#include "qmin/random.hpp"

using namespace qmin;

namespace {

constexpr double kTol = 1e-8;

DensityMatrix cq_equal_weights(const ComplexMatrix& r0, const ComplexMatrix& r1) {
    const double p[2] = {0.5, 0.5};
    return cq_state(p, ComplexMatrix::Identity(2, 2), {r0, r1});
}

DensityMatrix classical(RealMatrix p, ComplexMatrix ua, ComplexMatrix ub) {
    return classical_state({std::move(p), std::move(ua), std::move(ub)});
}

} // namespace

TEST_CASE("one-sided nullity", "[nullity]") {
    ComplexMatrix r0(2, 2), r1(2, 2);
    r0 << 0.8, 0.3, 0.3, 0.2;
    r1 << 0.5, Complex(0, 0.2), Complex(0, -0.2), 0.5;
    const double q[2] = {0.3, 0.7};
    const auto cq = cq_state(q, fourier_basis(2), {r0, r1});
    const auto ok = is_zero_min_one_sided(cq, Side::A, kTol);
    CHECK(ok.is_zero);
    REQUIRE(ok.certificate);
    CHECK(ok.margin > 0);

    const auto witness = is_zero_min_one_sided(cq_equal_weights(r0, r1), Side::A, kTol);
    CHECK_FALSE(witness.is_zero);
    CHECK(witness.violation == NullityViolation::DegeneracyConsistency);
    REQUIRE(witness.witness);
    CHECK(witness.witness->i == 0);
    CHECK(witness.witness->j == 1);
    CHECK(witness.margin < 0);

    const auto bell = pure_state(max_entangled_vector(2, 2), {2, 2}).density();
    const auto b = is_zero_min_one_sided(bell, Side::A, kTol);
    CHECK_FALSE(b.is_zero);
    CHECK(b.violation == NullityViolation::NonCommutingBlocks);
}

TEST_CASE("two-sided nullity", "[nullity]") {
    RealMatrix p(2, 3);
    p << 0.05, 0.1, 0.15, 0.2, 0.2, 0.3;
    Rng rng(6);
    const auto cl = classical(p, haar_unitary(2, rng), haar_unitary(3, rng));
    const auto r = is_zero_min_two_sided(cl, kTol);
    CHECK(r.is_zero);
    REQUIRE(r.certificate);
    CHECK(r.certificate->rebuild_residual < 1e-9);
    CHECK(check_block_operators(cl, kTol).is_zero);

    ComplexMatrix ra(2, 2), rb(2, 2);
    ra << 0.6, 0.0, 0.0, 0.4;
    rb << 0.9, 0, 0, 0.1;
    CHECK(is_zero_min_two_sided(density_from_matrix(kron(ra, rb), {2, 2}), kTol).is_zero);

    // Equal column sums, unequal columns.
    RealMatrix bad(2, 2);
    bad << 0.3, 0.2, 0.2, 0.3;
    const auto inc = classical(bad, ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2));
    const auto ri = is_zero_min_two_sided(inc, kTol);
    CHECK_FALSE(ri.is_zero);
    CHECK(ri.violation == NullityViolation::DegeneracyConsistency);
    const auto t4 = check_block_operators(inc, kTol);
    CHECK_FALSE(t4.is_zero);
    CHECK(t4.violation == NullityViolation::EigenspaceNotContained);

    CHECK(is_zero_min_two_sided(werner(2, 0.5), kTol).is_zero);
    CHECK(is_zero_min_two_sided(werner(3, 1.0 / 3.0), kTol).is_zero);
    CHECK_FALSE(is_zero_min_two_sided(werner(2, 0.9), kTol).is_zero);
}

TEST_CASE("operator-condition test", "[nullity]") {
    // The blocks I/4 and 0.2 sigma_x commute, but sigma_x mixes the
    // degenerate eigenspace of the B marginal.
    const auto bd = bell_diagonal({0.8, 0, 0});
    const auto r = check_block_operators(bd, kTol);
    CHECK_FALSE(r.is_zero);
    CHECK(r.violation == NullityViolation::EigenspaceNotContained);

    const auto bell = check_block_operators(pure_state(max_entangled_vector(2, 2), {2, 2}).density(), kTol);
    CHECK(bell.violation == NullityViolation::NonCommutingBlocks);
    REQUIRE(bell.witness);
    CHECK(bell.witness->residual > 0.01);

    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto rho = random_density({2, 2}, 1 + s % 4, s);
        CHECK(check_block_operators(rho, kTol).is_zero == is_zero_min_two_sided(rho, kTol).is_zero);
    }
}

TEST_CASE("depolarize", "[nullity]") {
    const auto bell = pure_state(max_entangled_vector(2, 2), {2, 2}).density();
    CHECK((depolarize(bell, 1.0).matrix() - bell.matrix()).norm() < 1e-15);
    CHECK((depolarize(bell, 0.0).matrix() - ComplexMatrix::Identity(4, 4) / 4.0).norm() < 1e-15);
    CHECK_THROWS_AS(depolarize(bell, 1.5), ValidationError);

    RealMatrix p(2, 2);
    p << 0.1, 0.2, 0.3, 0.4;
    Rng rng(2);
    const auto cl = classical(p, haar_unitary(2, rng), haar_unitary(2, rng));
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0})
        CHECK(is_zero_min_two_sided(depolarize(cl, t), kTol).is_zero);
}
