#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qmin/algebra.hpp"
#include "qmin/error.hpp"
#include "qmin/random.hpp"
#include "qmin/states.hpp"
#include "support/reference.hpp"

using namespace qmin;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("hs_norm_sq basic values", "[algebra]") {
    CHECK(hs_norm_sq(ComplexMatrix::Zero(2, 2)) == 0.0);
    CHECK_THAT(hs_norm_sq(ComplexMatrix::Identity(2, 2)), WithinAbs(2.0, 1e-15));
    CHECK_THAT(hs_norm_sq(pauli(1)), WithinAbs(ref::hs_sq(ref::pauli(1)), 1e-15));
    CHECK_THROWS_AS(hs_norm_sq(ComplexMatrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("hs_norm_sq is unitarily invariant", "[algebra]") {
    Rng rng(11);
    for (int t = 0; t < 10; ++t) {
        const ComplexMatrix m = gaussian_matrix(4, 4, rng);
        const ComplexMatrix u = haar_unitary(4, rng), v = haar_unitary(4, rng);
        CHECK_THAT(hs_norm_sq(u * m * v), WithinRel(hs_norm_sq(m), 1e-9));
    }
}

TEST_CASE("partial trace", "[algebra]") {
    SECTION("product state factorizes") {
        ComplexMatrix ra(2, 2), rb(3, 3);
        ra << 0.7, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3;
        rb << 0.5, 0, 0.1, 0, 0.3, 0, 0.1, 0, 0.2;
        const ComplexMatrix rho = kron(ra, rb);
        CHECK((partial_trace(rho, {2, 3}, Side::B) - ra).norm() < 1e-14);
        CHECK((partial_trace(rho, {2, 3}, Side::A) - rb).norm() < 1e-14);
    }
    SECTION("Bell state has maximally mixed marginal") {
        const auto bell = pure_state(max_entangled_vector(2, 2), {2, 2}).density();
        const ComplexMatrix half = ComplexMatrix::Identity(2, 2) / 2.0;
        CHECK((partial_trace(bell.matrix(), {2, 2}, Side::B) - half).norm() < 1e-15);
    }
    SECTION("Werner marginal") {
        const ComplexMatrix w = ref::werner(2, 0.3);
        CHECK((partial_trace(w, {2, 2}, Side::A) - ComplexMatrix::Identity(2, 2) / 2.0).norm() <
              1e-15);
    }
    SECTION("matches loop reference and preserves trace") {
        const auto rho = random_density({2, 3}, 6, 5);
        const ComplexMatrix pa = partial_trace(rho.matrix(), {2, 3}, Side::B);
        const ComplexMatrix pb = partial_trace(rho.matrix(), {2, 3}, Side::A);
        CHECK((pa - ref::trace_b(rho.matrix(), 2, 3)).norm() < 1e-14);
        CHECK((pb - ref::trace_a(rho.matrix(), 2, 3)).norm() < 1e-14);
        CHECK_THAT(pa.trace().real(), WithinAbs(1.0, 1e-10));
        CHECK_THAT(pb.trace().real(), WithinAbs(1.0, 1e-10));
    }
    CHECK_THROWS_AS(partial_trace(ComplexMatrix::Zero(4, 4), {2, 3}, Side::A), DimensionError);
}

TEST_CASE("partial transpose", "[algebra]") {
    ComplexMatrix diag = ComplexMatrix::Zero(4, 4);
    diag.diagonal() << 0.1, 0.2, 0.3, 0.4;
    CHECK(partial_transpose(diag, {2, 2}, Side::A) == diag);

    const auto bell = pure_state(max_entangled_vector(2, 2), {2, 2}).density();
    const auto es = eig_hermitian(partial_transpose(bell.matrix(), {2, 2}, Side::B));
    CHECK_THAT(es.eigenvalues(3), WithinAbs(-0.5, 1e-12));

    const auto rho = random_density({2, 3}, 3, 9);
    for (Side s : {Side::A, Side::B}) {
        const ComplexMatrix twice =
            partial_transpose(partial_transpose(rho.matrix(), {2, 3}, s), {2, 3}, s);
        CHECK(twice == rho.matrix());
    }
}

TEST_CASE("eig_hermitian grouping and phase", "[algebra]") {
    const auto half = eig_hermitian(ComplexMatrix::Identity(2, 2) / 2.0);
    CHECK(half.groups.size() == 1);
    CHECK_THAT(half.eigenvalues(0), WithinAbs(0.5, 1e-15));

    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d.diagonal() << 0.3, 0.7;
    const auto es = eig_hermitian(d);
    CHECK(es.groups.size() == 2);
    CHECK_THAT(es.eigenvalues(0), WithinAbs(0.7, 1e-15));

    ComplexMatrix near = ComplexMatrix::Zero(3, 3);
    near.diagonal() << 0.5, 0.5 - 1e-12, 0.1;
    CHECK(eig_hermitian(near, 1e-8).groups.size() == 2);
    CHECK(eig_hermitian(near, 1e-14).groups.size() == 3);

    Rng rng(3);
    const ComplexMatrix g = gaussian_matrix(5, 5, rng);
    const ComplexMatrix h = g + g.adjoint();
    const auto e = eig_hermitian(h);
    const ComplexMatrix rebuilt =
        e.eigenvectors * e.eigenvalues.cast<Complex>().asDiagonal() * e.eigenvectors.adjoint();
    CHECK(std::sqrt(hs_norm_sq(rebuilt - h)) < 1e-10);
    for (Eigen::Index k = 0; k < 5; ++k) {
        Eigen::Index arg;
        e.eigenvectors.col(k).cwiseAbs().maxCoeff(&arg);
        CHECK(e.eigenvectors(arg, k).imag() == 0.0);
        CHECK(e.eigenvectors(arg, k).real() > 0.0);
    }

    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(eig_hermitian(bad), ValidationError);
}

TEST_CASE("schmidt_decompose", "[algebra]") {
    ComplexVector prod = ComplexVector::Zero(4);
    prod(0) = 1.0;
    CHECK(schmidt_decompose(prod, {2, 2}).coefficients.size() == 1);

    const auto bell = schmidt_decompose(max_entangled_vector(2, 2), {2, 2});
    CHECK_THAT(bell.coefficients(0), WithinAbs(1 / std::sqrt(2.0), 1e-12));
    CHECK_THAT(bell.coefficients(1), WithinAbs(1 / std::sqrt(2.0), 1e-12));

    ComplexVector psi = ComplexVector::Zero(4);
    psi(0) = std::sqrt(0.8);
    psi(3) = std::sqrt(0.2);
    const auto s = schmidt_decompose(psi, {2, 2});
    CHECK_THAT(s.coefficients(0), WithinAbs(std::sqrt(0.8), 1e-12));
    CHECK_THAT(s.coefficients(1), WithinAbs(std::sqrt(0.2), 1e-12));

    CHECK_THROWS_AS(schmidt_decompose(2.0 * psi, {2, 2}), ValidationError);

    // Squared coefficients are the spectrum of the reduced state, and the
    // decomposition rebuilds the vector.
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto p = random_pure({3, 4}, seed);
        const auto& sd = p.schmidt();
        const auto es = eig_hermitian(ref::trace_b(p.density().matrix(), 3, 4));
        for (Eigen::Index k = 0; k < sd.coefficients.size(); ++k)
            CHECK_THAT(sd.coefficients(k) * sd.coefficients(k), WithinAbs(es.eigenvalues(k), 1e-9));
        ComplexVector rebuilt = ComplexVector::Zero(12);
        for (Eigen::Index k = 0; k < sd.coefficients.size(); ++k)
            rebuilt += sd.coefficients(k) * ref::kron(sd.left.col(k), sd.right.col(k));
        CHECK(std::abs(std::abs(rebuilt.dot(p.vector())) - 1.0) < 1e-9);
    }
}

TEST_CASE("von_neumann_entropy", "[algebra]") {
    const auto pure = pure_state(max_entangled_vector(2, 2), {2, 2}).density();
    CHECK_THAT(von_neumann_entropy(pure.matrix()), WithinAbs(0.0, 1e-12));
    CHECK_THAT(von_neumann_entropy(ComplexMatrix::Identity(2, 2) / 2.0), WithinAbs(1.0, 1e-14));
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d.diagonal() << 0.5, 0.25, 0.25;
    // -0.5 log 0.5 - 2 * 0.25 log 0.25 = 0.5 + 1
    CHECK_THAT(von_neumann_entropy(d), WithinAbs(1.5, 1e-14));
    ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
    neg.diagonal() << 1.5, -0.5;
    CHECK_THROWS_AS(von_neumann_entropy(neg), ValidationError);
}
