#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qmin/error.hpp"
#include "qmin/optimize.hpp"

using namespace qmin;
using Catch::Matchers::WithinAbs;

TEST_CASE("maximize finds a smooth maximum", "[optimize]") {
    // Peak value 2 at (1, -0.5, 0.25).
    auto f = [](std::span<const double> x) {
        return 2.0 - (x[0] - 1) * (x[0] - 1) - 2 * (x[1] + 0.5) * (x[1] + 0.5) -
               3 * (x[2] - 0.25) * (x[2] - 0.25);
    };
    OptimizerOptions o;
    o.starts = 4;
    const auto r = maximize(f, 3, o);
    CHECK_THAT(r.value, WithinAbs(2.0, 1e-8));
    CHECK_THAT(r.params(0), WithinAbs(1.0, 1e-3));
    CHECK(r.best_trace.size() == 4);
    CHECK(r.starts == 4);
}

TEST_CASE("maximize is deterministic and thread independent", "[optimize]") {
    auto f = [](std::span<const double> x) {
        return std::cos(3 * x[0]) * std::sin(2 * x[1]) + 0.1 * std::cos(x[0] + x[1]);
    };
    OptimizerOptions o;
    o.starts = 8;
    o.seed = 77;
    const auto a = maximize(f, 2, o);
    const auto b = maximize(f, 2, o);
    o.threads = 3;
    const auto c = maximize(f, 2, o);
    CHECK(a.value == b.value);
    CHECK(a.params == b.params);
    CHECK(a.value == c.value);
    CHECK(a.best_start == c.best_start);
}

TEST_CASE("ties go to the lowest start", "[optimize]") {
    auto flat = [](std::span<const double>) { return 1.0; };
    OptimizerOptions o;
    o.starts = 5;
    const auto r = maximize(flat, 2, o);
    CHECK(r.best_start == 0);
    CHECK(r.params.isZero());
}

TEST_CASE("zero-dimensional problems evaluate once", "[optimize]") {
    int calls = 0;
    auto f = [&](std::span<const double> x) {
        ++calls;
        return static_cast<double>(x.size()) + 0.5;
    };
    const auto r = maximize(f, 0, {});
    CHECK(calls == 1);
    CHECK(r.value == 0.5);
}

TEST_CASE("options are validated", "[optimize]") {
    OptimizerOptions o;
    o.starts = 0;
    CHECK_THROWS_AS(o.validate(), ValidationError);
    o = {};
    o.convergence_tol = 0;
    CHECK_THROWS_AS(o.validate(), ValidationError);
    o = {};
    CHECK_NOTHROW(o.validate());
}
