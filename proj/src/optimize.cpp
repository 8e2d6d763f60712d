#include "qmin/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <thread>

#include "qmin/error.hpp"

namespace qmin {
namespace {

constexpr double kInitialStep = 0.6;
constexpr std::size_t kMaxRestarts = 6;
// Final refinement of the winning point, far below the start tolerance.
constexpr double kPolishTol = 1e-15;
constexpr double kPolishStep = 1e-2;

struct StartOutcome {
    RealVector x;
    double value = 0;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
};

// Minimizes g = -f. Returns when the simplex value spread drops below tol or
// the iteration budget runs out.
class NelderMead {
public:
    NelderMead(const Objective& f, std::size_t dim, double tol)
        : f_(f), dim_(static_cast<Eigen::Index>(dim)), tol_(tol) {}

    std::size_t evaluations = 0;

    double g(const RealVector& x) {
        ++evaluations;
        const double v = f_(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
        return std::isfinite(v) ? -v : std::numeric_limits<double>::infinity();
    }

    // Runs from a simplex around x0; returns iterations used.
    std::size_t run(RealVector& x, double& gx, double step, std::size_t budget) {
        const Eigen::Index n = dim_;
        std::vector<RealVector> pts(static_cast<std::size_t>(n + 1), x);
        std::vector<double> vals(static_cast<std::size_t>(n + 1), gx);
        for (Eigen::Index i = 0; i < n; ++i) {
            auto& p = pts[static_cast<std::size_t>(i + 1)];
            p(i) += step;
            vals[static_cast<std::size_t>(i + 1)] = g(p);
        }
        std::vector<std::size_t> order(pts.size());

        std::size_t it = 0;
        for (; it < budget; ++it) {
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
            const std::size_t best = order.front(), worst = order.back();
            const std::size_t second = order[order.size() - 2];
            if (vals[worst] - vals[best] < tol_)
                break;

            RealVector centroid = RealVector::Zero(n);
            for (std::size_t k = 0; k + 1 < order.size(); ++k)
                centroid += pts[order[k]];
            centroid /= static_cast<double>(n);

            const RealVector xr = centroid + (centroid - pts[worst]);
            const double gr = g(xr);
            if (gr < vals[best]) {
                const RealVector xe = centroid + 2.0 * (centroid - pts[worst]);
                const double ge = g(xe);
                if (ge < gr) {
                    pts[worst] = xe;
                    vals[worst] = ge;
                } else {
                    pts[worst] = xr;
                    vals[worst] = gr;
                }
                continue;
            }
            if (gr < vals[second]) {
                pts[worst] = xr;
                vals[worst] = gr;
                continue;
            }
            const bool outside = gr < vals[worst];
            const RealVector xc = outside ? RealVector(centroid + 0.5 * (xr - centroid))
                                          : RealVector(centroid + 0.5 * (pts[worst] - centroid));
            const double gc = g(xc);
            if (gc < (outside ? gr : vals[worst])) {
                pts[worst] = xc;
                vals[worst] = gc;
                continue;
            }
            for (std::size_t k = 1; k < order.size(); ++k) {
                auto& p = pts[order[k]];
                p = pts[best] + 0.5 * (p - pts[best]);
                vals[order[k]] = g(p);
            }
        }
        const auto best = static_cast<std::size_t>(
            std::min_element(vals.begin(), vals.end()) - vals.begin());
        x = pts[best];
        gx = vals[best];
        return it;
    }

private:
    const Objective& f_;
    Eigen::Index dim_;
    double tol_;
};

RealVector start_point(std::size_t index, std::size_t dim, std::uint64_t seed) {
    RealVector x = RealVector::Zero(static_cast<Eigen::Index>(dim));
    if (index == 0)
        return x;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    for (Eigen::Index i = 0; i < x.size(); ++i)
        x(i) = u(rng);
    return x;
}

StartOutcome run_start(const Objective& f, std::size_t dim, std::size_t index,
                       const OptimizerOptions& opts) {
    NelderMead nm(f, dim, opts.convergence_tol);
    StartOutcome out;
    out.x = start_point(index, dim, opts.seed);
    double gx = nm.g(out.x);
    std::size_t budget = opts.max_iterations;
    double step = kInitialStep;
    for (std::size_t r = 0; r <= kMaxRestarts && budget > 0; ++r) {
        const double before = gx;
        const std::size_t used = nm.run(out.x, gx, step, budget);
        out.iterations += used;
        budget -= std::min(budget, std::max<std::size_t>(used, 1));
        if (r > 0 && before - gx < opts.convergence_tol)
            break;
        step = std::max(0.1 * step, 1e-3);
    }
    out.value = -gx;
    out.evaluations = nm.evaluations;
    return out;
}

// Small-simplex restarts from the selected point. Only ever moves uphill, so
// the basin chosen by the start-order reduction is kept.
void polish(const Objective& f, std::size_t dim, std::size_t budget, SearchResult& res) {
    NelderMead nm(f, dim, kPolishTol);
    RealVector x = res.params;
    double gx = nm.g(x);
    double step = kPolishStep;
    for (std::size_t r = 0; r <= kMaxRestarts && budget > 0; ++r) {
        const double before = gx;
        const std::size_t used = nm.run(x, gx, step, budget);
        res.iterations += used;
        budget -= std::min(budget, std::max<std::size_t>(used, 1));
        if (before - gx <= kPolishTol)
            break;
        step *= 0.1;
    }
    res.evaluations += nm.evaluations;
    if (-gx > res.value) {
        res.value = -gx;
        res.params = x;
    }
}

} // namespace

void OptimizerOptions::validate() const {
    if (starts == 0 || max_iterations == 0 || threads == 0)
        throw ValidationError(ValidationKind::OutOfRange,
                              "optimizer counts (starts, iterations, threads) must be positive");
    if (!(convergence_tol > 0) || !(degeneracy_tol > 0))
        throw ValidationError(ValidationKind::OutOfRange,
                              "optimizer tolerances must be positive");
}

SearchResult maximize(const Objective& f, std::size_t dim, const OptimizerOptions& opts) {
    opts.validate();
    SearchResult res;
    if (dim == 0) {
        res.params = RealVector();
        res.value = f({});
        res.starts = 1;
        res.evaluations = 1;
        res.best_trace = {res.value};
        return res;
    }

    std::vector<StartOutcome> outcomes(opts.starts);
    const std::size_t workers = std::min(opts.threads, opts.starts);
    if (workers <= 1) {
        for (std::size_t s = 0; s < opts.starts; ++s)
            outcomes[s] = run_start(f, dim, s, opts);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t s = w; s < opts.starts; s += workers)
                    outcomes[s] = run_start(f, dim, s, opts);
            });
        for (auto& t : pool)
            t.join();
    }

    // Reduction in start order: a later start must beat the incumbent by
    // more than the tolerance to take over.
    res.starts = opts.starts;
    for (std::size_t s = 0; s < outcomes.size(); ++s) {
        const auto& o = outcomes[s];
        res.iterations += o.iterations;
        res.evaluations += o.evaluations;
        if (s == 0 || o.value > res.value + opts.convergence_tol) {
            res.value = o.value;
            res.params = o.x;
            res.best_start = s;
        }
        res.best_trace.push_back(res.value);
    }
    polish(f, dim, opts.max_iterations, res);
    return res;
}

} // namespace qmin
