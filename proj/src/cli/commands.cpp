#include "qmin/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "qmin/decompositions.hpp"
#include "qmin/error.hpp"
#include "qmin/nullity.hpp"
#include "qmin/oracle.hpp"
#include "qmin/state_io.hpp"

namespace qmin::cli {
namespace {

using nlohmann::json;

struct Common {
    std::uint64_t seed = 0;
    std::size_t starts = 32;
    std::size_t max_iterations = 400;
    std::optional<double> tol;
    double degeneracy_tol = kDefaultDegeneracyTol;
    std::string format;  ///< empty: the verb's default
    std::size_t threads = 1;

    [[nodiscard]] OptimizerOptions optimizer() const {
        OptimizerOptions o;
        o.starts = starts;
        o.max_iterations = max_iterations;
        o.convergence_tol = tol.value_or(o.convergence_tol);
        o.seed = seed;
        o.degeneracy_tol = degeneracy_tol;
        o.threads = threads;
        return o;
    }
};

void add_common(CLI::App* sub, Common& c, const std::string& tol_help) {
    sub->add_option("--seed", c.seed, "Seed for random starts and random states");
    sub->add_option("--starts", c.starts, "Optimizer starts")->check(CLI::PositiveNumber);
    sub->add_option("--max-iterations", c.max_iterations, "Optimizer iterations per start")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol", c.tol, tol_help);
    sub->add_option("--degeneracy-tol", c.degeneracy_tol, "Eigenvalue grouping tolerance");
    sub->add_option("--format", c.format, "Output format (sweep defaults to csv, others json)")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
}

void add_state(CLI::App* sub, StateSpec& s) {
    sub->add_option("--state", s.family,
                    "bell | werner | isotropic | bell-diagonal | memes | pure | random | "
                    "classical | cq-witness | file:<path>");
    sub->add_option("--m", s.m, "Dimension of A")->check(CLI::PositiveNumber);
    sub->add_option("--n", s.n, "Dimension of B");
    sub->add_option("--x", s.x, "Werner / isotropic parameter");
    sub->add_option("--c", s.c, "Bell-diagonal coefficients c1,c2,c3")->delimiter(',');
    sub->add_option("--p", s.p, "Weights (memes) or row-major table (classical)")
        ->delimiter(',');
    sub->add_option("--schmidt", s.schmidt, "Schmidt coefficients (pure)")->delimiter(',');
    sub->add_option("--rank", s.rank, "Rank of a random state (0: full)");
    sub->add_option("--state-seed", s.state_seed, "Seed for random states (default --seed)");
}

std::string timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

json real_matrix_to_json(const RealMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json measurement_to_json(const ProjectiveMeasurement& pm) {
    json j{{"side", to_string(pm.side())}};
    if (pm.basis_a())
        j["basis_a"] = matrix_to_json(*pm.basis_a());
    if (pm.basis_b())
        j["basis_b"] = matrix_to_json(*pm.basis_b());
    return j;
}

json header(const StateSpec& spec, const Common& c) {
    return {{"tool", "qmin"}, {"version", kVersion}, {"timestamp", timestamp()},
            {"seed", c.seed},  {"input", describe(spec)}};
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

MeasureResult compute_one(const DensityMatrix& rho, const std::string& measure,
                          const OptimizerOptions& o) {
    if (measure == "n_a") return min_one_sided(rho, Side::A, o);
    if (measure == "n_b") return min_one_sided(rho, Side::B, o);
    if (measure == "n_ab") return min_two_sided(rho, o);
    if (measure == "d_g_a") return gmqd_one_sided(rho, Side::A, o);
    if (measure == "d_g_ab") return gmqd_two_sided(rho, o);
    if (measure == "d_ab_entropic") return entropic_discord_two_sided(rho, o);
    throw UsageError("unknown measure '" + measure + "'");
}

const std::vector<std::string> kMeasures = {"n_a",   "n_b",    "n_ab",          "d_g_a",
                                            "d_g_ab", "d_ab_entropic", "bounds"};

int cmd_compute(const StateSpec& spec, const Common& c, const std::string& measure,
                const std::string& dump_path, std::ostream& out) {
    const DensityMatrix rho = build_state(spec, c.seed);
    if (!dump_path.empty())
        save_state(rho, dump_path);
    const OptimizerOptions o = c.optimizer();

    json rec = header(spec, c);
    rec["measure"] = measure;
    if (measure == "bounds") {
        const auto lb_a = gmqd_lower_bound(rho, PinchMode::OneSidedA);
        const auto lb_ab = gmqd_lower_bound(rho, PinchMode::TwoSided);
        json measured;
        for (const char* name : {"n_a", "n_b", "n_ab", "d_g_a", "d_g_ab"}) {
            const auto r = compute_one(rho, name, o);
            measured[name] = {{"value", r.value}, {"method", to_string(r.method)},
                              {"bound", to_string(r.bound)}};
        }
        rec["lower_bounds"] = {
            {"d_g_a", {{"value", lb_a.value}, {"negative", lb_a.negative}, {"terms", lb_a.terms}}},
            {"d_g_ab",
             {{"value", lb_ab.value}, {"negative", lb_ab.negative}, {"terms", lb_ab.terms}}},
            {"trace_cct", lb_ab.trace_cct}};
        rec["measured"] = measured;
        if (c.format == "csv") {
            out << "quantity,value\n";
            out << "d_g_a_lower," << fmt(lb_a.value) << '\n';
            out << "d_g_ab_lower," << fmt(lb_ab.value) << '\n';
            for (auto it = measured.begin(); it != measured.end(); ++it)
                out << it.key() << ',' << fmt(it.value()["value"].get<double>()) << '\n';
            return kOk;
        }
        out << rec.dump() << '\n';
        return kOk;
    }

    const MeasureResult r = compute_one(rho, measure, o);
    if (c.format == "csv") {
        out << "measure,value,method,bound\n"
            << measure << ',' << fmt(r.value) << ',' << to_string(r.method) << ','
            << to_string(r.bound) << '\n';
        return kOk;
    }
    rec.update(measure_to_json(r));
    out << rec.dump() << '\n';
    return kOk;
}

struct SweepArgs {
    std::string family = "werner";
    double from = 0.0, to = 1.0;
    std::size_t points = 101;
    std::vector<double> pins;
    bool no_pin = false;
    std::vector<double> direction{0.0, 0.0, 1.0};
    std::vector<std::string> measures{"n_ab"};
};

int cmd_sweep(const SweepArgs& a, const StateSpec& base, const Common& c, std::ostream& out) {
    if (a.family != "werner" && a.family != "isotropic" && a.family != "bell-diagonal")
        throw UsageError("sweep supports werner, isotropic and bell-diagonal");
    if (a.points < 2)
        throw UsageError("--points must be at least 2");
    if (a.family == "bell-diagonal" && a.direction.size() != 3)
        throw UsageError("--direction needs three components");
    for (const auto& m : a.measures)
        if (m == "bounds" || std::find(kMeasures.begin(), kMeasures.end(), m) == kMeasures.end())
            throw UsageError("unknown sweep measure '" + m + "'");

    std::vector<double> pins = a.pins;
    if (pins.empty() && !a.no_pin) {
        const double md = static_cast<double>(base.m);
        if (a.family == "werner") pins = {1.0 / md};
        if (a.family == "isotropic") pins = {1.0 / (md * md)};
    }
    const auto grid = sweep_grid(a.from, a.to, a.points, pins);
    auto state_at = [&](double t) {
        StateSpec s = base;
        if (a.family == "bell-diagonal") {
            s.family = "bell-diagonal";
            s.c = {t * a.direction[0], t * a.direction[1], t * a.direction[2]};
        } else {
            s.family = a.family;
            s.x = t;
        }
        return build_state(s, c.seed);
    };

    Common per_point = c;
    per_point.threads = 1;
    const OptimizerOptions o = per_point.optimizer();
    std::vector<std::vector<MeasureResult>> rows(grid.size());
    std::vector<std::string> failures(grid.size());
    auto work = [&](std::size_t k) {
        try {
            const DensityMatrix rho = state_at(grid[k]);
            for (const auto& m : a.measures)
                rows[k].push_back(compute_one(rho, m, o));
        } catch (const std::exception& e) {
            failures[k] = e.what();
        }
    };
    const std::size_t workers = std::min(c.threads, grid.size());
    if (workers <= 1) {
        for (std::size_t k = 0; k < grid.size(); ++k)
            work(k);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t k = w; k < grid.size(); k += workers)
                    work(k);
            });
        for (auto& t : pool)
            t.join();
    }
    for (std::size_t k = 0; k < grid.size(); ++k)
        if (!failures[k].empty())
            throw ValidationError(ValidationKind::OutOfRange,
                                  "sweep point " + fmt(grid[k]) + ": " + failures[k]);

    const std::string param = a.family == "bell-diagonal" ? "t" : "x";
    if (c.format == "json") {
        for (std::size_t k = 0; k < grid.size(); ++k) {
            json row{{param, grid[k]}};
            for (std::size_t i = 0; i < a.measures.size(); ++i)
                row[a.measures[i]] = {{"value", rows[k][i].value},
                                      {"method", to_string(rows[k][i].method)}};
            out << row.dump() << '\n';
        }
        return kOk;
    }
    out << param;
    for (const auto& m : a.measures)
        out << ',' << m << ',' << m << "_method";
    out << '\n';
    for (std::size_t k = 0; k < grid.size(); ++k) {
        out << fmt(grid[k]);
        for (const auto& r : rows[k])
            out << ',' << fmt(r.value) << ',' << to_string(r.method);
        out << '\n';
    }
    return kOk;
}

json report_to_json(const NullityReport& r) {
    json j{{"is_zero", r.is_zero},           {"violation", to_string(r.violation)},
           {"max_residual", r.max_residual}, {"margin", r.margin},
           {"tol", r.tol}};
    if (r.witness)
        j["witness"] = {{"i", r.witness->i},
                        {"j", r.witness->j},
                        {"residual", r.witness->residual},
                        {"side", to_string(r.witness->side)}};
    if (r.certificate) {
        json cert;
        if (r.certificate->basis_a.size() > 0)
            cert["basis_a"] = matrix_to_json(r.certificate->basis_a);
        if (r.certificate->basis_b.size() > 0)
            cert["basis_b"] = matrix_to_json(r.certificate->basis_b);
        if (r.certificate->p.size() > 0) {
            cert["p"] = real_matrix_to_json(r.certificate->p);
            cert["rebuild_residual"] = r.certificate->rebuild_residual;
        }
        j["certificate"] = cert;
    }
    return j;
}

int cmd_check_null(const StateSpec& spec, const Common& c, const std::string& side,
                   std::ostream& out) {
    const DensityMatrix rho = build_state(spec, c.seed);
    const double tol = c.tol.value_or(1e-8);
    json rec = header(spec, c);
    rec["side"] = side;
    NullityReport r;
    if (side == "A" || side == "B") {
        r = is_zero_min_one_sided(rho, side == "A" ? Side::A : Side::B, tol, c.degeneracy_tol);
    } else {
        r = is_zero_min_two_sided(rho, tol, c.degeneracy_tol);
        const NullityReport op = check_block_operators(rho, tol, c.degeneracy_tol);
        rec["operator_test"] = {{"is_zero", op.is_zero},
                                {"violation", to_string(op.violation)},
                                {"max_residual", op.max_residual}};
        rec["agree"] = op.is_zero == r.is_zero;
    }
    rec["report"] = report_to_json(r);
    if (c.format == "csv") {
        out << "side,is_zero,violation,max_residual,margin\n"
            << side << ',' << (r.is_zero ? "true" : "false") << ',' << to_string(r.violation)
            << ',' << fmt(r.max_residual) << ',' << fmt(r.margin) << '\n';
        return kOk;
    }
    out << rec.dump() << '\n';
    return kOk;
}

int cmd_demo(std::size_t m, double x, const std::vector<double>& eps, const Common& c,
             std::ostream& out) {
    if (eps.empty())
        throw UsageError("--eps needs at least one value");
    std::vector<DiscontinuityProbeResult> rows;
    for (double e : eps)
        rows.push_back(discontinuity_probe(m, x, e, c.seed));
    if (c.format == "csv") {
        out << "epsilon,trace_distance,n_ab_product,n_ab_unbiased,gap\n";
        for (const auto& r : rows)
            out << fmt(r.epsilon) << ',' << fmt(r.trace_distance_between_sequences) << ','
                << fmt(r.n_ab_product) << ',' << fmt(r.n_ab_unbiased) << ',' << fmt(r.min_gap)
                << '\n';
        return kOk;
    }
    json table = json::array();
    for (const auto& r : rows)
        table.push_back({{"epsilon", r.epsilon},
                         {"trace_distance", r.trace_distance_between_sequences},
                         {"n_ab_product", r.n_ab_product},
                         {"n_ab_unbiased", r.n_ab_unbiased},
                         {"gap", r.min_gap}});
    json rec{{"tool", "qmin"}, {"version", kVersion}, {"timestamp", timestamp()},
             {"seed", c.seed}, {"m", m},          {"x", x},
             {"rows", table},
             {"measurements",
              {{"product", measurement_to_json(rows.front().measurement_product)},
               {"unbiased", measurement_to_json(rows.front().measurement_unbiased)}}}};
    out << rec.dump() << '\n';
    return kOk;
}

int cmd_dump(const StateSpec& spec, const Common& c, const std::string& path, std::ostream& out) {
    const DensityMatrix rho = build_state(spec, c.seed);
    if (path.empty())
        out << state_to_json(rho).dump() << '\n';
    else
        save_state(rho, path);
    return kOk;
}

std::size_t default_n(const StateSpec& s, std::size_t fallback) {
    return s.n == 0 ? fallback : s.n;
}

double require_x(const StateSpec& s) {
    if (!s.x)
        throw UsageError("state '" + s.family + "' needs --x");
    return *s.x;
}

} // namespace

DensityMatrix build_state(const StateSpec& s, std::uint64_t seed) {
    const std::string& f = s.family;
    if (f.rfind("file:", 0) == 0)
        return load_state(f.substr(5));
    if (f == "bell")
        return pure_state(max_entangled_vector(2, 2), {2, 2}).density();
    if (f == "werner")
        return werner(s.m, require_x(s));
    if (f == "isotropic")
        return isotropic(s.m, require_x(s));
    if (f == "bell-diagonal") {
        if (s.c.size() != 3)
            throw UsageError("bell-diagonal needs --c c1,c2,c3");
        return bell_diagonal({s.c[0], s.c[1], s.c[2]});
    }
    if (f == "memes") {
        if (s.p.empty())
            throw UsageError("memes needs --p");
        return max_entangled_mixed(s.m, default_n(s, s.p.size() * s.m), s.p);
    }
    if (f == "pure") {
        if (s.schmidt.empty())
            throw UsageError("pure needs --schmidt");
        const std::size_t m = std::max(s.m, s.schmidt.size());
        const std::size_t n = default_n(s, m);
        if (n < s.schmidt.size())
            throw UsageError("pure: --n is smaller than the Schmidt rank");
        ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(m * n));
        for (std::size_t k = 0; k < s.schmidt.size(); ++k)
            psi(static_cast<Eigen::Index>(k * n + k)) = s.schmidt[k];
        return pure_state(psi, {m, n}).density();
    }
    if (f == "random") {
        const Dims d{s.m, default_n(s, s.m)};
        return random_density(d, s.rank == 0 ? d.total() : s.rank, s.state_seed.value_or(seed));
    }
    if (f == "classical") {
        const std::size_t n = default_n(s, s.m);
        if (s.p.size() != s.m * n)
            throw UsageError("classical needs --p with m*n row-major entries");
        ClassicalSpectrum spec;
        spec.p = Eigen::Map<const RealMatrix>(s.p.data(), static_cast<Eigen::Index>(s.m),
                                              static_cast<Eigen::Index>(n));
        spec.basis_a = ComplexMatrix::Identity(static_cast<Eigen::Index>(s.m),
                                               static_cast<Eigen::Index>(s.m));
        spec.basis_b = ComplexMatrix::Identity(static_cast<Eigen::Index>(n),
                                               static_cast<Eigen::Index>(n));
        return classical_state(spec);
    }
    if (f == "cq-witness") {
        // Equal weights on A, distinct conditional states on B.
        const double p[2] = {0.5, 0.5};
        ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
        zero(0, 0) = 1.0;
        const ComplexMatrix plus = ComplexMatrix::Constant(2, 2, 0.5);
        return cq_state(p, ComplexMatrix::Identity(2, 2), {zero, plus});
    }
    throw UsageError("unknown state family '" + f + "'");
}

nlohmann::json describe(const StateSpec& s) {
    if (s.family.rfind("file:", 0) == 0)
        return {{"family", "file"}, {"path", s.family.substr(5)}};
    nlohmann::json j{{"family", s.family}};
    if (s.family == "werner" || s.family == "isotropic") {
        j["m"] = s.m;
        if (s.x) j["x"] = *s.x;
    } else if (s.family == "bell-diagonal") {
        j["c"] = s.c;
    } else if (s.family == "memes") {
        j["m"] = s.m;
        j["n"] = default_n(s, s.p.size() * s.m);
        j["p"] = s.p;
    } else if (s.family == "pure") {
        j["schmidt"] = s.schmidt;
    } else if (s.family == "random") {
        j["m"] = s.m;
        j["n"] = default_n(s, s.m);
        j["rank"] = s.rank;
        if (s.state_seed) j["state_seed"] = *s.state_seed;
    } else if (s.family == "classical") {
        j["m"] = s.m;
        j["n"] = default_n(s, s.m);
        j["p"] = s.p;
    }
    return j;
}

std::vector<double> sweep_grid(double from, double to, std::size_t points,
                               std::span<const double> pins) {
    if (points < 2)
        throw UsageError("sweep grid needs at least two points");
    std::vector<double> g(points);
    const double step = (to - from) / static_cast<double>(points - 1);
    for (std::size_t k = 0; k < points; ++k)
        g[k] = from + step * static_cast<double>(k);
    g.back() = to;
    for (double p : pins) {
        if (p < std::min(from, to) || p > std::max(from, to))
            continue;
        const auto nearest = std::min_element(g.begin(), g.end(), [p](double a, double b) {
            return std::abs(a - p) < std::abs(b - p);
        });
        *nearest = p;
    }
    return g;
}

nlohmann::json measure_to_json(const MeasureResult& r) {
    const auto& d = r.diagnostics;
    json j{{"value", r.value},
           {"method", to_string(r.method)},
           {"bound", to_string(r.bound)},
           {"diagnostics",
            {{"starts", d.starts},
             {"iterations", d.iterations},
             {"evaluations", d.evaluations},
             {"best_start", d.best_start},
             {"best_trace", d.best_trace},
             {"group_dims_a", d.group_dims_a},
             {"group_dims_b", d.group_dims_b},
             {"degeneracy_tol", d.degeneracy_tol},
             {"seed", d.seed},
             {"heuristic", d.heuristic}}}};
    if (r.argmeasure)
        j["argmeasure"] = measurement_to_json(*r.argmeasure);
    return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Measurement-induced nonlocality and quantum discord calculator", "qmin"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Common common;
    StateSpec spec;

    auto* compute = app.add_subcommand("compute", "Evaluate one measure for one state");
    std::string measure = "n_ab", dump_path;
    add_common(compute, common, "Optimizer convergence tolerance (default 1e-9)");
    add_state(compute, spec);
    compute->add_option("--measure", measure, "Measure to evaluate")->check(CLI::IsMember(kMeasures));
    compute->add_option("--dump-state", dump_path, "Also write the state to this JSON file");

    auto* sweep = app.add_subcommand("sweep", "Evaluate measures along a one-parameter family");
    SweepArgs sw;
    add_common(sweep, common, "Optimizer convergence tolerance (default 1e-9)");
    add_state(sweep, spec);
    sweep->add_option("--family", sw.family, "werner | isotropic | bell-diagonal");
    sweep->add_option("--from", sw.from, "First parameter value");
    sweep->add_option("--to", sw.to, "Last parameter value");
    sweep->add_option("--points", sw.points, "Number of grid points");
    sweep->add_option("--pin", sw.pins, "Values the grid must contain exactly")->delimiter(',');
    sweep->add_flag("--no-pin", sw.no_pin, "Do not pin the family's nullity point");
    sweep->add_option("--direction", sw.direction, "Bell-diagonal ray direction")->delimiter(',');
    sweep->add_option("--measures", sw.measures, "Comma-separated measures")->delimiter(',');

    auto* check = app.add_subcommand("check-null", "Structural zero-MiN test");
    std::string side = "AB";
    add_common(check, common, "Nullity residual tolerance (default 1e-8)");
    add_state(check, spec);
    check->add_option("--side", side, "A | B | AB")->check(CLI::IsMember({"A", "B", "AB"}));

    auto* demo = app.add_subcommand("demo-discontinuity",
                                    "Two perturbation sequences with a non-vanishing MiN gap");
    std::size_t demo_m = 2;
    double demo_x = 0.8;
    std::vector<double> eps{1e-2, 1e-3, 1e-4};
    add_common(demo, common, "Unused");
    demo->add_option("--m", demo_m, "Dimension")->check(CLI::Range(2, 16));
    demo->add_option("--x", demo_x, "Werner parameter");
    demo->add_option("--eps", eps, "Perturbation sizes")->delimiter(',');

    auto* dump = app.add_subcommand("dump-state", "Write a state as JSON");
    std::string out_path;
    add_common(dump, common, "Unused");
    add_state(dump, spec);
    dump->add_option("--out", out_path, "Output file (default stdout)");

    std::vector<const char*> argv{"qmin"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kOk : kUsage;
    }

    if (common.format.empty())
        common.format = sweep->parsed() ? "csv" : "json";
    try {
        if (compute->parsed()) return cmd_compute(spec, common, measure, dump_path, out);
        if (sweep->parsed()) return cmd_sweep(sw, spec, common, out);
        if (check->parsed()) return cmd_check_null(spec, common, side, out);
        if (demo->parsed()) return cmd_demo(demo_m, demo_x, eps, common, out);
        if (dump->parsed()) return cmd_dump(spec, common, out_path, out);
    } catch (const UsageError& e) {
        err << "qmin: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "qmin: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

} // namespace qmin::cli
