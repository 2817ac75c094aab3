#include "haptolab/experiment.hpp"

#include "haptolab/bistable.hpp"
#include "haptolab/errors.hpp"
#include "haptolab/snapshot_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>

namespace haptolab {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

class CsvWriter {
public:
    CsvWriter(const fs::path& path, const std::vector<std::string>& header) : out_(path)
    {
        if (!out_) {
            throw Error("cannot write " + path.string());
        }
        for (std::size_t k = 0; k < header.size(); ++k) {
            out_ << (k ? "," : "") << header[k];
        }
        out_ << '\n';
    }

    void row(const std::vector<double>& values)
    {
        for (std::size_t k = 0; k < values.size(); ++k) {
            out_ << (k ? "," : "") << format_real(values[k]);
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

void write_curve(const fs::path& path, const InterfaceCurve& c)
{
    CsvWriter w(path, {"x", "y"});
    for (const Point& p : c.points) {
        w.row({p.x, p.y});
    }
}

void write_json(const fs::path& path, const ordered_json& j)
{
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << j.dump(2) << '\n';
}

std::string tag(std::size_t k)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04zu", k);
    return buf;
}

ProblemSetup setup_from(const RunConfig& cfg)
{
    ProblemSetup s;
    s.params = cfg.params;
    s.shape = cfg.shape;
    s.v0 = cfg.v0;
    s.m0 = cfg.m0;
    s.width = cfg.width;
    s.d0 = cfg.d0;
    s.saturation = cfg.saturation;
    return s;
}

bool is_mcf_case(const RunConfig& cfg)
{
    return cfg.params.chi.kind() == ChiSpec::Kind::constant && cfg.shape.kind == ShapeSpec::Kind::circle;
}

void report_progress(const ProgressFn& progress, const std::string& what)
{
    if (progress) {
        progress(what);
    }
}

// A priori bounds 0 <= u, m <= C0 and 0 <= v <= v_initial, plus v
// nonincreasing in time, checked with tolerance 1e-8 on every state seen.
class InvariantMonitor {
public:
    explicit InvariantMonitor(double C0) : C0_(C0) {}

    void observe(const ScalarField* u, const ScalarField& v, const ScalarField& m, const ScalarField& v_initial)
    {
        constexpr double tol = 1e-8;
        ++states_;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (u && ((*u)[k] < -tol || (*u)[k] > C0_ + tol)) {
                ++bound_violations_;
            }
            if (m[k] < -tol || m[k] > C0_ + tol) {
                ++bound_violations_;
            }
            if (v[k] < -tol || v[k] > v_initial[k] + tol) {
                ++bound_violations_;
            }
        }
        if (!v_prev_.empty()) {
            for (std::size_t k = 0; k < v.size(); ++k) {
                monotone_violations_ += v[k] > v_prev_[k] + tol;
            }
        }
        v_prev_.assign(v.values().begin(), v.values().end());
    }

    long states() const { return states_; }
    long bound_violations() const { return bound_violations_; }
    long monotone_violations() const { return monotone_violations_; }

    void add_checks(std::vector<AssertCheck>& checks) const
    {
        checks.push_back({"a priori bounds", bound_violations_ == 0,
                          std::to_string(bound_violations_) + " violations over " + std::to_string(states_) +
                              " states"});
        checks.push_back({"v nonincreasing", monotone_violations_ == 0,
                          std::to_string(monotone_violations_) + " violations"});
    }

private:
    double C0_;
    long states_ = 0;
    long bound_violations_ = 0;
    long monotone_violations_ = 0;
    std::vector<double> v_prev_;
};

ordered_json checks_json(const std::vector<AssertCheck>& checks)
{
    ordered_json out = ordered_json::array();
    for (const auto& c : checks) {
        out.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    return out;
}

std::string fmt(double x) { return format_real(x); }

// ------------------------------------------------------------------ profile
ordered_json run_profile(const RunConfig& cfg, const fs::path& dir, std::vector<AssertCheck>& checks)
{
    const double residual = profile_ode_residual(-20.0, 20.0, 10000);
    const ProfileTable table = solve_profile_bvp(cfg.profile_half_width, cfg.profile_n);
    double bvp_error = 0.0;
    CsvWriter w(dir / "metrics.csv", {"z", "U0", "U0_prime", "U_bvp", "abs_diff"});
    for (std::size_t k = 0; k < table.z.size(); ++k) {
        const double z = table.z[k];
        const double u = standing_profile(z);
        const double diff = std::abs(table.u[k] - u);
        bvp_error = std::max(bvp_error, diff);
        w.row({z, u, standing_profile_prime(z), table.u[k], diff});
    }
    checks.push_back({"closed-form ODE residual <= 1e-12", residual <= 1e-12, fmt(residual)});
    checks.push_back({"BVP matches closed form to 1e-6", bvp_error <= 1e-6, fmt(bvp_error)});
    return {{"ode_residual", residual}, {"bvp_sup_error", bvp_error}, {"nodes", table.z.size()}};
}

// ------------------------------------------------------------------ diffuse
ordered_json run_diffuse_experiment(const RunConfig& cfg, const fs::path& dir, std::vector<AssertCheck>& checks,
                                    const ProgressFn& progress)
{
    const ProblemSetup setup = setup_from(cfg);
    const Grid grid = Grid::unit_square(cfg.grid_n);
    const InitialData data = build_initial_data(setup, grid);
    InvariantMonitor monitor(cfg.params.C0);

    CsvWriter w(dir / "metrics.csv",
                {"t", "u_min", "u_max", "v_min", "v_max", "m_min", "m_max", "mass_u", "radius", "components"});
    std::size_t index = 0;
    const auto emit = [&](const DiffuseState& s) {
        const LevelCurves curves = extract_level_curve(s.u, 0.5);
        const double radius = curves.empty() ? 0.0 : equivalent_radius(curves.main());
        w.row({s.t, s.u.min(), s.u.max(), s.v.min(), s.v.max(), s.m.min(), s.m.max(), s.u.integral(), radius,
               static_cast<double>(curves.components.size())});
        if (cfg.write_fields) {
            write_snapshot(dir / "fields" / ("u_" + tag(index) + ".csv"), s.u, "u", s.t);
            write_snapshot(dir / "fields" / ("v_" + tag(index) + ".csv"), s.v, "v", s.t);
            write_snapshot(dir / "fields" / ("m_" + tag(index) + ".csv"), s.m, "m", s.t);
            if (!curves.empty()) {
                write_curve(dir / "fields" / ("gamma_" + tag(index) + ".csv"), curves.main());
            }
        }
        ++index;
    };

    DiffuseState s0 = DiffuseState::initial(data.u0, data.v0, data.m0);
    monitor.observe(&s0.u, s0.v, s0.m, s0.v_initial);
    emit(s0);
    report_progress(progress, "diffuse on " + std::to_string(cfg.grid_n) + "^2 to t = " + fmt(cfg.T));
    DiffuseRunOptions options;
    options.keep_snapshots = false;
    options.on_snapshot = emit;
    options.on_step = [&](const DiffuseState& s) { monitor.observe(&s.u, s.v, s.m, s.v_initial); };
    const DiffuseTrajectory traj = run_diffuse(std::move(s0), cfg.params, cfg.T, cfg.schedule(), options);
    monitor.add_checks(checks);
    return {{"n", cfg.grid_n}, {"h", grid.h()}, {"steps", traj.steps}, {"states_checked", monitor.states()}};
}

// -------------------------------------------------------------------- sharp
ordered_json run_sharp_experiment(const RunConfig& cfg, const fs::path& dir, std::vector<AssertCheck>& checks,
                                  const ProgressFn& progress)
{
    const Grid grid = Grid::unit_square(cfg.sharp_n);
    const ScalarField v0 = cfg.v0.sample(grid);
    const ScalarField m0 = cfg.m0.sample(grid);
    SharpState s0 = SharpState::initial(cfg.shape.polyline(), v0, m0, cfg.sharp);
    const bool mcf = is_mcf_case(cfg);
    const double R0 = cfg.shape.r0;
    InvariantMonitor monitor(cfg.params.C0);

    std::vector<std::string> header{"t", "area", "radius", "length", "v_min", "m_max"};
    if (mcf) {
        header.insert(header.end(), {"radius_exact", "relative_error"});
    }
    CsvWriter w(dir / "metrics.csv", header);
    std::vector<double> times, areas;
    double max_rel = 0.0;
    double min_radius = std::numeric_limits<double>::infinity();
    std::size_t index = 0;
    const auto emit = [&](const SharpState& s) {
        const LevelCurves curves = s.interface();
        if (curves.empty()) {
            return;
        }
        const InterfaceCurve& c = curves.main();
        const double area = std::abs(signed_area(c));
        const double radius = std::sqrt(area / std::numbers::pi);
        std::vector<double> row{s.t, area, radius, curve_length(c), s.v.min(), s.m.max()};
        if (mcf) {
            const double exact = std::sqrt(R0 * R0 - 2.0 * s.t);
            const double rel = std::abs(radius - exact) / exact;
            max_rel = std::max(max_rel, rel);
            row.insert(row.end(), {exact, rel});
        }
        min_radius = std::min(min_radius, radius);
        times.push_back(s.t);
        areas.push_back(area);
        w.row(row);
        if (cfg.write_fields) {
            write_snapshot(dir / "fields" / ("phi_" + tag(index) + ".csv"), s.phi, "phi", s.t);
            write_snapshot(dir / "fields" / ("v_" + tag(index) + ".csv"), s.v, "v", s.t);
            write_snapshot(dir / "fields" / ("m_" + tag(index) + ".csv"), s.m, "m", s.t);
            write_curve(dir / "fields" / ("gamma_" + tag(index) + ".csv"), c);
        }
        ++index;
    };

    monitor.observe(nullptr, s0.v, s0.m, s0.v_initial);
    emit(s0);
    report_progress(progress, "sharp on " + std::to_string(cfg.sharp_n) + "^2 to t = " + fmt(cfg.T));
    SharpRunOptions options;
    options.keep_snapshots = false;
    options.on_snapshot = emit;
    options.on_step = [&](const SharpState& s) { monitor.observe(nullptr, s.v, s.m, s.v_initial); };
    const SharpTrajectory traj = run_sharp(std::move(s0), cfg.params, cfg.sharp, cfg.T, cfg.schedule(), options);
    monitor.add_checks(checks);

    ordered_json report{{"n", cfg.sharp_n}, {"h", grid.h()}, {"steps", traj.steps}, {"extinct", traj.extinct}};
    if (mcf) {
        const double area_rate = times.size() >= 2 ? fit_line(times, areas).slope : 0.0;
        const double rate_error = std::abs(area_rate + 2.0 * std::numbers::pi) / (2.0 * std::numbers::pi);
        checks.push_back({"circle radius within 1% of sqrt(R0^2 - 2t)", max_rel <= 0.01 && !traj.extinct,
                          "max relative error " + fmt(max_rel) + ", final radius " + fmt(min_radius / R0) + " R0"});
        checks.push_back({"area rate 2 pi within 5%", rate_error <= 0.05, "dA/dt = " + fmt(area_rate)});
        report["max_relative_error"] = max_rel;
        report["area_rate"] = area_rate;
        report["final_radius_over_R0"] = min_radius / R0;
    }
    return report;
}

// ------------------------------------------------------------------ compare
ordered_json run_compare(const RunConfig& cfg, const fs::path& dir, std::vector<AssertCheck>& checks,
                         const ProgressFn& progress)
{
    const ProblemSetup setup = setup_from(cfg);
    const std::vector<double> times = cfg.schedule();
    const bool mcf = is_mcf_case(cfg);
    const double R0 = cfg.shape.r0;

    const Grid sharp_grid = Grid::unit_square(cfg.sharp_n);
    report_progress(progress, "sharp on " + std::to_string(cfg.sharp_n) + "^2");
    SharpState s0 =
        SharpState::initial(cfg.shape.polyline(), cfg.v0.sample(sharp_grid), cfg.m0.sample(sharp_grid), cfg.sharp);
    const SharpTrajectory limit = run_sharp(std::move(s0), cfg.params, cfg.sharp, cfg.T, times);
    if (limit.extinct || limit.snapshots.size() != times.size()) {
        throw SolverFailure("sharp reference ended before T (extinction); shorten T");
    }
    std::vector<InterfaceCurve> limit_curves;
    for (const auto& s : limit.snapshots) {
        limit_curves.push_back(s.interface().main());
    }

    const Grid grid = Grid::unit_square(cfg.grid_n);
    const InitialData data = build_initial_data(setup, grid);
    InvariantMonitor monitor(cfg.params.C0);
    std::vector<std::string> header{"t", "radius_diffuse", "radius_sharp"};
    if (mcf) {
        header.push_back("radius_exact");
    }
    header.insert(header.end(), {"distance", "hausdorff", "v_gap", "m_gap"});
    CsvWriter w(dir / "metrics.csv", header);
    double sup_distance = 0.0, sup_v = 0.0, sup_m = 0.0, max_rel = 0.0;
    std::size_t index = 0;
    report_progress(progress, "diffuse on " + std::to_string(cfg.grid_n) + "^2");
    DiffuseRunOptions options;
    options.keep_snapshots = false;
    options.on_step = [&](const DiffuseState& s) { monitor.observe(&s.u, s.v, s.m, s.v_initial); };
    options.on_snapshot = [&](const DiffuseState& s) {
        const LimitGaps g = limit_gaps(s, limit.snapshots.at(index), limit_curves[index], cfg.params.lambda);
        const double rd = equivalent_radius(extract_level_curve(s.u, 0.5).main());
        const double rs = equivalent_radius(limit_curves[index]);
        std::vector<double> row{s.t, rd, rs};
        if (mcf) {
            const double exact = std::sqrt(R0 * R0 - 2.0 * s.t);
            max_rel = std::max(max_rel, std::abs(rs - exact) / exact);
            row.push_back(exact);
        }
        row.insert(row.end(), {g.distance, g.hausdorff, g.v_gap, g.m_gap});
        w.row(row);
        sup_distance = std::max(sup_distance, g.distance);
        sup_v = std::max(sup_v, g.v_gap);
        sup_m = std::max(sup_m, g.m_gap);
        if (cfg.write_fields) {
            write_snapshot(dir / "fields" / ("u_" + tag(index) + ".csv"), s.u, "u", s.t);
            write_snapshot(dir / "fields" / ("phi_" + tag(index) + ".csv"), limit.snapshots[index].phi, "phi", s.t);
            write_curve(dir / "fields" / ("gamma_sharp_" + tag(index) + ".csv"), limit_curves[index]);
        }
        ++index;
    };
    const DiffuseTrajectory traj =
        run_diffuse(DiffuseState::initial(data.u0, data.v0, data.m0), cfg.params, cfg.T, times, options);
    monitor.add_checks(checks);

    ordered_json report{{"n", cfg.grid_n},          {"sharp_n", cfg.sharp_n},      {"diffuse_steps", traj.steps},
                        {"sharp_steps", limit.steps}, {"sup_distance", sup_distance}, {"sup_v_gap", sup_v},
                        {"sup_m_gap", sup_m}};
    if (mcf) {
        report["sharp_max_relative_error"] = max_rel;
        checks.push_back({"sharp radius within 1% of sqrt(R0^2 - 2t)", max_rel <= 0.01, fmt(max_rel)});
    }

    if (cfg.envelope_enabled) {
        report_progress(progress, "envelope bracket");
        const BracketStudy b = bracket_study(setup, cfg.grid_n * cfg.params.eps, cfg.T, cfg.snapshot_count,
                                             cfg.envelope_d0, cfg.envelope_K, cfg.sharp);
        CsvWriter bw(dir / "bracket.csv", {"t", "q", "below", "above", "worst_excess", "min_residual_upper",
                                           "max_residual_lower", "residual_tolerance"});
        long violations = 0;
        bool signs = true;
        for (std::size_t k = 0; k < b.snapshots.size(); ++k) {
            const BracketSnapshot& s = b.snapshots[k];
            bw.row({s.t, s.q, static_cast<double>(s.below), static_cast<double>(s.above), s.worst_excess,
                    s.min_residual_upper, s.max_residual_lower, s.residual_tolerance});
            violations += s.below + s.above;
            if (k + 1 < b.snapshots.size()) {
                signs = signs && s.min_residual_upper >= -s.residual_tolerance &&
                        s.max_residual_lower <= s.residual_tolerance;
            }
        }
        const EnvelopeConstants& c = b.constants;
        const bool p_ok = b.p_min >= c.K - 1.0 - 1e-12 && b.p_max <= c.d0 / (2.0 * c.eps0) + 1e-12;
        checks.push_back({"envelope bracket holds", violations == 0, std::to_string(violations) + " cells outside"});
        checks.push_back({"residual signs on the band", signs, "see bracket.csv"});
        checks.push_back({"K - 1 <= p <= d0 / (2 eps0)", p_ok, "p in [" + fmt(b.p_min) + ", " + fmt(b.p_max) + "]"});
        report["envelope"] = {{"beta", c.beta}, {"sigma", c.sigma}, {"L", c.L},       {"K", c.K},
                              {"eps0", c.eps0}, {"d0", c.d0},       {"T", c.T},       {"F", c.F},
                              {"m_f", c.m_f},   {"a1", c.a1},       {"b", c.b},       {"p_min", b.p_min},
                              {"p_max", b.p_max}, {"violations", violations}};
    }
    return report;
}

// --------------------------------------------------------------- generation
ordered_json run_generation(const RunConfig& cfg, const fs::path& dir, std::vector<AssertCheck>& checks,
                            const ProgressFn& progress)
{
    const ProblemSetup setup = setup_from(cfg);
    const std::vector<double> eps_list = cfg.eps_list.empty() ? std::vector<double>{cfg.params.eps} : cfg.eps_list;
    CsvWriter w(dir / "metrics.csv", {"eps", "n", "t_star", "violations_a", "violations_b", "cells_upper",
                                      "cells_lower", "u_sup", "u_inf", "fitted_M0"});
    ordered_json cases = ordered_json::array();
    for (double eps : eps_list) {
        report_progress(progress, "generation eps = " + fmt(eps));
        const GenerationStudy g = generation_study(setup, eps, cfg.cells_per_eps, cfg.eta, cfg.M0);
        const GenerationReport& r = g.report;
        w.row({eps, static_cast<double>(g.n), r.t_star, static_cast<double>(r.violations_a),
               static_cast<double>(r.violations_b), static_cast<double>(r.cells_upper),
               static_cast<double>(r.cells_lower), r.u_sup, r.u_inf, g.fitted_M0});
        checks.push_back({"generation eps = " + fmt(eps), r.violations_a == 0 && r.violations_b == 0,
                          "violations (a) " + std::to_string(r.violations_a) + ", (b) " +
                              std::to_string(r.violations_b) + " with M0 = " + fmt(cfg.M0)});
        cases.push_back({{"eps", eps},
                         {"n", g.n},
                         {"t_star", r.t_star},
                         {"eta", r.eta},
                         {"M0", r.M0},
                         {"violations_a", r.violations_a},
                         {"violations_b", r.violations_b},
                         {"u_sup", r.u_sup},
                         {"u_inf", r.u_inf},
                         {"fitted_M0", g.fitted_M0},
                         {"steps", g.steps}});
    }
    return {{"cases", cases}};
}

// -------------------------------------------------------------- convergence
bool strictly_decreasing(const std::vector<double>& x)
{
    for (std::size_t k = 1; k < x.size(); ++k) {
        if (!(x[k] < x[k - 1])) {
            return false;
        }
    }
    return true;
}

ordered_json run_convergence(const RunConfig& cfg, const fs::path& dir, std::vector<AssertCheck>& checks,
                             const ProgressFn& progress)
{
    ConvergenceSetup setup;
    setup.problem = setup_from(cfg);
    setup.cells_per_eps = cfg.cells_per_eps;
    setup.T = cfg.T;
    setup.snapshots = cfg.snapshot_count;
    setup.sharp_n = cfg.sharp_n;
    setup.sharp = cfg.sharp;
    const ConvergenceRecord rec = convergence_study(setup, cfg.eps_list, progress);

    CsvWriter w(dir / "metrics.csv", {"eps", "t", "distance", "hausdorff", "v_gap", "m_gap"});
    std::vector<double> sup_d, sup_v, sup_m;
    ordered_json cases = ordered_json::array();
    for (const auto& c : rec.cases) {
        for (std::size_t k = 0; k < c.times.size(); ++k) {
            w.row({c.eps, c.times[k], c.distance[k], c.hausdorff[k], c.v_gap[k], c.m_gap[k]});
        }
        sup_d.push_back(c.sup_distance);
        sup_v.push_back(c.sup_v_gap);
        sup_m.push_back(c.sup_m_gap);
        cases.push_back({{"eps", c.eps},
                         {"n", c.n},
                         {"sup_distance", c.sup_distance},
                         {"sup_v_gap", c.sup_v_gap},
                         {"sup_m_gap", c.sup_m_gap},
                         {"steps", c.steps}});
    }
    const double slope = rec.distance_fit.slope;
    checks.push_back({"interface distance decreases", strictly_decreasing(sup_d), ""});
    checks.push_back({"distance slope in [0.7, 1.3]", slope >= 0.7 && slope <= 1.3, fmt(slope)});
    const double ratio_v = sup_v.back() / sup_v.front();
    const double ratio_m = sup_m.back() / sup_m.front();
    checks.push_back({"v gap decreases, final/initial <= 0.6", strictly_decreasing(sup_v) && ratio_v <= 0.6,
                      "ratio " + fmt(ratio_v)});
    checks.push_back({"m gap decreases, final/initial <= 0.6", strictly_decreasing(sup_m) && ratio_m <= 0.6,
                      "ratio " + fmt(ratio_m)});
    const auto fit_json = [](const LinearFit& f) { return ordered_json{{"slope", f.slope}, {"C", f.intercept}}; };
    return {{"cases", cases},
            {"distance_fit", fit_json(rec.distance_fit)},
            {"v_gap_fit", fit_json(rec.v_fit)},
            {"m_gap_fit", fit_json(rec.m_fit)},
            {"sharp_n", rec.sharp_n},
            {"sharp_steps", rec.sharp_steps}};
}

}  // namespace

bool ExperimentOutcome::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const AssertCheck& c) { return c.passed; });
}

int ExperimentOutcome::exit_code(bool assert_mode) const { return assert_mode && !all_passed() ? 4 : 0; }

ExperimentOutcome run_experiment(const RunConfig& cfg, const fs::path& out_dir, const std::string& config_text,
                                 const ProgressFn& progress)
{
    validate_config(cfg);
    const auto start = std::chrono::steady_clock::now();
    fs::create_directories(out_dir);
    if (cfg.write_fields) {
        fs::create_directories(out_dir / "fields");
    }

    ExperimentOutcome outcome;
    outcome.out_dir = out_dir;
    ordered_json summary;
    switch (cfg.experiment) {
    case ExperimentKind::profile:
        summary = run_profile(cfg, out_dir, outcome.checks);
        break;
    case ExperimentKind::diffuse:
        summary = run_diffuse_experiment(cfg, out_dir, outcome.checks, progress);
        break;
    case ExperimentKind::sharp:
        summary = run_sharp_experiment(cfg, out_dir, outcome.checks, progress);
        break;
    case ExperimentKind::compare:
        summary = run_compare(cfg, out_dir, outcome.checks, progress);
        break;
    case ExperimentKind::generation:
        summary = run_generation(cfg, out_dir, outcome.checks, progress);
        break;
    case ExperimentKind::convergence:
        summary = run_convergence(cfg, out_dir, outcome.checks, progress);
        break;
    }
    outcome.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    write_json(out_dir / "report.json", {{"experiment", experiment_name(cfg.experiment)},
                                         {"summary", summary},
                                         {"checks", checks_json(outcome.checks)},
                                         {"all_passed", outcome.all_passed()}});

    ordered_json manifest{
        {"tool", "haptolab"},
        {"version", kVersion},
        {"compiler", __VERSION__},
        {"experiment", experiment_name(cfg.experiment)},
        {"config", ordered_json::parse(emit_config(cfg))},
        {"wall_seconds", outcome.seconds},
    };
    if (!config_text.empty()) {
        manifest["config_text"] = config_text;
    }
    write_json(out_dir / "manifest.json", manifest);
    std::ofstream(out_dir / "config.json") << emit_config(cfg) << '\n';
    return outcome;
}

}  // namespace haptolab
