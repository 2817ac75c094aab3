#include "haptolab/studies.hpp"

#include "haptolab/errors.hpp"
#include "haptolab/levelset.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <numbers>
#include <sstream>

namespace haptolab {

namespace {

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void report(const ProgressFn& progress, const std::string& what)
{
    if (progress) {
        progress(what);
    }
}

}  // namespace

InitialData build_initial_data(const ProblemSetup& setup, const Grid& grid)
{
    return make_initial_data(setup.shape, setup.profile_width(), setup.v0, setup.m0, grid, setup.params.C0, setup.d0,
                             setup.saturation);
}

int cells_for_eps(double eps, double cells_per_eps)
{
    require(eps > 0.0 && cells_per_eps > 0.0, "eps and cells_per_eps must be positive");
    return static_cast<int>(std::ceil(cells_per_eps / eps - 1e-9));
}

std::vector<double> uniform_times(double t0, double t1, int n)
{
    require(n >= 1 && t1 > t0, "uniform_times needs n >= 1 and t1 > t0");
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        t[k] = t0 + (t1 - t0) * (k + 1) / n;
    }
    t.back() = t1;
    return t;
}

GenerationStudy generation_study(ProblemSetup setup, double eps, double cells_per_eps, double eta, double M0)
{
    const Stopwatch clock;
    setup.params.eps = eps;
    GenerationStudy out;
    out.n = cells_for_eps(eps, cells_per_eps);
    const Grid grid = Grid::unit_square(out.n);
    const InitialData data = build_initial_data(setup, grid);
    const double t_star = generation_time(eps);
    DiffuseRunOptions options;
    const DiffuseTrajectory traj =
        run_diffuse(DiffuseState::initial(data.u0, data.v0, data.m0), setup.params, t_star, {t_star}, options);
    out.report = check_generation(traj, data.u0, eps, eta, M0);
    out.fitted_M0 = fit_generation_M0(traj.snapshots.back().u, data.u0, eps, eta);
    out.steps = traj.steps;
    out.seconds = clock.seconds();
    return out;
}

McfStudy mcf_study(double R0, int n, const SharpParams& sharp, double stop_fraction, int samples)
{
    require(R0 > 0.0 && stop_fraction > 0.0 && stop_fraction < 1.0, "invalid curvature-flow study parameters");
    const Stopwatch clock;
    const Grid grid = Grid::unit_square(n);
    HaptoParams params;
    params.chi = ChiSpec::constant(1.0);
    const ShapeSpec circle = ShapeSpec::circle({0.5, 0.5}, R0);
    const ScalarField v0(grid, 1.0);
    const ScalarField m0(grid, 0.0);
    SharpState s = SharpState::initial(circle.polyline(), v0, m0, sharp);

    const double t_stop = 0.5 * R0 * R0 * (1.0 - stop_fraction * stop_fraction);
    McfStudy out;
    std::vector<double> areas;
    SharpRunOptions options;
    options.keep_snapshots = false;
    options.on_snapshot = [&](const SharpState& snap) {
        const InterfaceCurve c = snap.interface().main();
        const double area = std::abs(signed_area(c));
        out.times.push_back(snap.t);
        out.radius.push_back(std::sqrt(area / std::numbers::pi));
        out.exact.push_back(std::sqrt(R0 * R0 - 2.0 * snap.t));
        areas.push_back(area);
    };
    const SharpTrajectory traj = run_sharp(std::move(s), params, sharp, t_stop, uniform_times(0.0, t_stop, samples), options);
    require(!traj.extinct, "circle vanished before the stop radius");
    for (std::size_t k = 0; k < out.times.size(); ++k) {
        out.max_relative_error = std::max(out.max_relative_error, std::abs(out.radius[k] - out.exact[k]) / out.exact[k]);
    }
    out.area_rate = fit_line(out.times, areas).slope;
    out.steps = traj.steps;
    out.seconds = clock.seconds();
    return out;
}

BracketStudy bracket_study(ProblemSetup setup, double cells_per_eps, double T, int snapshots, double envelope_d0,
                           double K, const SharpParams& sharp_in)
{
    const Stopwatch clock;
    const double eps = setup.params.eps;
    setup.width = eps;
    BracketStudy out;
    out.n = cells_for_eps(eps, cells_per_eps);
    const Grid grid = Grid::unit_square(out.n);
    const InitialData data = build_initial_data(setup, grid);
    out.constants = envelope_constants(T, envelope_d0, eps, K);
    require(out.constants.eps0 >= eps, "envelope constants forced eps0 below eps; enlarge d0 or T");

    SharpParams sharp = sharp_in;
    sharp.d0 = envelope_d0;
    const std::vector<double> times = uniform_times(0.0, T, snapshots);
    DiffuseTrajectory diffuse =
        run_diffuse(DiffuseState::initial(data.u0, data.v0, data.m0), setup.params, T, times);
    std::vector<double> all_times{0.0};
    all_times.insert(all_times.end(), times.begin(), times.end());
    SharpState s0 = SharpState::initial(setup.shape.polyline(), data.v0, data.m0, sharp);
    SharpTrajectory limit = run_sharp(s0, setup.params, sharp, T, times);
    require(!limit.extinct && limit.snapshots.size() == times.size(), "sharp reference ended early");

    // d at t = 0 is the clamped initial distance
    std::vector<const ScalarField*> d_fields{&s0.phi};
    std::vector<const ScalarField*> u_fields{&data.u0};
    std::vector<const ScalarField*> v_fields{&data.v0};
    for (std::size_t k = 0; k < times.size(); ++k) {
        d_fields.push_back(&limit.snapshots[k].phi);
        u_fields.push_back(&diffuse.snapshots[k].u);
        v_fields.push_back(&diffuse.snapshots[k].v);
    }

    const double h = grid.h();
    for (std::size_t k = 0; k < all_times.size(); ++k) {
        const double t = all_times[k];
        const BracketCount count = count_bracket_violations(*u_fields[k], *d_fields[k], t, eps, out.constants);
        BracketSnapshot snap;
        snap.t = t;
        snap.q = envelope_p_q(t, eps, out.constants).q;
        snap.below = count.below;
        snap.above = count.above;
        snap.worst_excess = count.worst_excess;
        if (k + 1 < all_times.size()) {
            // forward difference in time between consecutive snapshots
            const double dt = all_times[k + 1] - t;
            snap.residual_tolerance = 5.0 * (h + dt) / (eps * eps);
            snap.min_residual_upper = std::numeric_limits<double>::infinity();
            snap.max_residual_lower = -std::numeric_limits<double>::infinity();
            for (int sign : {1, -1}) {
                const ScalarField now = envelope_fields(*d_fields[k], t, eps, out.constants, sign);
                const ScalarField next = envelope_fields(*d_fields[k + 1], all_times[k + 1], eps, out.constants, sign);
                ScalarField u_t(grid);
                for (std::size_t c = 0; c < u_t.size(); ++c) {
                    u_t[c] = (next[c] - now[c]) / dt;
                }
                const ScalarField r = residual_Lv(now, *v_fields[k], u_t, setup.params.chi, eps);
                for (std::size_t c = 0; c < r.size(); ++c) {
                    if (std::abs((*d_fields[k])[c]) >= envelope_d0) {
                        continue;
                    }
                    if (sign > 0) {
                        snap.min_residual_upper = std::min(snap.min_residual_upper, r[c]);
                    } else {
                        snap.max_residual_lower = std::max(snap.max_residual_lower, r[c]);
                    }
                }
            }
        }
        out.snapshots.push_back(snap);
    }

    constexpr int kPSamples = 1001;
    out.p_min = std::numeric_limits<double>::infinity();
    out.p_max = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < kPSamples; ++k) {
        const double p = envelope_p_q(T * k / (kPSamples - 1), eps, out.constants).p;
        out.p_samples.push_back(p);
        out.p_min = std::min(out.p_min, p);
        out.p_max = std::max(out.p_max, p);
    }
    out.seconds = clock.seconds();
    return out;
}

RefinementStudy refinement_study(ProblemSetup setup, const std::vector<int>& n, double t_end)
{
    require(n.size() >= 3, "refinement study needs three grids");
    for (std::size_t k = 1; k < n.size(); ++k) {
        require(n[k] == 2 * n[k - 1], "refinement grids must double");
    }
    std::vector<DiffuseState> finals;
    for (int cells : n) {
        const Grid grid = Grid::unit_square(cells);
        const InitialData data = build_initial_data(setup, grid);
        DiffuseTrajectory traj =
            run_diffuse(DiffuseState::initial(data.u0, data.v0, data.m0), setup.params, t_end, {});
        finals.push_back(std::move(traj.snapshots.back()));
    }
    RefinementStudy out;
    out.n = n;
    for (std::size_t k = 0; k + 1 < finals.size(); ++k) {
        const DiffuseState& coarse = finals[k];
        const DiffuseState& fine = finals[k + 1];
        out.gap_u.push_back(sup_distance(restrict_average(fine.u), coarse.u));
        out.gap_v.push_back(sup_distance(restrict_average(fine.v), coarse.v));
        out.gap_m.push_back(sup_distance(restrict_average(fine.m), coarse.m));
    }
    const std::size_t last = out.gap_u.size() - 1;
    out.order_u = std::log2(out.gap_u[last - 1] / out.gap_u[last]);
    out.order_v = std::log2(out.gap_v[last - 1] / out.gap_v[last]);
    out.order_m = std::log2(out.gap_m[last - 1] / out.gap_m[last]);
    return out;
}

LimitGaps limit_gaps(const DiffuseState& s, const SharpState& ref, const InterfaceCurve& ref_curve, double lambda)
{
    const Grid& grid = s.grid();
    LimitGaps g;
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const Point x = grid.center(i, j);
            const std::size_t k = grid.index(i, j);
            const double m_ref = interpolate_bilinear(ref.m, x);
            const double v_ref = s.v_initial[k] * std::exp(-lambda * interpolate_bilinear(ref.int_m, x));
            g.m_gap = std::max(g.m_gap, std::abs(s.m[k] - m_ref));
            g.v_gap = std::max(g.v_gap, std::abs(s.v[k] - v_ref));
        }
    }
    const InterfaceCurve gamma = extract_level_curve(s.u, 0.5).main();
    g.distance = one_sided_sup_distance(gamma, ref_curve, 0.5 * grid.h());
    g.hausdorff = hausdorff(gamma, ref_curve, 0.5 * grid.h());
    return g;
}

ConvergenceRecord convergence_study(const ConvergenceSetup& setup, const std::vector<double>& eps_list,
                                    const ProgressFn& progress)
{
    require(eps_list.size() >= 2, "convergence study needs at least two eps values");
    for (std::size_t k = 1; k < eps_list.size(); ++k) {
        require(eps_list[k] < eps_list[k - 1], "eps list must be strictly decreasing");
    }
    require(setup.cells_per_eps >= 4.0, "under-resolved: h must not exceed eps/4");
    const std::vector<double> times = uniform_times(0.0, setup.T, setup.snapshots);

    ConvergenceRecord rec;
    rec.eps = eps_list;
    rec.sharp_n = setup.sharp_n;

    // sharp reference
    const Stopwatch sharp_clock;
    const Grid sharp_grid = Grid::unit_square(setup.sharp_n);
    const ProblemSetup& problem = setup.problem;
    SharpState s0 = SharpState::initial(problem.shape.polyline(), problem.v0.sample(sharp_grid),
                                        problem.m0.sample(sharp_grid), setup.sharp);
    report(progress, "sharp reference on " + std::to_string(setup.sharp_n) + "^2");
    const SharpTrajectory limit = run_sharp(std::move(s0), problem.params, setup.sharp, setup.T, times);
    require(!limit.extinct && limit.snapshots.size() == times.size(), "sharp reference ended early");
    std::vector<InterfaceCurve> limit_curves;
    for (const auto& snap : limit.snapshots) {
        limit_curves.push_back(snap.interface().main());
    }
    rec.sharp_steps = limit.steps;
    rec.sharp_seconds = sharp_clock.seconds();

    std::vector<double> sup_d, sup_v, sup_m;
    for (double eps : eps_list) {
        const Stopwatch clock;
        ProblemSetup p = problem;
        p.params.eps = eps;
        ConvergenceCase c;
        c.eps = eps;
        c.n = cells_for_eps(eps, setup.cells_per_eps);
        report(progress, "diffuse eps = " + std::to_string(eps) + " on " + std::to_string(c.n) + "^2");
        const Grid grid = Grid::unit_square(c.n);
        const InitialData data = build_initial_data(p, grid);
        std::size_t index = 0;
        DiffuseRunOptions options;
        options.keep_snapshots = false;
        options.on_snapshot = [&](const DiffuseState& s) {
            const LimitGaps g = limit_gaps(s, limit.snapshots.at(index), limit_curves[index], p.params.lambda);
            c.times.push_back(s.t);
            c.distance.push_back(g.distance);
            c.hausdorff.push_back(g.hausdorff);
            c.v_gap.push_back(g.v_gap);
            c.m_gap.push_back(g.m_gap);
            ++index;
        };
        const DiffuseTrajectory traj =
            run_diffuse(DiffuseState::initial(data.u0, data.v0, data.m0), p.params, setup.T, times, options);
        c.steps = traj.steps;
        c.sup_distance = *std::max_element(c.distance.begin(), c.distance.end());
        c.sup_v_gap = *std::max_element(c.v_gap.begin(), c.v_gap.end());
        c.sup_m_gap = *std::max_element(c.m_gap.begin(), c.m_gap.end());
        c.seconds = clock.seconds();
        sup_d.push_back(c.sup_distance);
        sup_v.push_back(c.sup_v_gap);
        sup_m.push_back(c.sup_m_gap);
        rec.cases.push_back(std::move(c));
    }
    rec.distance_fit = fit_loglog(eps_list, sup_d);
    rec.v_fit = fit_loglog(eps_list, sup_v);
    rec.m_fit = fit_loglog(eps_list, sup_m);
    return rec;
}

}  // namespace haptolab
