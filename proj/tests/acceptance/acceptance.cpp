// Acceptance suite: one PASS/FAIL line per criterion. The library does the
// simulations; every quantity that decides a verdict is recomputed here from
// raw fields with formulas written out independently of core/.

#include "haptolab/bistable.hpp"
#include "haptolab/config.hpp"
#include "haptolab/curve.hpp"
#include "haptolab/diffuse.hpp"
#include "haptolab/envelope.hpp"
#include "haptolab/sharp.hpp"
#include "haptolab/studies.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

using namespace haptolab;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigDir = HAPTOLAB_CONFIG_DIR;
const std::string kCli = HAPTOLAB_CLI;

// ------------------------------------------------------------------ oracles
double U0(double z) { return 1.0 / (1.0 + std::exp(z / std::numbers::sqrt2)); }
double U0_prime(double z) { return -U0(z) * (1.0 - U0(z)) / std::numbers::sqrt2; }
double U0_second(double z) { return -(1.0 - 2.0 * U0(z)) * U0_prime(z) / std::numbers::sqrt2; }
double f(double u) { return u * (1.0 - u) * (u - 0.5); }
double f_du(double u) { return -3.0 * u * u + 3.0 * u - 0.5; }

struct PQ {
    double p, q;
};

PQ p_q(double t, double eps, const EnvelopeConstants& c)
{
    const double a = std::exp(-c.beta * t / (eps * eps));
    const double g = std::exp(c.L * t);
    return {-a + g + c.K, c.sigma * (c.beta * a + eps * eps * c.L * g)};
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double shoelace_area(const InterfaceCurve& c)
{
    double a = 0.0;
    for (std::size_t k = 0; k < c.points.size(); ++k) {
        const Point p = c.points[k];
        const Point q = c.points[(k + 1) % c.points.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * std::abs(a);
}

LinearFit least_squares_loglog(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double lx = std::log(x[k]), ly = std::log(y[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = std::exp((sy - fit.slope * sx) / n);
    return fit;
}

// 2x2 cell average of a field on the doubled grid
std::vector<double> coarsen(const ScalarField& fine)
{
    const Grid& g = fine.grid();
    const int n = g.nx() / 2;
    std::vector<double> out(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            out[static_cast<std::size_t>(j) * n + i] =
                0.25 * (fine(2 * i, 2 * j) + fine(2 * i + 1, 2 * j) + fine(2 * i, 2 * j + 1) + fine(2 * i + 1, 2 * j + 1));
        }
    }
    return out;
}

double sup_gap(const std::vector<double>& a, const ScalarField& b)
{
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    return worst;
}

bool strictly_decreasing(const std::vector<double>& x)
{
    for (std::size_t k = 1; k < x.size(); ++k) {
        if (!(x[k] < x[k - 1])) {
            return false;
        }
    }
    return true;
}

ProblemSetup setup_of(const RunConfig& cfg)
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

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

struct Verdict {
    bool passed = false;
    std::string detail;
};

// ---------------------------------------------------------------------- AC1
Verdict standing_profile_oracle()
{
    const auto t0 = std::chrono::steady_clock::now();
    double residual = 0.0;
    for (int k = 0; k <= 40000; ++k) {
        const double z = -20.0 + 40.0 * k / 40000;
        // library profile and its second derivative against the ODE
        residual = std::max(residual, std::abs(standing_profile_second(z) + f(standing_profile(z))));
        // and the independent closed form
        residual = std::max(residual, std::abs(U0_second(z) + f(U0(z))));
    }
    const ProfileTable table = solve_profile_bvp(20.0, 4000);
    double bvp = 0.0;
    for (std::size_t k = 0; k < table.z.size(); ++k) {
        bvp = std::max(bvp, std::abs(table.u[k] - U0(table.z[k])));
    }
    const double secs = seconds_since(t0);
    return {residual <= 1e-12 && bvp <= 1e-6 && secs < 1.0,
            "ODE residual " + num(residual) + ", BVP gap " + num(bvp) + ", " + num(secs) + " s"};
}

// ---------------------------------------------------------------------- AC2
Verdict curvature_flow_oracle()
{
    const RunConfig cfg = parse_config_file(kConfigDir / "mcf_circle.json");
    const double R0 = cfg.shape.r0;
    if (cfg.sharp_n != 256 || cfg.params.chi.kind() != ChiSpec::Kind::constant) {
        return {false, "mcf_circle.json must use chi constant on 256^2"};
    }
    const auto t0 = std::chrono::steady_clock::now();
    const Grid grid = Grid::unit_square(cfg.sharp_n);
    SharpState s0 = SharpState::initial(cfg.shape.polyline(), cfg.v0.sample(grid), cfg.m0.sample(grid), cfg.sharp);
    const SharpTrajectory traj = run_sharp(std::move(s0), cfg.params, cfg.sharp, cfg.T, cfg.schedule());
    const double secs = seconds_since(t0);
    double worst = 0.0, smallest = R0;
    for (const SharpState& s : traj.snapshots) {
        const double r = std::sqrt(shoelace_area(s.interface().main()) / std::numbers::pi);
        const double exact = std::sqrt(R0 * R0 - 2.0 * s.t);
        worst = std::max(worst, std::abs(r - exact) / exact);
        smallest = std::min(smallest, exact);
    }
    const bool deep = smallest <= 0.2 * R0 * (1.0 + 1e-6);
    return {!traj.extinct && deep && worst <= 0.01 && secs < 60.0,
            "max relative radius error " + num(worst) + " down to R = " + num(smallest / R0) + " R0, " +
                num(secs) + " s"};
}

// ---------------------------------------------------------------------- AC3
Verdict generation_oracle()
{
    const RunConfig cfg = parse_config_file(kConfigDir / "generation.json");
    const std::vector<double> wanted{0.04, 0.02, 0.01};
    if (cfg.eps_list != wanted || cfg.eta != 0.1 || cfg.cells_per_eps != 4.0) {
        return {false, "generation.json must use eps {0.04, 0.02, 0.01}, eta 0.1, h = eps/4"};
    }
    bool ok = true;
    std::string detail = "M0 = " + num(cfg.M0) + ";";
    for (double eps : cfg.eps_list) {
        const auto t0 = std::chrono::steady_clock::now();
        ProblemSetup setup = setup_of(cfg);
        setup.params.eps = eps;
        const int n = static_cast<int>(std::ceil(4.0 / eps - 1e-9));
        const Grid grid = Grid::unit_square(n);
        const InitialData data = build_initial_data(setup, grid);
        const double t_star = 4.0 * eps * eps * std::abs(std::log(eps));
        const DiffuseTrajectory traj =
            run_diffuse(DiffuseState::initial(data.u0, data.v0, data.m0), setup.params, t_star, {t_star});
        const DiffuseState& s = traj.snapshots.back();
        long va = 0, vb = 0, upper = 0, lower = 0;
        for (std::size_t k = 0; k < s.u.size(); ++k) {
            const double u = s.u[k], u0 = data.u0[k];
            va += u < -cfg.eta || u > 1.0 + cfg.eta;
            if (u0 >= 0.5 + cfg.M0 * eps) {
                ++upper;
                vb += u < 1.0 - cfg.eta;
            } else if (u0 <= 0.5 - cfg.M0 * eps) {
                ++lower;
                vb += u > cfg.eta;
            }
        }
        const double secs = seconds_since(t0);
        ok = ok && s.t == t_star && va == 0 && vb == 0 && grid.h() <= eps / 4.0 && secs < 300.0;
        detail += " eps " + num(eps) + ": (a) " + std::to_string(va) + ", (b) " + std::to_string(vb) + " over " +
                  std::to_string(upper) + "+" + std::to_string(lower) + " cells, " + num(secs) + " s;";
    }
    detail.pop_back();
    return {ok, detail};
}

// ---------------------------------------------------------------- AC4 + AC5
struct ConvergenceVerdicts {
    Verdict localization{false, "not evaluated"};
    Verdict fields{false, "not evaluated"};
};

ConvergenceVerdicts convergence_oracle()
{
    const RunConfig cfg = parse_config_file(kConfigDir / "convergence.json");
    const std::vector<double> wanted{0.04, 0.02, 0.01};
    if (cfg.eps_list != wanted) {
        const Verdict bad{false, "convergence.json must use eps {0.04, 0.02, 0.01}"};
        return {bad, bad};
    }
    const auto t0 = std::chrono::steady_clock::now();
    ConvergenceSetup setup;
    setup.problem = setup_of(cfg);
    setup.cells_per_eps = cfg.cells_per_eps;
    setup.T = cfg.T;
    setup.snapshots = cfg.snapshot_count;
    setup.sharp_n = cfg.sharp_n;
    setup.sharp = cfg.sharp;
    const ConvergenceRecord rec = convergence_study(setup, cfg.eps_list);
    const double secs = seconds_since(t0);

    std::vector<double> d, v, m;
    for (const ConvergenceCase& c : rec.cases) {
        d.push_back(*std::max_element(c.distance.begin(), c.distance.end()));
        v.push_back(*std::max_element(c.v_gap.begin(), c.v_gap.end()));
        m.push_back(*std::max_element(c.m_gap.begin(), c.m_gap.end()));
    }
    const double slope = least_squares_loglog(cfg.eps_list, d).slope;
    ConvergenceVerdicts out;
    out.localization = {strictly_decreasing(d) && slope >= 0.7 && slope <= 1.3 && secs < 1200.0,
                        "sup distance " + num(d[0]) + " > " + num(d[1]) + " > " + num(d[2]) + ", slope " +
                            num(slope) + ", " + num(secs) + " s"};
    const double rv = v.back() / v.front(), rm = m.back() / m.front();
    out.fields = {strictly_decreasing(v) && strictly_decreasing(m) && rv <= 0.6 && rm <= 0.6,
                  "v gap ratio " + num(rv) + ", m gap ratio " + num(rm)};
    return out;
}

// ---------------------------------------------------------------- AC6 + AC7
// One reference run (compare.json) feeds the per-step bounds, the envelope
// bracket and the residual signs.
struct ReferenceVerdicts {
    Verdict invariants{false, "not evaluated"};
    Verdict envelope{false, "not evaluated"};
};

long h_monotone_violations(int pairs, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const Grid g = Grid::unit_square(16);
    HaptoParams p;
    p.eps = 0.05;
    p.lambda = 1.3;
    p.alpha = 0.7;
    const ScalarField v0 = ModeSum{1.0, {{1, 1, 0.3}}}.sample(g);
    const ScalarField m0 = ModeSum{0.3, {{1, 2, 0.1}}}.sample(g);
    const std::vector<double> times{0.0, 0.02, 0.04, 0.06};
    long violations = 0;
    for (int pair = 0; pair < pairs; ++pair) {
        std::vector<ScalarField> lo, hi;
        for (std::size_t n = 0; n < times.size(); ++n) {
            ScalarField a(g), b(g);
            for (std::size_t k = 0; k < a.size(); ++k) {
                a[k] = 2.0 * U(rng);
                b[k] = a[k] + U(rng);
            }
            lo.push_back(a);
            hi.push_back(b);
        }
        const VmTrajectory r_lo = solve_vm_for_u(times, lo, p, v0, m0);
        const VmTrajectory r_hi = solve_vm_for_u(times, hi, p, v0, m0);
        // u1 <= u2 implies H(u1) >= H(u2)
        for (std::size_t n = 0; n < times.size(); ++n) {
            for (std::size_t k = 0; k < v0.size(); ++k) {
                violations += r_hi.v[n][k] > r_lo.v[n][k];
            }
        }
    }
    return violations;
}

ReferenceVerdicts reference_oracle()
{
    const RunConfig cfg = parse_config_file(kConfigDir / "compare.json");
    const double eps = cfg.params.eps;
    const double C0 = cfg.params.C0;
    const Grid grid = Grid::unit_square(cfg.grid_n);
    ProblemSetup setup = setup_of(cfg);
    setup.width = eps;
    const InitialData data = build_initial_data(setup, grid);

    // per-step a priori bounds and monotone v
    long bound_violations = 0, v_increases = 0, states = 0;
    ScalarField v_prev = data.v0;
    DiffuseRunOptions options;
    options.on_step = [&](const DiffuseState& s) {
        for (std::size_t k = 0; k < s.u.size(); ++k) {
            bound_violations += s.u[k] < -1e-8 || s.u[k] > C0 + 1e-8;
            bound_violations += s.m[k] < -1e-8 || s.m[k] > C0 + 1e-8;
            bound_violations += s.v[k] < -1e-8 || s.v[k] > data.v0[k] + 1e-8;
            v_increases += s.v[k] > v_prev[k];
        }
        v_prev = s.v;
        ++states;
    };
    const std::vector<double> times = cfg.schedule();
    const DiffuseTrajectory diffuse =
        run_diffuse(DiffuseState::initial(data.u0, data.v0, data.m0), cfg.params, cfg.T, times, options);

    // envelope constants and the sharp distance on the same grid
    const EnvelopeConstants c = envelope_constants(cfg.T, cfg.envelope_d0, eps, cfg.envelope_K);
    SharpParams sharp = cfg.sharp;
    sharp.d0 = cfg.envelope_d0;
    const SharpState s0 = SharpState::initial(cfg.shape.polyline(), data.v0, data.m0, sharp);
    const SharpTrajectory limit = run_sharp(s0, cfg.params, sharp, cfg.T, times);

    std::vector<double> t_all{0.0};
    std::vector<const ScalarField*> d{&s0.phi}, u{&data.u0}, v{&data.v0};
    for (std::size_t k = 0; k < times.size(); ++k) {
        t_all.push_back(times[k]);
        d.push_back(&limit.snapshots.at(k).phi);
        u.push_back(&diffuse.snapshots.at(k).u);
        v.push_back(&diffuse.snapshots.at(k).v);
    }

    long outside = 0;
    double min_upper = std::numeric_limits<double>::infinity();
    double max_lower = -std::numeric_limits<double>::infinity();
    double slack = 0.0;
    for (std::size_t k = 0; k < t_all.size(); ++k) {
        const PQ pq = p_q(t_all[k], eps, c);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double dd = (*d[k])[i];
            const double lower = U0((dd + eps * pq.p) / eps) - pq.q;
            const double upper = U0((dd - eps * pq.p) / eps) + pq.q;
            outside += (*u[k])[i] < lower - 1e-6 - pq.q || (*u[k])[i] > upper + 1e-6 + pq.q;
        }
        if (k + 1 == t_all.size()) {
            break;
        }
        // L_v on both envelopes with a forward difference in time
        const double dt = t_all[k + 1] - t_all[k];
        const PQ next = p_q(t_all[k + 1], eps, c);
        slack = std::max(slack, 5.0 * (grid.h() + dt) / (eps * eps));
        for (int sign : {1, -1}) {
            ScalarField now(grid), u_t(grid);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                now[i] = U0(((*d[k])[i] - sign * eps * pq.p) / eps) + sign * pq.q;
                const double later = U0(((*d[k + 1])[i] - sign * eps * next.p) / eps) + sign * next.q;
                u_t[i] = (later - now[i]) / dt;
            }
            const ScalarField r = residual_Lv(now, *v[k], u_t, cfg.params.chi, eps);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                if (std::abs((*d[k])[i]) >= cfg.envelope_d0) {
                    continue;
                }
                if (sign > 0) {
                    min_upper = std::min(min_upper, r[i]);
                } else {
                    max_lower = std::max(max_lower, r[i]);
                }
            }
        }
    }

    const long h_violations = h_monotone_violations(20, cfg.seed);
    ReferenceVerdicts out;
    out.invariants = {bound_violations == 0 && v_increases == 0 && h_violations == 0 && outside == 0,
                      std::to_string(states) + " steps: bounds " + std::to_string(bound_violations) +
                          ", v increases " + std::to_string(v_increases) + "; H-monotone 20 pairs: " +
                          std::to_string(h_violations) + "; bracket: " + std::to_string(outside) + " cells outside"};

    // envelope inequalities
    double profile_margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 40000; ++k) {
        const double z = -20.0 + 40.0 * k / 40000;
        profile_margin = std::min(profile_margin, -U0_prime(z) - c.sigma * f_du(U0(z)) - 4.0 * c.sigma * c.beta);
    }
    const double growth = std::exp(c.L * c.T);
    const bool eq_small = c.eps0 * c.eps0 * c.L * growth <= 1.0;
    const bool eq_room = growth + c.K <= c.d0 / (2.0 * c.eps0) * (1.0 + 1e-12);
    double p_lo = std::numeric_limits<double>::infinity(), p_hi = -p_lo;
    for (int k = 0; k <= 10000; ++k) {
        const double p = p_q(c.T * k / 10000, eps, c).p;
        p_lo = std::min(p_lo, p);
        p_hi = std::max(p_hi, p);
    }
    const bool p_ok = p_lo >= c.K - 1.0 && p_hi <= c.d0 / (2.0 * c.eps0) * (1.0 + 1e-12);
    const bool signs = min_upper >= -slack && max_lower <= slack;
    out.envelope = {profile_margin >= 0.0 && eq_small && eq_room && p_ok && signs,
                    "profile margin " + num(profile_margin) + ", eps0^2 L e^LT = " +
                        num(c.eps0 * c.eps0 * c.L * growth) + ", e^LT + K = " + num(growth + c.K) + " <= " +
                        num(c.d0 / (2 * c.eps0)) + ", p in [" + num(p_lo) + ", " + num(p_hi) + "], residual " +
                        "min L[u+] " + num(min_upper) + ", max L[u-] " + num(max_lower) + " (slack " +
                        num(slack) + ")"};
    return out;
}

// ---------------------------------------------------------------------- AC8
int run_cli(const std::string& args)
{
    const std::string cmd = "\"" + kCli + "\" " + args + " -q > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return status == -1 ? -1 : WEXITSTATUS(status);
}

Verdict determinism_and_refinement()
{
    const fs::path root = fs::temp_directory_path() / "haptolab_acceptance";
    fs::remove_all(root);
    const std::string config = (kConfigDir / "diffuse.json").string();
    const int a = run_cli("simulate-diffuse --config \"" + config + "\" --out \"" + (root / "a").string() + "\"");
    const int b = run_cli("simulate-diffuse --config \"" + config + "\" --out \"" + (root / "b").string() + "\"");
    bool identical = a == 0 && b == 0;
    for (const char* file : {"metrics.csv", "report.json"}) {
        const std::string x = slurp(root / "a" / file), y = slurp(root / "b" / file);
        identical = identical && !x.empty() && x == y;
    }
    fs::remove_all(root);

    // grid and time step halve together (dt = h^2/8 binds on these grids)
    const RunConfig cfg = parse_config_file(kConfigDir / "diffuse.json");
    const ProblemSetup setup = setup_of(cfg);
    const std::vector<int> cells{cfg.grid_n, 2 * cfg.grid_n, 4 * cfg.grid_n};
    std::vector<DiffuseState> finals;
    for (int n : cells) {
        const Grid grid = Grid::unit_square(n);
        const InitialData data = build_initial_data(setup, grid);
        DiffuseRunOptions options;
        options.dt = 1.0 / (8.0 * n * n);  // h^2/8
        DiffuseTrajectory traj =
            run_diffuse(DiffuseState::initial(data.u0, data.v0, data.m0), cfg.params, cfg.T, {}, options);
        finals.push_back(std::move(traj.snapshots.back()));
    }
    double worst_order = std::numeric_limits<double>::infinity();
    std::string orders;
    for (auto field : {&DiffuseState::u, &DiffuseState::v, &DiffuseState::m}) {
        const double coarse = sup_gap(coarsen(finals[1].*field), finals[0].*field);
        const double fine = sup_gap(coarsen(finals[2].*field), finals[1].*field);
        const double order = std::log2(coarse / fine);
        worst_order = std::min(worst_order, order);
        orders += (orders.empty() ? "" : ", ") + num(order);
    }
    return {identical && worst_order >= 1.0,
            std::string("metrics ") + (identical ? "byte-identical" : "DIFFER") + "; refinement orders (u, v, m) " +
                orders};
}

}  // namespace

int main()
{
    int failures = 0;
    const auto report = [&](const char* id, const std::function<Verdict()>& criterion) {
        Verdict v;
        try {
            v = criterion();
        } catch (const std::exception& e) {
            v = {false, std::string("error: ") + e.what()};
        }
        failures += !v.passed;
        std::cout << id << ' ' << (v.passed ? "PASS" : "FAIL") << "  " << v.detail << std::endl;
    };

    report("AC1", standing_profile_oracle);
    report("AC2", curvature_flow_oracle);
    report("AC3", generation_oracle);
    ConvergenceVerdicts conv;
    report("AC4", [&] {
        conv = convergence_oracle();
        return conv.localization;
    });
    report("AC5", [&] { return conv.fields; });
    ReferenceVerdicts ref;
    report("AC6", [&] {
        ref = reference_oracle();
        return ref.invariants;
    });
    report("AC7", [&] { return ref.envelope; });
    report("AC8", determinism_and_refinement);
    return failures == 0 ? 0 : 1;
}
