#include "haptolab/sharp.hpp"

#include "haptolab/errors.hpp"
#include "haptolab/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace haptolab {

void SharpParams::validate() const
{
    require(d0 > 0.0 && std::isfinite(d0), "d0 must be positive");
    require(redistance_every >= 1, "redistance cadence must be at least 1");
    require(level_set_substeps >= 1, "level-set substeps must be at least 1");
}

SharpState SharpState::initial(const InterfaceCurve& gamma0, const ScalarField& v0, const ScalarField& m0,
                               const SharpParams& sp, double t0)
{
    sp.validate();
    require(v0.grid() == m0.grid(), "v0 and m0 grids differ");
    ScalarField phi = init_levelset(gamma0, v0.grid());
    for (std::size_t k = 0; k < phi.size(); ++k) {
        phi[k] = zeta_clamp(phi[k], sp.d0);
    }
    const Grid& g = v0.grid();
    return SharpState{std::move(phi), v0, m0, ScalarField(g), v0, t0, false, 0};
}

namespace {

double ramp2(double x) { return x > 0.0 ? x * x : 0.0; }

// area fraction of the unit-h cell where c + a xi + b eta < 0, |xi|, |eta| <= h/2
double cut_fraction(double c, double a, double b, double h)
{
    a = std::abs(a);
    b = std::abs(b);
    if (a < b) {
        std::swap(a, b);
    }
    if (a == 0.0) {
        return c < 0.0 ? 1.0 : (c > 0.0 ? 0.0 : 0.5);
    }
    const double s = -c;
    if (b < 1e-6 * a) {
        return std::clamp((s + 0.5 * a * h) / (a * h), 0.0, 1.0);
    }
    const double p = 0.5 * (a + b) * h;
    const double q = 0.5 * (a - b) * h;
    const double area = (ramp2(s + p) - ramp2(s + q) - ramp2(s - q) + ramp2(s - p)) / (2.0 * a * b);
    return std::clamp(area / (h * h), 0.0, 1.0);
}

}  // namespace

ScalarField indicator_fraction(const ScalarField& phi)
{
    const Grid& g = phi.grid();
    const double h = g.h();
    ScalarField out(g);
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const double c = phi(i, j);
            // only cells the zero set can reach need the linearization
            if (std::abs(c) > 2.0 * h) {
                out(i, j) = c < 0.0 ? 1.0 : 0.0;
                continue;
            }
            const double a = (phi.mirrored(i + 1, j) - phi.mirrored(i - 1, j)) / (2.0 * h);
            const double b = (phi.mirrored(i, j + 1) - phi.mirrored(i, j - 1)) / (2.0 * h);
            out(i, j) = cut_fraction(c, a, b, h);
        }
    }
    return out;
}

SharpStepper::SharpStepper(const Grid& grid, const HaptoParams& params, const SharpParams& sharp)
    : params_(params), sharp_(sharp), chi_v_(grid), drift_(grid), phi_next_(grid), mde_(grid)
{
    params_.validate();
    sharp_.validate();
    // The update band |phi| < 2 d0 has frozen cells outside it; narrower than
    // ~8 cells, the kink at its edge reaches the interface between redistances.
    require(sharp_.d0 >= 4.0 * grid.h() * (1.0 - 1e-12),
            "sharp d0 must be at least 4h so the level-set band spans 8 cells");
}

void SharpStepper::compute_drift(const ScalarField& v)
{
    for (std::size_t k = 0; k < v.size(); ++k) {
        chi_v_[k] = params_.chi.value(v[k]);
    }
    gradient_centered(chi_v_, drift_);
}

double SharpStepper::substep_limit() const
{
    const double h = chi_v_.grid().h();
    const double w = drift_.max_norm();
    double dt = h * h / 8.0;
    if (w > 0.0) {
        dt = std::min(dt, h / (4.0 * w));
    }
    return dt;
}

double SharpStepper::dt_max(const SharpState& s)
{
    compute_drift(s.v);
    return sharp_.level_set_substeps * substep_limit();
}

void SharpStepper::redistance_now(SharpState& s)
{
    auto result = redistance(s.phi, 3.0 * sharp_.d0);
    s.steps_since_redistance = 0;
    if (!result) {
        s.extinct = true;
        return;
    }
    const Grid& g = s.grid();
    for (const auto& c : result->curves.components) {
        for (const Point& p : c.points) {
            if (g.wall_distance(p) < 4.0 * sharp_.d0) {
                throw WallMarginViolation("interface came within 4 d0 of the wall at t = " + std::to_string(s.t));
            }
        }
    }
    s.phi = std::move(result->phi);
}

void SharpStepper::step(SharpState& s, double dt)
{
    require(dt > 0.0 && std::isfinite(dt), "time step must be positive");
    require(s.grid() == chi_v_.grid(), "state grid does not match the stepper");
    if (s.extinct) {
        s.t += dt;
        return;
    }
    const Grid& g = s.grid();
    const double h = g.h();
    const int nx = g.nx();

    const double limit = dt_max(s);
    if (dt > limit * (1.0 + 1e-12)) {
        throw CflViolation("dt = " + std::to_string(dt) + " exceeds the stable bound " + std::to_string(limit));
    }

    const ScalarField u = indicator_fraction(s.phi);
    advance_mde(u, params_.lambda, params_.alpha, dt, s.m, s.int_m, s.v, s.v_initial, mde_);
    compute_drift(s.v);

    const int n_sub = std::max(1, static_cast<int>(std::ceil(dt / substep_limit() - 1e-9)));
    const double tau = dt / n_sub;
    const double band = 2.0 * sharp_.d0;
    band_.clear();
    for (int j = 1; j + 1 < g.ny(); ++j) {
        for (int i = 1; i + 1 < nx; ++i) {
            if (std::abs(s.phi(i, j)) < band) {
                band_.push_back(g.index(i, j));
            }
        }
    }
    const double inv2h = 0.5 / h;
    const double inv_h = 1.0 / h;
    const double inv_h2 = 1.0 / (h * h);
    for (int sub = 0; sub < n_sub; ++sub) {
        const double* p = s.phi.data();
        double* next = phi_next_.data();
        for (std::size_t k : band_) {
            const double c = p[k];
            const double e = p[k + 1];
            const double w = p[k - 1];
            const double n = p[k + nx];
            const double so = p[k - nx];
            const double px = (e - w) * inv2h;
            const double py = (n - so) * inv2h;
            const double pxx = (e - 2.0 * c + w) * inv_h2;
            const double pyy = (n - 2.0 * c + so) * inv_h2;
            const double pxy = (p[k + nx + 1] - p[k - nx + 1] - p[k + nx - 1] + p[k - nx - 1]) * 0.25 * inv_h2;
            const double g2 = px * px + py * py;
            if (g2 < 1e-12) {
                throw DegenerateLevelSet("|grad phi| < 1e-6 near the interface at t = " + std::to_string(s.t));
            }
            const double curvature_speed = (pxx * py * py - 2.0 * px * py * pxy + pyy * px * px) / g2;
            const double wx = drift_.x[k];
            const double wy = drift_.y[k];
            const double dx = wx > 0.0 ? (c - w) * inv_h : (e - c) * inv_h;
            const double dy = wy > 0.0 ? (c - so) * inv_h : (n - c) * inv_h;
            next[k] = c + tau * (curvature_speed - (wx * dx + wy * dy));
        }
        double* q = s.phi.data();
        for (std::size_t k : band_) {
            q[k] = next[k];
        }
    }
    s.t += dt;

    if (++s.steps_since_redistance >= sharp_.redistance_every) {
        redistance_now(s);
    }
}

SharpState step_sharp(const SharpState& s, const HaptoParams& p, const SharpParams& sp, double dt)
{
    SharpStepper stepper(s.grid(), p, sp);
    SharpState out = s;
    stepper.step(out, dt);
    return out;
}

SharpTrajectory run_sharp(SharpState s, const HaptoParams& p, const SharpParams& sp, double t_end,
                          std::vector<double> snapshot_times, const SharpRunOptions& options)
{
    require(t_end >= s.t, "t_end lies before the initial time");
    require(options.dt >= 0.0, "invalid step options");
    std::sort(snapshot_times.begin(), snapshot_times.end());
    snapshot_times.erase(std::unique(snapshot_times.begin(), snapshot_times.end()), snapshot_times.end());
    std::erase_if(snapshot_times, [&](double t) { return t < s.t || t >= t_end; });
    snapshot_times.push_back(t_end);

    SharpTrajectory traj;
    SharpStepper stepper(s.grid(), p, sp);
    auto emit = [&](const SharpState& state) {
        SharpState copy = state;
        if (!copy.extinct && copy.steps_since_redistance != 0) {
            stepper.redistance_now(copy);
        }
        if (options.on_snapshot) {
            options.on_snapshot(copy);
        }
        if (options.keep_snapshots) {
            traj.snapshots.push_back(std::move(copy));
        }
    };

    for (double target : snapshot_times) {
        while (s.t < target && !s.extinct) {
            const double dt_full = options.dt > 0.0 ? options.dt : stepper.dt_max(s);
            const double remaining = target - s.t;
            const bool last = remaining <= dt_full;
            const double dt = last ? remaining : (remaining < 2.0 * dt_full ? 0.5 * remaining : dt_full);
            stepper.step(s, dt);
            if (last) {
                s.t = target;
            }
            ++traj.steps;
            if (options.on_step) {
                options.on_step(s);
            }
        }
        if (s.extinct) {
            traj.extinct = true;
            break;
        }
        emit(s);
    }
    return traj;
}

}  // namespace haptolab
