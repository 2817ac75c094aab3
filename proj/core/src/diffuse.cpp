#include "haptolab/diffuse.hpp"

#include "haptolab/bistable.hpp"
#include "haptolab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace haptolab {

void HaptoParams::validate() const
{
    require(eps > 0.0 && std::isfinite(eps), "eps must be positive");
    require(lambda > 0.0 && std::isfinite(lambda), "lambda must be positive");
    require(alpha > 0.0 && std::isfinite(alpha), "alpha must be positive");
    require(C0 > 1.0 && std::isfinite(C0), "C0 must exceed 1");
}

DiffuseState DiffuseState::initial(const ScalarField& u0, const ScalarField& v0, const ScalarField& m0, double t0)
{
    require(u0.grid() == v0.grid() && u0.grid() == m0.grid(), "initial fields live on different grids");
    require(u0.all_finite() && v0.all_finite() && m0.all_finite(), "initial fields must be finite");
    return DiffuseState{u0, v0, m0, ScalarField(u0.grid()), v0, t0};
}

void advance_mde(const ScalarField& source, double lambda, double alpha, double dt, ScalarField& m, ScalarField& int_m,
                 ScalarField& v, const ScalarField& v_initial, MdeWorkspace& ws)
{
    const std::size_t n = m.size();
    laplacian_neumann(m, ws.lap);
    for (std::size_t k = 0; k < n; ++k) {
        ws.m_old[k] = m[k];
        ws.rhs[k] = m[k] + dt * source[k];
        // explicit Euler predictor as the CG guess: residual O(dt^2)
        m[k] += dt * (alpha * ws.lap[k] + source[k] - m[k]);
    }
    // (1 + dt) m' - dt alpha Lap m' = m + dt u
    solve_shifted_laplacian(1.0 + dt, dt * alpha, ws.rhs, m, 1e-10, 5000, &ws.cg);
    for (std::size_t k = 0; k < n; ++k) {
        m[k] = std::max(m[k], 0.0);
        int_m[k] += 0.5 * dt * (ws.m_old[k] + m[k]);
        v[k] = v_initial[k] * std::exp(-lambda * int_m[k]);
    }
}

DiffuseStepper::DiffuseStepper(const Grid& grid, const HaptoParams& params)
    : params_(params), chi_v_(grid), drift_(grid), lap_(grid), div_(grid), u_start_(grid), mde_(grid)
{
    params_.validate();
}

void DiffuseStepper::compute_drift(const ScalarField& v)
{
    for (std::size_t k = 0; k < v.size(); ++k) {
        chi_v_[k] = params_.chi.value(v[k]);
    }
    gradient_centered(chi_v_, drift_);
}

double DiffuseStepper::dt_max(const DiffuseState& s)
{
    const double h = s.grid().h();
    compute_drift(s.v);
    const double w = drift_.max_norm();
    double dt = std::min(h * h / 8.0, params_.eps * params_.eps / 10.0);
    if (w > 0.0) {
        dt = std::min(dt, h / (4.0 * w));
    }
    return dt;
}

void DiffuseStepper::react(ScalarField& u, double dt) const
{
    const double eps2 = params_.eps * params_.eps;
    const int n_sub = std::max(1, static_cast<int>(std::ceil(dt / (eps2 / 20.0) - 1e-12)));
    const double tau = dt / n_sub;
    const double c = tau / eps2;
    double* uv = u.data();
    const std::size_t n = u.size();
    for (std::size_t k = 0; k < n; ++k) {
        double y = uv[k];
        for (int s = 0; s < n_sub; ++s) {
            const double k1 = f_bistable(y);
            const double k2 = f_bistable(y + 0.5 * c * k1);
            const double k3 = f_bistable(y + 0.5 * c * k2);
            const double k4 = f_bistable(y + c * k3);
            y += c / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        uv[k] = y;
    }
}

void DiffuseStepper::step(DiffuseState& s, double dt)
{
    require(dt > 0.0 && std::isfinite(dt), "time step must be positive");
    require(s.grid() == chi_v_.grid(), "state grid does not match the stepper");
    const double limit = dt_max(s);  // also leaves grad chi(v(t_n)) in drift_
    if (dt > limit * (1.0 + 1e-12)) {
        throw CflViolation("dt = " + std::to_string(dt) + " exceeds the stable bound " + std::to_string(limit));
    }
    const std::size_t n = s.u.size();
    std::copy(s.u.data(), s.u.data() + n, u_start_.data());

    react(s.u, 0.5 * dt);

    laplacian_neumann(s.u, lap_);
    advective_divergence(s.u, drift_, div_);
    for (std::size_t k = 0; k < n; ++k) {
        s.u[k] += dt * (lap_[k] - div_[k]);
    }

    advance_mde(u_start_, params_.lambda, params_.alpha, dt, s.m, s.int_m, s.v, s.v_initial, mde_);

    react(s.u, 0.5 * dt);
    s.t += dt;

    const double lo = -1e-8;
    const double hi = params_.C0 + 1e-8;
    for (std::size_t k = 0; k < n; ++k) {
        const double u = s.u[k];
        if (!(u >= lo && u <= hi)) {
            throw StabilityViolation("u = " + std::to_string(u) + " left [0, C0] at t = " + std::to_string(s.t) +
                                     "; reduce dt");
        }
        if (!(s.m[k] <= hi)) {
            throw StabilityViolation("m exceeded C0 at t = " + std::to_string(s.t) + "; reduce dt");
        }
    }
}

DiffuseState step_diffuse(const DiffuseState& s, const HaptoParams& p, double dt)
{
    DiffuseStepper stepper(s.grid(), p);
    DiffuseState out = s;
    stepper.step(out, dt);
    return out;
}

double diffuse_dt_max(const DiffuseState& s, const HaptoParams& p)
{
    DiffuseStepper stepper(s.grid(), p);
    return stepper.dt_max(s);
}

DiffuseTrajectory run_diffuse(DiffuseState s, const HaptoParams& p, double t_end, std::vector<double> snapshot_times,
                              const DiffuseRunOptions& options)
{
    require(t_end >= s.t, "t_end lies before the initial time");
    require(options.dt >= 0.0 && options.dt_safety > 0.0 && options.dt_safety <= 1.0, "invalid step options");
    std::sort(snapshot_times.begin(), snapshot_times.end());
    snapshot_times.erase(std::unique(snapshot_times.begin(), snapshot_times.end()), snapshot_times.end());
    std::erase_if(snapshot_times, [&](double t) { return t < s.t || t >= t_end; });
    snapshot_times.push_back(t_end);

    DiffuseTrajectory traj;
    auto emit = [&](const DiffuseState& state) {
        if (options.on_snapshot) {
            options.on_snapshot(state);
        }
        if (options.keep_snapshots) {
            traj.snapshots.push_back(state);
        }
    };

    DiffuseStepper stepper(s.grid(), p);
    for (double target : snapshot_times) {
        while (s.t < target) {
            const double dt_full = options.dt > 0.0 ? options.dt : options.dt_safety * stepper.dt_max(s);
            const double remaining = target - s.t;
            // split the final stretch in two rather than leaving a sliver step
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
        emit(s);
    }
    return traj;
}

VmTrajectory solve_vm_for_u(const std::vector<double>& times, const std::vector<ScalarField>& u_history,
                            const HaptoParams& p, const ScalarField& v0, const ScalarField& m0, double dt_max)
{
    p.validate();
    require(!times.empty() && times.size() == u_history.size(), "u history needs one field per time");
    require(std::is_sorted(times.begin(), times.end()), "u history times must increase");
    const Grid& g = v0.grid();
    require(m0.grid() == g, "v0 and m0 grids differ");
    for (const auto& u : u_history) {
        require(u.grid() == g, "u history grid differs from v0");
    }
    if (dt_max <= 0.0) {
        dt_max = g.h() * g.h() / 8.0;
    }

    VmTrajectory out;
    ScalarField m = m0;
    ScalarField v = v0;
    ScalarField int_m(g);
    ScalarField source(g);
    MdeWorkspace ws(g);
    out.times.push_back(times[0]);
    out.v.push_back(v);
    out.m.push_back(m);
    for (std::size_t seg = 0; seg + 1 < times.size(); ++seg) {
        const double t0 = times[seg];
        const double t1 = times[seg + 1];
        const int n_steps = std::max(1, static_cast<int>(std::ceil((t1 - t0) / dt_max - 1e-9)));
        const double dt = (t1 - t0) / n_steps;
        for (int k = 0; k < n_steps; ++k) {
            const double theta = static_cast<double>(k) / n_steps;
            for (std::size_t c = 0; c < source.size(); ++c) {
                source[c] = (1.0 - theta) * u_history[seg][c] + theta * u_history[seg + 1][c];
            }
            advance_mde(source, p.lambda, p.alpha, dt, m, int_m, v, v0, ws);
        }
        out.times.push_back(t1);
        out.v.push_back(v);
        out.m.push_back(m);
    }
    return out;
}

}  // namespace haptolab
