#pragma once

#include "haptolab/chi.hpp"
#include "haptolab/grid.hpp"
#include "haptolab/linear_solve.hpp"

#include <functional>
#include <vector>

namespace haptolab {

struct HaptoParams {
    double eps = 0.05;
    double lambda = 1.0;
    double alpha = 1.0;
    ChiSpec chi;
    double C0 = 2.0;

    // throws InvalidArgument
    void validate() const;
};

// (u, v, m) with the running integral int_m = int_0^t m and the ECM datum
// v_initial, so that v = v_initial * exp(-lambda int_m) holds exactly.
struct DiffuseState {
    ScalarField u;
    ScalarField v;
    ScalarField m;
    ScalarField int_m;
    ScalarField v_initial;
    double t = 0.0;

    static DiffuseState initial(const ScalarField& u0, const ScalarField& v0, const ScalarField& m0, double t0 = 0.0);
    const Grid& grid() const { return u.grid(); }
};

// min(h^2/8, eps^2/10, h / (4 max|grad chi(v)|)) for the current state.
double diffuse_dt_max(const DiffuseState& s, const HaptoParams& p);

// One backward-Euler step of m_t = alpha Lap m + source - m, followed by the
// trapezoid update of int_m and v = v_initial exp(-lambda int_m). An explicit
// Euler step from the current m is the initial CG guess; round-off negatives
// of m are cut to zero.
struct MdeWorkspace {
    explicit MdeWorkspace(const Grid& grid) : rhs(grid), m_old(grid), lap(grid) {}
    ScalarField rhs;
    ScalarField m_old;
    ScalarField lap;
    CgWorkspace cg;
};
void advance_mde(const ScalarField& source, double lambda, double alpha, double dt, ScalarField& m, ScalarField& int_m,
                 ScalarField& v, const ScalarField& v_initial, MdeWorkspace& ws);

// Strang-split stepper for the diffuse system, owning its scratch fields:
//   reaction dt/2 (RK4, substeps <= eps^2/20)
//   u += dt (Lap u - div(u grad chi(v)))        upwind, explicit
//   m by backward Euler with source u(t_n); int_m, v updated
//   reaction dt/2
// Throws CflViolation when dt exceeds diffuse_dt_max and StabilityViolation
// when u leaves [-1e-8, C0 + 1e-8] or m exceeds C0 + 1e-8.
class DiffuseStepper {
public:
    DiffuseStepper(const Grid& grid, const HaptoParams& params);

    void step(DiffuseState& s, double dt);
    double dt_max(const DiffuseState& s);
    const HaptoParams& params() const { return params_; }

private:
    void compute_drift(const ScalarField& v);
    void react(ScalarField& u, double dt) const;

    HaptoParams params_;
    ScalarField chi_v_;
    VectorField drift_;
    ScalarField lap_;
    ScalarField div_;
    ScalarField u_start_;
    MdeWorkspace mde_;
};

DiffuseState step_diffuse(const DiffuseState& s, const HaptoParams& p, double dt);

struct DiffuseRunOptions {
    // fixed step; 0 selects dt_safety * diffuse_dt_max at every step
    double dt = 0.0;
    double dt_safety = 1.0;
    bool keep_snapshots = true;
    std::function<void(const DiffuseState&)> on_snapshot;
    std::function<void(const DiffuseState&)> on_step;
};

struct DiffuseTrajectory {
    std::vector<DiffuseState> snapshots;
    long steps = 0;
};

// Advances to t_end, landing exactly on every requested snapshot time in
// [s0.t, t_end] by shortening the step before it. The final state is always
// emitted; t_end == s0.t yields just s0.
DiffuseTrajectory run_diffuse(DiffuseState s0, const HaptoParams& p, double t_end, std::vector<double> snapshot_times,
                              const DiffuseRunOptions& options = {});

struct VmTrajectory {
    std::vector<double> times;
    std::vector<ScalarField> v;
    std::vector<ScalarField> m;
};

// Integrates (v, m) alone for the prescribed u history (times increasing,
// u linear in time between samples) with the stepping used by the full
// solver; returns (v, m) at the sample times. This realizes u -> H(u) = v.
VmTrajectory solve_vm_for_u(const std::vector<double>& times, const std::vector<ScalarField>& u_history,
                            const HaptoParams& p, const ScalarField& v0, const ScalarField& m0, double dt_max = 0.0);

}  // namespace haptolab
