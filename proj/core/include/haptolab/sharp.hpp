#pragma once

#include "haptolab/curve.hpp"
#include "haptolab/diffuse.hpp"
#include "haptolab/grid.hpp"

#include <functional>
#include <vector>

namespace haptolab {

struct SharpParams {
    double d0 = 0.01;
    // steps between redistances
    int redistance_every = 5;
    // explicit level-set substeps allowed per step; each obeys dt <= h^2/8
    int level_set_substeps = 1;

    void validate() const;
};

// Level set phi (negative inside, clamped distance near the interface), the
// ECM and MDE fields of the limit problem, and the running integral of m.
struct SharpState {
    ScalarField phi;
    ScalarField v;
    ScalarField m;
    ScalarField int_m;
    ScalarField v_initial;
    double t = 0.0;
    bool extinct = false;
    int steps_since_redistance = 0;

    // phi = zeta-clamped signed distance to gamma0; v = v0, m = m0.
    static SharpState initial(const InterfaceCurve& gamma0, const ScalarField& v0, const ScalarField& m0,
                              const SharpParams& sp, double t0 = 0.0);
    const Grid& grid() const { return phi.grid(); }
    // zero curves of phi, longest first
    LevelCurves interface() const { return extract_level_curve(phi, 0.0); }
};

// Fraction of each cell covered by {phi < 0} when phi is replaced by its
// linearization (centered gradient) at the cell center; this is the source
// u of the MDE equation in the limit problem.
ScalarField indicator_fraction(const ScalarField& phi);

// One step of the limit problem:
//   u = indicator_fraction(phi)
//   m by backward Euler with source u; int_m, v updated
//   phi_t = kappa |grad phi| - grad chi(v) . grad phi on |phi| < 2 d0,
//     in ceil(dt / dt_ls) explicit substeps, curvature by centered
//     differences and the drift term upwinded
//   redistance every `redistance_every` steps
// The constructor requires d0 >= 4h. Throws CflViolation if dt > dt_max, DegenerateLevelSet, and
// WallMarginViolation when the interface comes within 4 d0 of a wall. An
// empty interface marks the state extinct.
class SharpStepper {
public:
    SharpStepper(const Grid& grid, const HaptoParams& params, const SharpParams& sharp);

    void step(SharpState& s, double dt);
    // level_set_substeps * min(h^2/8, h / (4 max|grad chi(v)|))
    double dt_max(const SharpState& s);
    void redistance_now(SharpState& s);

private:
    void compute_drift(const ScalarField& v);
    double substep_limit() const;

    HaptoParams params_;
    SharpParams sharp_;
    ScalarField chi_v_;
    VectorField drift_;
    ScalarField phi_next_;
    MdeWorkspace mde_;
    std::vector<std::size_t> band_;
};

SharpState step_sharp(const SharpState& s, const HaptoParams& p, const SharpParams& sp, double dt);

struct SharpRunOptions {
    double dt = 0.0;  // 0: dt_max at every step
    bool keep_snapshots = true;
    std::function<void(const SharpState&)> on_snapshot;
    std::function<void(const SharpState&)> on_step;
};

struct SharpTrajectory {
    std::vector<SharpState> snapshots;
    long steps = 0;
    bool extinct = false;
};

// Exact-hit stepping as in run_diffuse. Snapshots are redistanced first so
// phi is the clamped distance there. Stops early on extinction.
SharpTrajectory run_sharp(SharpState s0, const HaptoParams& p, const SharpParams& sp, double t_end,
                          std::vector<double> snapshot_times, const SharpRunOptions& options = {});

}  // namespace haptolab
