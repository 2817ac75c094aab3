#pragma once

#include "haptolab/analysis.hpp"
#include "haptolab/diffuse.hpp"
#include "haptolab/envelope.hpp"
#include "haptolab/initial_data.hpp"
#include "haptolab/sharp.hpp"

#include <functional>
#include <string>
#include <vector>

namespace haptolab {

// Everything needed to build initial data on any grid.
struct ProblemSetup {
    HaptoParams params;
    ShapeSpec shape = ShapeSpec::circle({0.5, 0.5}, 0.3);
    ModeSum v0{1.0, {{1, 1, 0.3}}};
    ModeSum m0 = ModeSum::uniform(0.0);
    // profile width of u0; 0 means eps (the standing wave, well prepared)
    double width = 0.0;
    // wall clearance parameter of the initial interface
    double d0 = 0.01;
    // smooth clamp of the distance inside the u0 profile; 0 disables
    Saturation saturation;

    double profile_width() const { return width > 0.0 ? width : params.eps; }
};

InitialData build_initial_data(const ProblemSetup& setup, const Grid& grid);

// Unit-square cell count with h <= eps / cells_per_eps.
int cells_for_eps(double eps, double cells_per_eps);

// n equally spaced times in (t0, t1], the last equal to t1.
std::vector<double> uniform_times(double t0, double t1, int n);

using ProgressFn = std::function<void(const std::string&)>;

// ---------------------------------------------------------------- generation
struct GenerationStudy {
    GenerationReport report;
    double fitted_M0 = 0.0;  // smallest ladder M0 that would give no (b) violations here
    int n = 0;
    long steps = 0;
    double seconds = 0.0;
};

GenerationStudy generation_study(ProblemSetup setup, double eps, double cells_per_eps, double eta, double M0);

// ------------------------------------------------------- curvature flow (MCF)
struct McfStudy {
    std::vector<double> times;
    std::vector<double> radius;  // from the enclosed area of the zero curve
    std::vector<double> exact;   // sqrt(R0^2 - 2t)
    double max_relative_error = 0.0;
    double area_rate = 0.0;      // fitted dA/dt
    long steps = 0;
    double seconds = 0.0;
};

// Circle of radius R0 at the center of the unit square under haptotaxis-free
// motion (chi constant), followed until R = stop_fraction * R0.
McfStudy mcf_study(double R0, int n, const SharpParams& sharp, double stop_fraction = 0.2, int samples = 40);

// ------------------------------------------------------------ bracket (P^eps)
struct BracketSnapshot {
    double t = 0.0;
    double q = 0.0;
    long below = 0;
    long above = 0;
    double worst_excess = 0.0;
    // extreme residual signs over band cells |d| < d0 (Lv[u+] >= -tol, Lv[u-] <= tol)
    double min_residual_upper = 0.0;
    double max_residual_lower = 0.0;
    double residual_tolerance = 0.0;
};

struct BracketStudy {
    EnvelopeConstants constants;
    std::vector<BracketSnapshot> snapshots;
    std::vector<double> p_samples;  // p(t) on a dense grid of [0, T]
    double p_min = 0.0;
    double p_max = 0.0;
    int n = 0;
    double seconds = 0.0;
};

// Runs the diffuse and sharp solvers on one grid from u0 = U0(d/eps) and
// checks the envelope bracket (slack 1e-6 + q) and the sign of L_v on the
// envelopes at every snapshot. The sharp solver's redistanced phi (clamped
// with envelope_d0) provides d.
BracketStudy bracket_study(ProblemSetup setup, double cells_per_eps, double T, int snapshots, double envelope_d0,
                           double K, const SharpParams& sharp);

// ------------------------------------------------------- grid/time refinement
struct RefinementStudy {
    std::vector<int> n;
    // sup-norm gaps between successive levels after 2x2 averaging, per field
    std::vector<double> gap_u, gap_v, gap_m;
    double order_u = 0.0, order_v = 0.0, order_m = 0.0;
};

// Runs the diffuse solver to t_end on each grid (n doubling, dt = dt_max)
// and measures log2(gap_coarse / gap_fine).
RefinementStudy refinement_study(ProblemSetup setup, const std::vector<int>& n, double t_end);

// --------------------------------------------------------------- convergence
struct LimitGaps {
    double distance = 0.0;   // one-sided sup distance Gamma_eps -> Gamma
    double hausdorff = 0.0;
    double v_gap = 0.0;
    double m_gap = 0.0;
};

// Gaps between a diffuse state and the sharp state at the same time. The
// sharp fields are interpolated bilinearly onto the diffuse cell centers; v
// goes through its integral of m so both sides share the exact v_initial.
LimitGaps limit_gaps(const DiffuseState& s, const SharpState& ref, const InterfaceCurve& ref_curve, double lambda);

struct ConvergenceCase {
    double eps = 0.0;
    int n = 0;
    std::vector<double> times;
    std::vector<double> distance;   // one-sided sup distance Gamma_eps -> Gamma
    std::vector<double> hausdorff;
    std::vector<double> v_gap;
    std::vector<double> m_gap;
    double sup_distance = 0.0;
    double sup_v_gap = 0.0;
    double sup_m_gap = 0.0;
    long steps = 0;
    double seconds = 0.0;
};

struct ConvergenceRecord {
    std::vector<double> eps;
    std::vector<ConvergenceCase> cases;
    LinearFit distance_fit;  // slope and constant C of sup distance ~ C eps^slope
    LinearFit v_fit;
    LinearFit m_fit;
    int sharp_n = 0;
    long sharp_steps = 0;
    double sharp_seconds = 0.0;
};

struct ConvergenceSetup {
    ProblemSetup problem;  // problem.params.eps is ignored
    double cells_per_eps = 4.0;
    double T = 0.01;
    int snapshots = 10;
    int sharp_n = 256;
    SharpParams sharp;
};

// Diffuse runs for each eps (strictly decreasing), one sharp reference run,
// then per-snapshot interface distance and sup-norm field gaps with the
// sharp fields interpolated bilinearly (v through its integral of m).
ConvergenceRecord convergence_study(const ConvergenceSetup& setup, const std::vector<double>& eps_list,
                                    const ProgressFn& progress = {});

}  // namespace haptolab
