#pragma once

#include "haptolab/chi.hpp"
#include "haptolab/diffuse.hpp"
#include "haptolab/envelope.hpp"
#include "haptolab/grid.hpp"

#include <vector>

namespace haptolab {

// Growth rate of the reaction at u = 1/2.
inline constexpr double kReactionRate = 0.25;

// t* = eps^2 |ln eps| / mu with mu = f'(1/2) = 1/4.
double generation_time(double eps);

struct GenerationReport {
    double eps = 0.0;
    double t_star = 0.0;
    double eta = 0.0;
    double M0 = 0.0;
    long violations_a = 0;  // u outside [-eta, 1 + eta]
    long violations_b = 0;  // u < 1 - eta where u0 >= 1/2 + M0 eps, or u > eta where u0 <= 1/2 - M0 eps
    long cells_upper = 0;   // cells with u0 >= 1/2 + M0 eps
    long cells_lower = 0;
    double u_sup = 0.0;
    double u_inf = 0.0;
};

// Counts the violations of both generation bounds in the snapshot at
// t* = generation_time(eps). Throws MissingSnapshot if the trajectory has no
// state at exactly t*; requires 0 < eta < 1/4.
GenerationReport check_generation(const DiffuseTrajectory& traj, const ScalarField& u0, double eps, double eta,
                                  double M0);
GenerationReport check_generation_at(const ScalarField& u_tstar, const ScalarField& u0, double eps, double eta,
                                     double M0, double t_star);

// Smallest multiple of `step` such that the (b) bound has no violations for
// this snapshot.
double fit_generation_M0(const ScalarField& u_tstar, const ScalarField& u0, double eps, double eta, double step = 0.05);

// u(+/-) = U0((d -/+ eps p(t)) / eps) +/- q(t), sign = +1 or -1.
ScalarField envelope_fields(const ScalarField& d, double t, double eps, const EnvelopeConstants& c, int sign);

// L_v[u] = u_t - Lap u + div(u grad chi(v)) - f(u)/eps^2 with the solver's
// discrete operators; u_t is supplied by the caller.
ScalarField residual_Lv(const ScalarField& u, const ScalarField& v, const ScalarField& u_t, const ChiSpec& chi,
                        double eps);

struct BracketCount {
    long below = 0;  // u < u- - slack
    long above = 0;  // u > u+ + slack
    double worst_excess = 0.0;  // largest amount by which the slack was exceeded (<= 0 when fine)
};

// Compares u against the envelopes built from d at time t with slack
// 1e-6 + q(t).
BracketCount count_bracket_violations(const ScalarField& u, const ScalarField& d, double t, double eps,
                                      const EnvelopeConstants& c);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

// Least-squares line through (x, y).
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);
// Fit of log y = log C + slope log x; intercept returned as C.
LinearFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

// 2x2 cell averaging from a grid to the grid with half as many cells per axis.
ScalarField restrict_average(const ScalarField& fine);

}  // namespace haptolab
