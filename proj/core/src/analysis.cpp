#include "haptolab/analysis.hpp"

#include "haptolab/bistable.hpp"
#include "haptolab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace haptolab {

double generation_time(double eps)
{
    require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
    return eps * eps * std::abs(std::log(eps)) / kReactionRate;
}

GenerationReport check_generation_at(const ScalarField& u_tstar, const ScalarField& u0, double eps, double eta,
                                     double M0, double t_star)
{
    require(u_tstar.grid() == u0.grid(), "snapshot and initial data grids differ");
    require(eta > 0.0 && eta < 0.25, "eta must lie in (0, 1/4)");
    require(M0 >= 0.0, "M0 must be nonnegative");
    GenerationReport r;
    r.eps = eps;
    r.t_star = t_star;
    r.eta = eta;
    r.M0 = M0;
    r.u_sup = u_tstar.max();
    r.u_inf = u_tstar.min();
    const double hi = 0.5 + M0 * eps;
    const double lo = 0.5 - M0 * eps;
    for (std::size_t k = 0; k < u0.size(); ++k) {
        const double u = u_tstar[k];
        if (u < -eta || u > 1.0 + eta) {
            ++r.violations_a;
        }
        if (u0[k] >= hi) {
            ++r.cells_upper;
            r.violations_b += u < 1.0 - eta;
        } else if (u0[k] <= lo) {
            ++r.cells_lower;
            r.violations_b += u > eta;
        }
    }
    return r;
}

GenerationReport check_generation(const DiffuseTrajectory& traj, const ScalarField& u0, double eps, double eta,
                                  double M0)
{
    const double t_star = generation_time(eps);
    for (const auto& s : traj.snapshots) {
        if (s.t == t_star) {
            return check_generation_at(s.u, u0, eps, eta, M0, t_star);
        }
    }
    throw MissingSnapshot("trajectory has no snapshot at t* = " + std::to_string(t_star));
}

double fit_generation_M0(const ScalarField& u_tstar, const ScalarField& u0, double eps, double eta, double step)
{
    require(step > 0.0, "M0 ladder step must be positive");
    // the offending cell farthest from 1/2 decides
    double worst = 0.0;
    for (std::size_t k = 0; k < u0.size(); ++k) {
        const double u = u_tstar[k];
        const bool bad = (u0[k] > 0.5 && u < 1.0 - eta) || (u0[k] < 0.5 && u > eta);
        if (bad) {
            worst = std::max(worst, std::abs(u0[k] - 0.5) / eps);
        }
    }
    // climb the ladder from just below the worst cell; the check itself
    // decides, so the rounding of 1/2 + M0 eps cannot disagree with it
    double M0 = step * std::floor(worst / step);
    const double t = 0.0;
    while (check_generation_at(u_tstar, u0, eps, eta, M0, t).violations_b > 0) {
        M0 += step;
    }
    return M0;
}

ScalarField envelope_fields(const ScalarField& d, double t, double eps, const EnvelopeConstants& c, int sign)
{
    require(sign == 1 || sign == -1, "envelope sign must be +1 or -1");
    const EnvelopePQ pq = envelope_p_q(t, eps, c);
    ScalarField out(d.grid());
    for (std::size_t k = 0; k < d.size(); ++k) {
        out[k] = standing_profile((d[k] - sign * eps * pq.p) / eps) + sign * pq.q;
    }
    return out;
}

ScalarField residual_Lv(const ScalarField& u, const ScalarField& v, const ScalarField& u_t, const ChiSpec& chi,
                        double eps)
{
    require(u.grid() == v.grid() && u.grid() == u_t.grid(), "residual fields live on different grids");
    ScalarField chi_v(v.grid());
    for (std::size_t k = 0; k < v.size(); ++k) {
        chi_v[k] = chi.value(v[k]);
    }
    const VectorField w = gradient_centered(chi_v);
    const ScalarField lap = laplacian_neumann(u);
    const ScalarField div = advective_divergence(u, w);
    ScalarField out(u.grid());
    const double inv_eps2 = 1.0 / (eps * eps);
    for (std::size_t k = 0; k < u.size(); ++k) {
        out[k] = u_t[k] - lap[k] + div[k] - f_bistable(u[k]) * inv_eps2;
    }
    return out;
}

BracketCount count_bracket_violations(const ScalarField& u, const ScalarField& d, double t, double eps,
                                      const EnvelopeConstants& c)
{
    require(u.grid() == d.grid(), "u and d grids differ");
    const EnvelopePQ pq = envelope_p_q(t, eps, c);
    const double slack = 1e-6 + pq.q;
    BracketCount out;
    out.worst_excess = -slack;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double lower = standing_profile((d[k] + eps * pq.p) / eps) - pq.q;
        const double upper = standing_profile((d[k] - eps * pq.p) / eps) + pq.q;
        const double below = lower - u[k];
        const double above = u[k] - upper;
        out.below += below > slack;
        out.above += above > slack;
        out.worst_excess = std::max({out.worst_excess, below - slack, above - slack});
    }
    return out;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y)
{
    require(x.size() == y.size() && x.size() >= 2, "line fit needs at least two points");
    const double n = static_cast<double>(x.size());
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sx += x[k];
        sy += y[k];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
    }
    require(sxx > 0.0, "line fit needs distinct abscissae");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

LinearFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y)
{
    std::vector<double> lx(x.size());
    std::vector<double> ly(y.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        require(x[k] > 0.0 && y.at(k) > 0.0, "log-log fit needs positive data");
        lx[k] = std::log(x[k]);
        ly[k] = std::log(y[k]);
    }
    LinearFit fit = fit_line(lx, ly);
    fit.intercept = std::exp(fit.intercept);
    return fit;
}

ScalarField restrict_average(const ScalarField& fine)
{
    const Grid& g = fine.grid();
    require(g.nx() % 2 == 0 && g.ny() % 2 == 0, "restriction needs even cell counts");
    const Grid coarse(g.nx() / 2, g.ny() / 2, 2.0 * g.h(), g.origin());
    ScalarField out(coarse);
    for (int j = 0; j < coarse.ny(); ++j) {
        for (int i = 0; i < coarse.nx(); ++i) {
            out(i, j) = 0.25 * (fine(2 * i, 2 * j) + fine(2 * i + 1, 2 * j) + fine(2 * i, 2 * j + 1) +
                                fine(2 * i + 1, 2 * j + 1));
        }
    }
    return out;
}

}  // namespace haptolab
