#include "haptolab/bistable.hpp"

#include "haptolab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace haptolab {

double standing_profile(double z)
{
    // evaluate through exp(-|z|/sqrt2) so neither tail overflows
    const double e = std::exp(-std::abs(z) * kProfileDecay);
    return z >= 0.0 ? e / (1.0 + e) : 1.0 / (1.0 + e);
}

double standing_profile_prime(double z)
{
    const double u = standing_profile(z);
    return -kProfileDecay * u * (1.0 - u);
}

double standing_profile_second(double z)
{
    const double u = standing_profile(z);
    return 0.5 * u * (1.0 - u) * (1.0 - 2.0 * u);
}

double profile_ode_residual(double lo, double hi, int samples)
{
    require(samples >= 2 && hi > lo, "residual sampling needs an interval and >= 2 samples");
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double z = lo + (hi - lo) * k / (samples - 1);
        worst = std::max(worst, std::abs(standing_profile_second(z) + f_bistable(standing_profile(z))));
    }
    return worst;
}

ProfileTable solve_profile_bvp(double half_width, int n)
{
    require(half_width >= 10.0, "profile half-width must be at least 10");
    require(n >= 100, "profile solve needs at least 100 intervals");
    if (n % 2 != 0) {
        ++n;
    }
    const int nodes = n + 1;
    const int mid = n / 2;
    const double dz = 2.0 * half_width / n;
    const double inv_dz2 = 1.0 / (dz * dz);
    const double tail = standing_profile(half_width);

    ProfileTable table;
    table.z.resize(nodes);
    table.u.resize(nodes);
    for (int k = 0; k < nodes; ++k) {
        table.z[k] = -half_width + k * dz;
        // deliberately wider than the true profile so Newton has work to do
        table.u[k] = 0.5 * (1.0 - std::tanh(0.5 * table.z[k]));
    }
    table.z[mid] = 0.0;

    std::vector<double> lower(nodes), diag(nodes), upper(nodes), rhs(nodes);
    constexpr int kMaxIterations = 50;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        auto& u = table.u;
        for (int k = 0; k < nodes; ++k) {
            lower[k] = upper[k] = 0.0;
            if (k == 0) {
                diag[k] = 1.0;
                rhs[k] = -(u[k] - (1.0 - tail));
            } else if (k == n) {
                diag[k] = 1.0;
                rhs[k] = -(u[k] - tail);
            } else if (k == mid) {
                diag[k] = 1.0;
                rhs[k] = -(u[k] - 0.5);
            } else {
                lower[k] = inv_dz2;
                upper[k] = inv_dz2;
                diag[k] = -2.0 * inv_dz2 + f_prime(u[k]);
                rhs[k] = -((u[k - 1] - 2.0 * u[k] + u[k + 1]) * inv_dz2 + f_bistable(u[k]));
            }
        }
        // Thomas algorithm, overwriting rhs with the Newton update
        for (int k = 1; k < nodes; ++k) {
            const double w = lower[k] / diag[k - 1];
            diag[k] -= w * upper[k - 1];
            rhs[k] -= w * rhs[k - 1];
        }
        rhs[n] /= diag[n];
        for (int k = n - 1; k >= 0; --k) {
            rhs[k] = (rhs[k] - upper[k] * rhs[k + 1]) / diag[k];
        }
        double step = 0.0;
        for (int k = 0; k < nodes; ++k) {
            u[k] += rhs[k];
            step = std::max(step, std::abs(rhs[k]));
        }
        if (!std::isfinite(step)) {
            break;
        }
        if (step < 1e-14) {
            return table;
        }
    }
    throw SolverFailure("standing-profile Newton iteration did not converge");
}

}  // namespace haptolab
