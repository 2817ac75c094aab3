#pragma once

#include <vector>

namespace haptolab {

// Balanced cubic f(u) = u(1-u)(u-1/2) with stable wells 0 and 1.
inline double f_bistable(double u) { return u * (1.0 - u) * (u - 0.5); }
inline double f_prime(double u) { return -3.0 * u * u + 3.0 * u - 0.5; }
inline double f_second(double u) { return 3.0 - 6.0 * u; }

// Standing wave U0 of U0'' + f(U0) = 0 with U0(-inf) = 1, U0(0) = 1/2,
// U0(+inf) = 0, in closed form U0(z) = 1 / (1 + exp(z / sqrt 2)).
double standing_profile(double z);
double standing_profile_prime(double z);
double standing_profile_second(double z);

// Decay rate of the profile tails: U0(z) <= exp(-|z| / sqrt 2) for z >= 0.
inline constexpr double kProfileDecay = 0.70710678118654752440;

struct ProfileTable {
    std::vector<double> z;
    std::vector<double> u;
};

// Finite-difference Newton solve of the standing-wave problem on
// [-half_width, half_width]. Dirichlet data come from the closed-form tails and
// the center node is pinned to 1/2 to remove the translation mode. An odd n is
// rounded up so that z = 0 is a node. Used as an independent check on
// standing_profile; throws SolverFailure if Newton stalls.
ProfileTable solve_profile_bvp(double half_width, int n);

// max |U0'' + f(U0)| over `samples` equispaced points of [lo, hi], using the
// closed-form second derivative.
double profile_ode_residual(double lo, double hi, int samples);

}  // namespace haptolab
