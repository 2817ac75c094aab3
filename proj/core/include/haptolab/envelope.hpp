#pragma once

namespace haptolab {

// Threshold b of the spectral margin: f' <= -m_f whenever U0 lies in
// [0, b] or [1 - b, 1]. f' changes sign at (3 - sqrt 3)/6 ~ 0.211, so b must
// stay below that value.
inline constexpr double kSpectralThreshold = 0.1;

// Constants of the sub/super-solution pair
//   u(+/-) = U0((d -/+ eps p(t)) / eps) +/- q(t).
struct EnvelopeConstants {
    double beta = 0.0;   // m_f / 4
    double sigma = 0.0;  // 0.9 * min(sigma0, sigma1, sigma2)
    double L = 0.0;      // ln(d0 / (4 eps0)) / T
    double K = 0.0;
    double eps0 = 0.0;
    double d0 = 0.0;
    double T = 0.0;
    double F = 0.0;      // sup over [-1, 2] of |f| + |f'| + |f''|
    double m_f = 0.0;    // spectral margin
    double a1 = 0.0;     // min of -U0' where U0 is in [b, 1 - b]
    double b = kSpectralThreshold;
    double sigma0 = 0.0;
    double sigma1 = 0.0;
    double sigma2 = 0.0;
};

// sup over [-1, 2] of |f| + |f'| + |f''| from `samples` equispaced points
// (endpoints included).
double reaction_sup_bound(long samples);

// Computes the envelope constants for horizon T, distance margin d0 and
// K > 1. Starting from eps0 it halves eps0 until
//   eps0^2 L e^{LT} <= 1   and   e^{LT} + K <= d0 / (2 eps0)
// both hold, throwing ConstantsInfeasible when 60 halvings are not enough.
EnvelopeConstants envelope_constants(double T, double d0, double eps0, double K, long f_samples = 1'000'000);

struct EnvelopePQ {
    double p = 0.0;
    double q = 0.0;
};

// p(t) = -e^{-beta t/eps^2} + e^{Lt} + K,
// q(t) = sigma (beta e^{-beta t/eps^2} + eps^2 L e^{Lt}).
// Requires 0 <= t <= T and 0 < eps <= eps0.
EnvelopePQ envelope_p_q(double t, double eps, const EnvelopeConstants& c);

// dp/dt, used to check q = eps^2 sigma p'.
double envelope_p_rate(double t, double eps, const EnvelopeConstants& c);

}  // namespace haptolab
