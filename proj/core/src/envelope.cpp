#include "haptolab/envelope.hpp"

#include "haptolab/bistable.hpp"
#include "haptolab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace haptolab {

double reaction_sup_bound(long samples)
{
    require(samples >= 2, "need at least two samples");
    double sup = 0.0;
    for (long k = 0; k < samples; ++k) {
        const double z = -1.0 + 3.0 * static_cast<double>(k) / static_cast<double>(samples - 1);
        sup = std::max(sup, std::abs(f_bistable(z)) + std::abs(f_prime(z)) + std::abs(f_second(z)));
    }
    return sup;
}

namespace {

double spectral_margin(double b)
{
    constexpr int kSamples = 10001;
    double m = std::numeric_limits<double>::infinity();
    for (int k = 0; k < kSamples; ++k) {
        const double s = b * k / (kSamples - 1);
        m = std::min({m, -f_prime(s), -f_prime(1.0 - s)});
    }
    return m;
}

// min of -U0' over {z : U0(z) in [b, 1 - b]} = [-zb, zb]
double profile_slope_bound(double b)
{
    const double zb = std::log((1.0 - b) / b) / kProfileDecay;
    constexpr int kSamples = 10001;
    double a = std::numeric_limits<double>::infinity();
    for (int k = 0; k < kSamples; ++k) {
        const double z = -zb + 2.0 * zb * k / (kSamples - 1);
        a = std::min(a, -standing_profile_prime(z));
    }
    return a;
}

}  // namespace

EnvelopeConstants envelope_constants(double T, double d0, double eps0, double K, long f_samples)
{
    require(T > 0.0, "envelope horizon T must be positive");
    require(d0 > 0.0, "distance margin d0 must be positive");
    require(eps0 > 0.0, "eps0 must be positive");
    require(K > 1.0, "K must exceed 1");

    EnvelopeConstants c;
    c.T = T;
    c.d0 = d0;
    c.K = K;
    c.b = kSpectralThreshold;
    c.F = reaction_sup_bound(f_samples);
    c.m_f = spectral_margin(c.b);
    c.a1 = profile_slope_bound(c.b);
    c.beta = c.m_f / 4.0;
    c.sigma0 = c.a1 / (c.m_f + c.F);
    c.sigma1 = 1.0 / (c.beta + 1.0);
    c.sigma2 = 4.0 * c.beta / (c.F * (c.beta + 1.0));
    c.sigma = 0.9 * std::min({c.sigma0, c.sigma1, c.sigma2});

    constexpr int kMaxHalvings = 60;
    double e = eps0;
    for (int k = 0; k <= kMaxHalvings; ++k, e *= 0.5) {
        const double L = std::log(d0 / (4.0 * e)) / T;
        if (!(L > 0.0)) {
            continue;
        }
        const double growth = std::exp(L * T);
        if (e * e * L * growth <= 1.0 && growth + K <= d0 / (2.0 * e)) {
            c.eps0 = e;
            c.L = L;
            return c;
        }
    }
    throw ConstantsInfeasible("no eps0 within 60 halvings satisfies the envelope constraints (d0 too small?)");
}

EnvelopePQ envelope_p_q(double t, double eps, const EnvelopeConstants& c)
{
    require(t >= 0.0 && t <= c.T * (1.0 + 1e-12), "envelope time outside [0, T]");
    require(eps > 0.0 && eps <= c.eps0 * (1.0 + 1e-12), "envelope eps outside (0, eps0]");
    const double fast = std::exp(-c.beta * t / (eps * eps));
    const double slow = std::exp(c.L * t);
    return {-fast + slow + c.K, c.sigma * (c.beta * fast + eps * eps * c.L * slow)};
}

double envelope_p_rate(double t, double eps, const EnvelopeConstants& c)
{
    const double fast = std::exp(-c.beta * t / (eps * eps));
    return c.beta / (eps * eps) * fast + c.L * std::exp(c.L * t);
}

}  // namespace haptolab
