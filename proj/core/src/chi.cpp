#include "haptolab/chi.hpp"

#include "haptolab/errors.hpp"

#include <cmath>

namespace haptolab {

ChiSpec::ChiSpec() : ChiSpec(Kind::linear, {0.0, 1.0}) {}

ChiSpec::ChiSpec(Kind kind, std::vector<double> coefficients) : kind_(kind), coefficients_(std::move(coefficients)) {}

ChiSpec ChiSpec::constant(double c)
{
    ChiSpec chi(Kind::constant, {c});
    chi.validate(kDefaultVMax);
    return chi;
}

ChiSpec ChiSpec::linear(double c0, double c1, double v_max)
{
    require(c0 >= 0.0, "linear chi needs c0 >= 0 so that chi(v) > 0 for v > 0");
    ChiSpec chi(Kind::linear, {c0, c1});
    chi.validate(v_max);
    return chi;
}

ChiSpec ChiSpec::log1p(double a, double b, double v_max)
{
    require(a > 0.0 && b > 0.0, "log1p chi needs a, b > 0");
    ChiSpec chi(Kind::log1p, {a, b});
    chi.validate(v_max);
    return chi;
}

ChiSpec ChiSpec::polynomial(std::vector<double> coefficients, double v_max)
{
    require(!coefficients.empty(), "polynomial chi needs coefficients");
    ChiSpec chi(Kind::polynomial, std::move(coefficients));
    chi.validate(v_max);
    return chi;
}

double ChiSpec::value(double v) const
{
    const auto& c = coefficients_;
    switch (kind_) {
    case Kind::constant:
        return c[0];
    case Kind::linear:
        return c[0] + c[1] * v;
    case Kind::log1p:
        return c[0] * std::log1p(c[1] * v);
    case Kind::polynomial: {
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            acc = acc * v + *it;
        }
        return acc;
    }
    }
    return 0.0;
}

double ChiSpec::d1(double v) const
{
    const auto& c = coefficients_;
    switch (kind_) {
    case Kind::constant:
        return 0.0;
    case Kind::linear:
        return c[1];
    case Kind::log1p:
        return c[0] * c[1] / (1.0 + c[1] * v);
    case Kind::polynomial: {
        double acc = 0.0;
        for (std::size_t k = c.size(); k-- > 1;) {
            acc = acc * v + static_cast<double>(k) * c[k];
        }
        return acc;
    }
    }
    return 0.0;
}

double ChiSpec::d2(double v) const
{
    const auto& c = coefficients_;
    switch (kind_) {
    case Kind::constant:
    case Kind::linear:
        return 0.0;
    case Kind::log1p: {
        const double s = 1.0 + c[1] * v;
        return -c[0] * c[1] * c[1] / (s * s);
    }
    case Kind::polynomial: {
        double acc = 0.0;
        for (std::size_t k = c.size(); k-- > 2;) {
            acc = acc * v + static_cast<double>(k * (k - 1)) * c[k];
        }
        return acc;
    }
    }
    return 0.0;
}

void ChiSpec::validate(double v_max) const
{
    require(v_max > 0.0, "chi validation range must be positive");
    constexpr int kSamples = 1000;
    for (int k = 1; k <= kSamples; ++k) {
        const double v = v_max * k / kSamples;
        require(std::isfinite(value(v)) && value(v) > 0.0, "chi must be positive on (0, v_max]");
        if (kind_ != Kind::constant) {
            require(d1(v) > 0.0, "chi' must be positive on (0, v_max]");
        }
    }
}

std::string ChiSpec::kind_name(Kind kind)
{
    switch (kind) {
    case Kind::constant:
        return "constant";
    case Kind::linear:
        return "linear";
    case Kind::log1p:
        return "log1p";
    case Kind::polynomial:
        return "polynomial";
    }
    return "unknown";
}

ChiSpec::Kind ChiSpec::parse_kind(const std::string& name)
{
    for (Kind k : {Kind::constant, Kind::linear, Kind::log1p, Kind::polynomial}) {
        if (kind_name(k) == name) {
            return k;
        }
    }
    throw InvalidArgument("unknown chi kind '" + name + "'");
}

}  // namespace haptolab
