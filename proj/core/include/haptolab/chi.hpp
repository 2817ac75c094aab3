#pragma once

#include <string>
#include <vector>

namespace haptolab {

// Haptotactic sensitivity chi(v) with its first two derivatives.
//
//   linear      chi = c0 + c1 v            (c0 >= 0, c1 > 0)
//   log1p       chi = a ln(1 + b v)        (a, b > 0)
//   polynomial  chi = sum_k c_k v^k
//   constant    chi = c > 0, chi' = 0      haptotaxis switched off
//
// Construction samples (0, v_max] and rejects any chi with chi <= 0 or, for
// the non-constant kinds, chi' <= 0. The constant kind exists only as the
// control case that reduces the sharp-interface motion to curvature flow.
class ChiSpec {
public:
    enum class Kind { constant, linear, log1p, polynomial };

    static constexpr double kDefaultVMax = 10.0;

    // chi(v) = v
    ChiSpec();

    static ChiSpec constant(double c);
    static ChiSpec linear(double c0, double c1, double v_max = kDefaultVMax);
    static ChiSpec log1p(double a, double b, double v_max = kDefaultVMax);
    static ChiSpec polynomial(std::vector<double> coefficients, double v_max = kDefaultVMax);

    Kind kind() const { return kind_; }
    const std::vector<double>& coefficients() const { return coefficients_; }
    bool haptotaxis_off() const { return kind_ == Kind::constant; }

    double value(double v) const;
    double d1(double v) const;
    double d2(double v) const;

    // Re-run the positivity sampling on (0, v_max]; throws InvalidArgument.
    void validate(double v_max) const;

    static std::string kind_name(Kind kind);
    static Kind parse_kind(const std::string& name);

private:
    ChiSpec(Kind kind, std::vector<double> coefficients);

    Kind kind_;
    std::vector<double> coefficients_;
};

}  // namespace haptolab
