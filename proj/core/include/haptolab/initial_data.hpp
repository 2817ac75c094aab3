#pragma once

#include "haptolab/curve.hpp"
#include "haptolab/grid.hpp"

#include <cmath>
#include <vector>

namespace haptolab {

// Initial interface: a circle, or the star-shaped polar curve
// r(theta) = r0 + amplitude * cos(lobes * theta) about `center`.
struct ShapeSpec {
    enum class Kind { circle, star };

    Kind kind = Kind::circle;
    Point center{0.5, 0.5};
    double r0 = 0.3;
    double amplitude = 0.0;
    int lobes = 0;

    static ShapeSpec circle(Point center, double radius);
    static ShapeSpec star(Point center, double r0, double amplitude, int lobes);

    double radius(double theta) const;
    double max_radius() const { return r0 + std::abs(amplitude); }
    // Counter-clockwise polygon with n vertices on the curve.
    InterfaceCurve polyline(int n = 8192) const;
    // Signed distance sampled at cell centers (negative inside). Exact for
    // circles; stars use a dense polygon whose chord error is ~1e-7.
    ScalarField signed_distance(const Grid& grid) const;
};

// base + sum_k a_k cos(i_k pi xi) cos(j_k pi eta) in grid-relative
// coordinates xi, eta in [0, 1]. Every mode has zero normal derivative on the
// walls.
struct ModeSum {
    struct Mode {
        int i = 0;
        int j = 0;
        double amplitude = 0.0;
    };

    double base = 1.0;
    std::vector<Mode> modes;

    static ModeSum uniform(double value) { return {value, {}}; }

    ScalarField sample(const Grid& grid) const;
    // base - sum |a_k|, a lower bound of the field
    double lower_bound() const;
};

struct InitialData {
    ScalarField u0;
    ScalarField v0;
    ScalarField m0;
    InterfaceCurve gamma0;  // 1/2-level curve of u0
    ShapeSpec shape;
    ScalarField signed_distance;
};

// sup|f| + sup|grad f| + sup|lap f|, the grid stand-in for the C^2 norm.
double discrete_c2_norm(const ScalarField& f);

// Builds u0 = U0(d(x) / width) from the signed distance d to the shape, and
// v0, m0 from cosine sums. Throws InvalidInitialData when the shape is closer
// than 4 d0 to a wall, when {u0 > 1/2} is not one 4-connected component away
// from the walls, when a field is negative, or when a discrete C^2 norm
// exceeds C0.
//
// A positive saturation S replaces d on that side of the interface by
// saturate(d, S). Wide profiles need it:
// the distance to a circle has a cone point at the center, and u0 only meets
// the walls with zero normal derivative if d is flat there.
// S p(|d|/S) sign(d) with p(x) = x - x^4 + 0.6 x^5 on [0, 1] and p(1) = 0.6
// beyond: slope 1 and no curvature at 0, flat (C^2) from |d| = S on.
double saturate(double d, double S);

struct Saturation {
    double inside = 0.0;
    double outside = 0.0;
};
InitialData make_initial_data(const ShapeSpec& shape, double width, const ModeSum& v0, const ModeSum& m0,
                              const Grid& grid, double C0, double d0, Saturation saturation = {});

// Number of 4-connected components of {f > level}; `touches_wall` reports
// whether any of them reaches the outer ring of cells.
int count_components_above(const ScalarField& f, double level, bool* touches_wall = nullptr);

}  // namespace haptolab
