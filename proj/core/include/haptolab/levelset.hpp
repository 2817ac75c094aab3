#pragma once

#include "haptolab/curve.hpp"
#include "haptolab/grid.hpp"

#include <limits>
#include <optional>

namespace haptolab {

// Signed distance to a closed simple curve, negative inside. Throws
// InvalidCurve for open or self-intersecting input.
ScalarField init_levelset(const InterfaceCurve& gamma0, const Grid& grid);

// div(grad phi / |grad phi|) by centered differences on cells with
// |phi| <= band (0 elsewhere). In two dimensions this is (N-1) kappa, positive
// on a shrinking convex inclusion. Throws DegenerateLevelSet when
// |grad phi| < 1e-6 on an evaluated cell.
ScalarField curvature_times_Nminus1(const ScalarField& phi, double band = std::numeric_limits<double>::infinity());

// Smooth saturation of a signed distance: s on |s| <= 2 d0, +-3 d0 beyond
// 3 d0, joined in between by 2 d0 + d0 g(r), g(r) = r + 4r^3 - 7r^4 + 3r^5,
// r = (|s| - 2 d0) / d0, which matches value, slope and curvature at both
// ends.
double zeta_clamp(double s, double d0);

// Tensor-product cubic Lagrange interpolant on the 4x4 cell-center stencil
// around p, with first and second derivatives.
struct CubicSample {
    double value = 0.0;
    double dx = 0.0;
    double dy = 0.0;
    double dxx = 0.0;
    double dxy = 0.0;
    double dyy = 0.0;
};
CubicSample cubic_sample(const ScalarField& f, Point p);

struct RedistanceResult {
    ScalarField phi;
    LevelCurves curves;   // marching-squares zero curves of the input
    int refined = 0;      // cells whose closest point came from Newton
    int fallbacks = 0;    // cells that kept the polygon distance
};

// Rebuilds phi as the clamped signed distance (zeta_clamp with d0 = band/3)
// to its own zero set. Near the interface the closest point is found by
// Newton's method on the zero set of the cubic interpolant of the old phi,
// starting from the nearest point on the marching-squares polygon; the sign
// comes from the old phi. Returns nullopt when phi has no zero crossing.
std::optional<RedistanceResult> redistance(const ScalarField& phi, double band);

}  // namespace haptolab
