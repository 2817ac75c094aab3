#include "haptolab/initial_data.hpp"

#include "haptolab/bistable.hpp"
#include "haptolab/errors.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <string>

namespace haptolab {

ShapeSpec ShapeSpec::circle(Point center, double radius)
{
    require(radius > 0.0, "circle radius must be positive");
    ShapeSpec s;
    s.kind = Kind::circle;
    s.center = center;
    s.r0 = radius;
    return s;
}

ShapeSpec ShapeSpec::star(Point center, double r0, double amplitude, int lobes)
{
    require(r0 > 0.0 && std::abs(amplitude) < r0, "star needs r0 > |amplitude|");
    require(lobes >= 1, "star needs at least one lobe");
    ShapeSpec s;
    s.kind = Kind::star;
    s.center = center;
    s.r0 = r0;
    s.amplitude = amplitude;
    s.lobes = lobes;
    return s;
}

double ShapeSpec::radius(double theta) const
{
    return kind == Kind::circle ? r0 : r0 + amplitude * std::cos(lobes * theta);
}

InterfaceCurve ShapeSpec::polyline(int n) const
{
    require(n >= 8, "shape polygon needs at least 8 vertices");
    InterfaceCurve c;
    c.points.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / n;
        const double r = radius(theta);
        c.points.push_back({center.x + r * std::cos(theta), center.y + r * std::sin(theta)});
    }
    return c;
}

ScalarField ShapeSpec::signed_distance(const Grid& grid) const
{
    if (kind == Kind::circle) {
        return ScalarField::sample(grid, [&](double x, double y) { return std::hypot(x - center.x, y - center.y) - r0; });
    }
    return signed_distance_field(polyline(), grid);
}

ScalarField ModeSum::sample(const Grid& grid) const
{
    const double ox = grid.origin().x;
    const double oy = grid.origin().y;
    return ScalarField::sample(grid, [&](double x, double y) {
        const double xi = (x - ox) / grid.width();
        const double eta = (y - oy) / grid.height();
        double v = base;
        for (const Mode& m : modes) {
            v += m.amplitude * std::cos(m.i * std::numbers::pi * xi) * std::cos(m.j * std::numbers::pi * eta);
        }
        return v;
    });
}

double ModeSum::lower_bound() const
{
    double v = base;
    for (const Mode& m : modes) {
        v -= std::abs(m.amplitude);
    }
    return v;
}

double discrete_c2_norm(const ScalarField& f)
{
    return f.max_abs() + gradient_centered(f).max_norm() + laplacian_neumann(f).max_abs();
}

int count_components_above(const ScalarField& f, double level, bool* touches_wall)
{
    const Grid& g = f.grid();
    std::vector<char> seen(g.size(), 0);
    std::vector<std::pair<int, int>> stack;
    int components = 0;
    bool wall = false;
    for (int j0 = 0; j0 < g.ny(); ++j0) {
        for (int i0 = 0; i0 < g.nx(); ++i0) {
            if (seen[g.index(i0, j0)] || !(f(i0, j0) > level)) {
                continue;
            }
            ++components;
            stack.assign(1, {i0, j0});
            seen[g.index(i0, j0)] = 1;
            while (!stack.empty()) {
                const auto [i, j] = stack.back();
                stack.pop_back();
                if (i == 0 || j == 0 || i == g.nx() - 1 || j == g.ny() - 1) {
                    wall = true;
                }
                for (auto [di, dj] : {std::pair{1, 0}, std::pair{-1, 0}, std::pair{0, 1}, std::pair{0, -1}}) {
                    const int a = i + di;
                    const int b = j + dj;
                    if (a < 0 || b < 0 || a >= g.nx() || b >= g.ny()) {
                        continue;
                    }
                    const std::size_t k = g.index(a, b);
                    if (!seen[k] && f(a, b) > level) {
                        seen[k] = 1;
                        stack.emplace_back(a, b);
                    }
                }
            }
        }
    }
    if (touches_wall) {
        *touches_wall = wall;
    }
    return components;
}

double saturate(double d, double S)
{
    const double x = std::min(std::abs(d) / S, 1.0);
    const double x4 = x * x * x * x;
    return std::copysign(S * (x - x4 + 0.6 * x4 * x), d);
}

InitialData make_initial_data(const ShapeSpec& shape, double width, const ModeSum& v0_spec, const ModeSum& m0_spec,
                              const Grid& grid, double C0, double d0, Saturation saturation)
{
    require(width > 0.0, "profile width must be positive");
    require(C0 > 1.0, "C0 must exceed 1");
    require(d0 > 0.0, "d0 must be positive");
    require(saturation.inside >= 0.0 && saturation.outside >= 0.0, "profile saturation must be nonnegative");

    const InterfaceCurve outline = shape.polyline();
    double clearance = std::numeric_limits<double>::infinity();
    for (const Point& p : outline.points) {
        clearance = std::min(clearance, grid.contains(p) ? grid.wall_distance(p) : -1.0);
    }
    if (shape.kind == ShapeSpec::Kind::circle) {
        clearance = grid.contains(shape.center) ? grid.wall_distance(shape.center) - shape.r0 : -1.0;
    }
    if (clearance < 4.0 * d0) {
        throw InvalidInitialData("initial interface is closer than 4 d0 to the wall (clearance " +
                                 std::to_string(clearance) + ")");
    }

    ScalarField dist = shape.signed_distance(grid);
    ScalarField u0(grid);
    for (std::size_t k = 0; k < u0.size(); ++k) {
        const double s = dist[k] < 0.0 ? saturation.inside : saturation.outside;
        const double d = s > 0.0 ? saturate(dist[k], s) : dist[k];
        u0[k] = standing_profile(d / width);
    }
    ScalarField v0 = v0_spec.sample(grid);
    ScalarField m0 = m0_spec.sample(grid);
    if (!(v0.min() > 0.0)) {
        throw InvalidInitialData("v0 must be positive");
    }
    if (m0.min() < 0.0) {
        throw InvalidInitialData("m0 must be nonnegative");
    }

    bool touches = false;
    const int parts = count_components_above(u0, 0.5, &touches);
    if (parts != 1 || touches) {
        throw InvalidInitialData("{u0 > 1/2} must be one 4-connected component away from the walls");
    }
    for (const auto& [name, f] : {std::pair{"u0", &u0}, std::pair{"v0", &v0}, std::pair{"m0", &m0}}) {
        const double norm = discrete_c2_norm(*f);
        if (norm > C0) {
            throw InvalidInitialData(std::string("discrete C2 norm of ") + name + " is " + std::to_string(norm) +
                                     ", above C0 = " + std::to_string(C0));
        }
    }

    LevelCurves curves = extract_level_curve(u0, 0.5);
    if (curves.components.size() != 1 || !curves.main().closed) {
        throw InvalidInitialData("1/2-level set of u0 must be a single closed curve");
    }
    InterfaceCurve gamma0 = curves.main();
    return InitialData{std::move(u0), std::move(v0), std::move(m0), std::move(gamma0), shape, std::move(dist)};
}

}  // namespace haptolab
