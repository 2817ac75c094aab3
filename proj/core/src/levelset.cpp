#include "haptolab/levelset.hpp"

#include "haptolab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace haptolab {

ScalarField init_levelset(const InterfaceCurve& gamma0, const Grid& grid)
{
    require_simple_closed(gamma0);
    return signed_distance_field(gamma0, grid);
}

ScalarField curvature_times_Nminus1(const ScalarField& phi, double band)
{
    const Grid& g = phi.grid();
    const double h = g.h();
    ScalarField out(g);
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const double c = phi(i, j);
            if (!(std::abs(c) <= band)) {
                continue;
            }
            const double e = phi.mirrored(i + 1, j);
            const double w = phi.mirrored(i - 1, j);
            const double n = phi.mirrored(i, j + 1);
            const double s = phi.mirrored(i, j - 1);
            const double px = (e - w) / (2.0 * h);
            const double py = (n - s) / (2.0 * h);
            const double pxx = (e - 2.0 * c + w) / (h * h);
            const double pyy = (n - 2.0 * c + s) / (h * h);
            const double pxy = (phi.mirrored(i + 1, j + 1) - phi.mirrored(i + 1, j - 1) - phi.mirrored(i - 1, j + 1) +
                                phi.mirrored(i - 1, j - 1)) /
                               (4.0 * h * h);
            const double g2 = px * px + py * py;
            if (g2 < 1e-12) {
                throw DegenerateLevelSet("|grad phi| < 1e-6 inside the curvature band; redistance first");
            }
            out(i, j) = (pxx * py * py - 2.0 * px * py * pxy + pyy * px * px) / (g2 * std::sqrt(g2));
        }
    }
    return out;
}

double zeta_clamp(double s, double d0)
{
    const double a = std::abs(s);
    if (a <= 2.0 * d0) {
        return s;
    }
    if (a >= 3.0 * d0) {
        return std::copysign(3.0 * d0, s);
    }
    const double r = (a - 2.0 * d0) / d0;
    const double g = r + r * r * r * (4.0 + r * (-7.0 + 3.0 * r));
    return std::copysign(2.0 * d0 + d0 * g, s);
}

namespace {

// Lagrange basis on the nodes -1, 0, 1, 2 with derivatives
void cubic_basis(double s, double (&l)[4], double (&dl)[4], double (&ddl)[4])
{
    l[0] = -s * (s - 1.0) * (s - 2.0) / 6.0;
    l[1] = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
    l[2] = -(s + 1.0) * s * (s - 2.0) / 2.0;
    l[3] = (s + 1.0) * s * (s - 1.0) / 6.0;
    dl[0] = -(3.0 * s * s - 6.0 * s + 2.0) / 6.0;
    dl[1] = (3.0 * s * s - 4.0 * s - 1.0) / 2.0;
    dl[2] = -(3.0 * s * s - 2.0 * s - 2.0) / 2.0;
    dl[3] = (3.0 * s * s - 1.0) / 6.0;
    ddl[0] = -(s - 1.0);
    ddl[1] = 3.0 * s - 2.0;
    ddl[2] = -(3.0 * s - 1.0);
    ddl[3] = s;
}

}  // namespace

CubicSample cubic_sample(const ScalarField& f, Point p)
{
    const Grid& g = f.grid();
    const double h = g.h();
    const double sx = (p.x - g.x_center(0)) / h;
    const double sy = (p.y - g.y_center(0)) / h;
    const int i = std::clamp(static_cast<int>(std::floor(sx)), 1, g.nx() - 3);
    const int j = std::clamp(static_cast<int>(std::floor(sy)), 1, g.ny() - 3);
    double lx[4], dlx[4], ddlx[4], ly[4], dly[4], ddly[4];
    cubic_basis(sx - i, lx, dlx, ddlx);
    cubic_basis(sy - j, ly, dly, ddly);

    CubicSample out;
    for (int b = 0; b < 4; ++b) {
        double row = 0.0;
        double row_d = 0.0;
        double row_dd = 0.0;
        for (int a = 0; a < 4; ++a) {
            const double v = f(i - 1 + a, j - 1 + b);
            row += lx[a] * v;
            row_d += dlx[a] * v;
            row_dd += ddlx[a] * v;
        }
        out.value += ly[b] * row;
        out.dx += ly[b] * row_d;
        out.dy += dly[b] * row;
        out.dxx += ly[b] * row_dd;
        out.dxy += dly[b] * row_d;
        out.dyy += ddly[b] * row;
    }
    out.dx /= h;
    out.dy /= h;
    out.dxx /= h * h;
    out.dxy /= h * h;
    out.dyy /= h * h;
    return out;
}

namespace {

// Closest point of x on {p = 0}, p the cubic interpolant of phi: Newton on
//   p(y) = 0,   (x - y) x grad p(y) = 0
std::optional<double> newton_distance(const ScalarField& phi, Point x, Point y0)
{
    const double h = phi.grid().h();
    Point y = y0;
    constexpr int kMaxIterations = 30;
    for (int it = 0; it < kMaxIterations; ++it) {
        const CubicSample c = cubic_sample(phi, y);
        const double rx = x.x - y.x;
        const double ry = x.y - y.y;
        const double f1 = c.value;
        const double f2 = rx * c.dy - ry * c.dx;
        const double j11 = c.dx;
        const double j12 = c.dy;
        const double j21 = -c.dy + rx * c.dxy - ry * c.dxx;
        const double j22 = c.dx + rx * c.dyy - ry * c.dxy;
        const double det = j11 * j22 - j12 * j21;
        if (!(std::abs(det) > 1e-300)) {
            return std::nullopt;
        }
        const double sx = (j22 * f1 - j12 * f2) / det;
        const double sy = (-j21 * f1 + j11 * f2) / det;
        y.x -= sx;
        y.y -= sy;
        if (!std::isfinite(y.x) || !std::isfinite(y.y) || std::hypot(y.x - y0.x, y.y - y0.y) > 2.0 * h) {
            return std::nullopt;
        }
        if (std::hypot(sx, sy) <= 1e-12 * h) {
            return std::hypot(x.x - y.x, x.y - y.y);
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<RedistanceResult> redistance(const ScalarField& phi, double band)
{
    require(band > 0.0, "redistance band must be positive");
    const Grid& g = phi.grid();
    const double h = g.h();
    const double d0 = band / 3.0;

    LevelCurves curves = extract_level_curve(phi, 0.0);
    std::erase_if(curves.components, [](const InterfaceCurve& c) { return c.size() < 2; });
    if (curves.empty()) {
        return std::nullopt;
    }
    // Scatter each polygon segment's distance into the cells within
    // band + 2h of it; the strict comparison keeps the first segment on ties.
    const double reach = band + 2.0 * h;
    std::vector<double> dist2(g.size(), std::numeric_limits<double>::infinity());
    std::vector<Point> foot(g.size());
    const auto cell_lo = [&](double v, double o) { return static_cast<int>(std::floor((v - o) / h - 0.5)); };
    for (const auto& c : curves.components) {
        for (std::size_t k = 0; k < c.segment_count(); ++k) {
            const Point a = c.segment_start(k);
            const Point b = c.segment_end(k);
            const int i0 = std::max(0, cell_lo(std::min(a.x, b.x) - reach, g.origin().x));
            const int i1 = std::min(g.nx() - 1, cell_lo(std::max(a.x, b.x) + reach, g.origin().x) + 1);
            const int j0 = std::max(0, cell_lo(std::min(a.y, b.y) - reach, g.origin().y));
            const int j1 = std::min(g.ny() - 1, cell_lo(std::max(a.y, b.y) + reach, g.origin().y) + 1);
            const double ex = b.x - a.x;
            const double ey = b.y - a.y;
            const double len2 = ex * ex + ey * ey;
            for (int j = j0; j <= j1; ++j) {
                const double y = g.y_center(j);
                for (int i = i0; i <= i1; ++i) {
                    const double x = g.x_center(i);
                    double t = len2 > 0.0 ? ((x - a.x) * ex + (y - a.y) * ey) / len2 : 0.0;
                    t = std::clamp(t, 0.0, 1.0);
                    const double px = a.x + t * ex;
                    const double py = a.y + t * ey;
                    const double d2 = (x - px) * (x - px) + (y - py) * (y - py);
                    const std::size_t idx = g.index(i, j);
                    if (d2 < dist2[idx]) {
                        dist2[idx] = d2;
                        foot[idx] = {px, py};
                    }
                }
            }
        }
    }

    RedistanceResult out{ScalarField(g), std::move(curves), 0, 0};
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const std::size_t k = g.index(i, j);
            const double old = phi[k];
            const double sign = old < 0.0 ? -1.0 : 1.0;
            if (old == 0.0) {
                out.phi[k] = 0.0;
                continue;
            }
            if (!std::isfinite(dist2[k])) {
                out.phi[k] = sign * band;
                continue;
            }
            double d = std::sqrt(dist2[k]);
            if (d < band + h) {
                if (const auto refined = newton_distance(phi, g.center(i, j), foot[k])) {
                    d = *refined;
                    ++out.refined;
                } else {
                    ++out.fallbacks;
                }
            }
            out.phi[k] = zeta_clamp(sign * d, d0);
        }
    }
    return out;
}

}  // namespace haptolab
