#include "haptolab/grid.hpp"

#include "haptolab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace haptolab {

Grid::Grid(int nx, int ny, double h, Point origin) : nx_(nx), ny_(ny), h_(h), origin_(origin)
{
    require(nx >= 8 && ny >= 8, "grid needs at least 8 cells per axis");
    require(h > 0.0 && std::isfinite(h), "grid spacing must be positive");
    require(std::isfinite(origin.x) && std::isfinite(origin.y), "grid origin must be finite");
}

Grid Grid::unit_square(int n)
{
    require(n >= 8, "grid needs at least 8 cells per axis");
    return Grid(n, n, 1.0 / n);
}

bool Grid::contains(Point p) const
{
    return p.x >= origin_.x && p.x <= origin_.x + width() && p.y >= origin_.y && p.y <= origin_.y + height();
}

double Grid::wall_distance(Point p) const
{
    return std::min({p.x - origin_.x, origin_.x + width() - p.x, p.y - origin_.y, origin_.y + height() - p.y});
}

ScalarField::ScalarField(const Grid& grid, double value) : grid_(grid), values_(grid.size(), value) {}

ScalarField::ScalarField(const Grid& grid, std::vector<double> values) : grid_(grid), values_(std::move(values))
{
    require(values_.size() == grid_.size(), "field sample count does not match grid");
}

double ScalarField::mirrored(int i, int j) const
{
    i = std::clamp(i, 0, grid_.nx() - 1);
    j = std::clamp(j, 0, grid_.ny() - 1);
    return (*this)(i, j);
}

bool ScalarField::all_finite() const
{
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }

double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double ScalarField::max_abs() const
{
    double m = 0.0;
    for (double v : values_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double ScalarField::integral() const
{
    double s = 0.0;
    for (double v : values_) {
        s += v;
    }
    return s * grid_.h() * grid_.h();
}

void ScalarField::fill(double value) { std::fill(values_.begin(), values_.end(), value); }

double VectorField::max_norm() const
{
    double m = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        m = std::max(m, std::hypot(x[k], y[k]));
    }
    return m;
}

namespace {

void require_same_grid(const Grid& a, const Grid& b)
{
    require(a == b, "fields live on different grids");
}

}  // namespace

void laplacian_neumann(const ScalarField& f, ScalarField& out)
{
    const Grid& g = f.grid();
    require_same_grid(g, out.grid());
    const int nx = g.nx();
    const int ny = g.ny();
    const double inv_h2 = 1.0 / (g.h() * g.h());
    const double* in = f.data();
    double* o = out.data();
    for (int j = 0; j < ny; ++j) {
        const double* row = in + static_cast<std::size_t>(j) * nx;
        const double* below = in + static_cast<std::size_t>(j > 0 ? j - 1 : 0) * nx;
        const double* above = in + static_cast<std::size_t>(j < ny - 1 ? j + 1 : ny - 1) * nx;
        double* orow = o + static_cast<std::size_t>(j) * nx;
        orow[0] = (row[1] - row[0] + below[0] + above[0] - 2.0 * row[0]) * inv_h2;
        for (int i = 1; i < nx - 1; ++i) {
            orow[i] = (row[i - 1] + row[i + 1] + below[i] + above[i] - 4.0 * row[i]) * inv_h2;
        }
        orow[nx - 1] = (row[nx - 2] - row[nx - 1] + below[nx - 1] + above[nx - 1] - 2.0 * row[nx - 1]) * inv_h2;
    }
}

ScalarField laplacian_neumann(const ScalarField& f)
{
    ScalarField out(f.grid());
    laplacian_neumann(f, out);
    return out;
}

void gradient_centered(const ScalarField& f, VectorField& out)
{
    const Grid& g = f.grid();
    require_same_grid(g, out.grid());
    const int nx = g.nx();
    const int ny = g.ny();
    const double inv_2h = 0.5 / g.h();
    for (int j = 0; j < ny; ++j) {
        const int jm = j > 0 ? j - 1 : 0;
        const int jp = j < ny - 1 ? j + 1 : ny - 1;
        for (int i = 0; i < nx; ++i) {
            const int im = i > 0 ? i - 1 : 0;
            const int ip = i < nx - 1 ? i + 1 : nx - 1;
            out.x(i, j) = (f(ip, j) - f(im, j)) * inv_2h;
            out.y(i, j) = (f(i, jp) - f(i, jm)) * inv_2h;
        }
    }
}

VectorField gradient_centered(const ScalarField& f)
{
    VectorField out(f.grid());
    gradient_centered(f, out);
    return out;
}

void advective_divergence(const ScalarField& u, const VectorField& w, ScalarField& out)
{
    const Grid& g = u.grid();
    require_same_grid(g, w.grid());
    require_same_grid(g, out.grid());
    const int nx = g.nx();
    const int ny = g.ny();
    const double inv_h = 1.0 / g.h();
    out.fill(0.0);
    double* o = out.data();
    // x faces between (i, j) and (i+1, j)
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            const std::size_t a = g.index(i, j);
            const std::size_t b = a + 1;
            const double wf = 0.5 * (w.x[a] + w.x[b]);
            const double flux = wf * (wf > 0.0 ? u[a] : u[b]) * inv_h;
            o[a] += flux;
            o[b] -= flux;
        }
    }
    // y faces between (i, j) and (i, j+1)
    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const std::size_t a = g.index(i, j);
            const std::size_t b = a + static_cast<std::size_t>(nx);
            const double wf = 0.5 * (w.y[a] + w.y[b]);
            const double flux = wf * (wf > 0.0 ? u[a] : u[b]) * inv_h;
            o[a] += flux;
            o[b] -= flux;
        }
    }
}

ScalarField advective_divergence(const ScalarField& u, const VectorField& w)
{
    ScalarField out(u.grid());
    advective_divergence(u, w, out);
    return out;
}

double interpolate_bilinear(const ScalarField& f, Point p)
{
    const Grid& g = f.grid();
    if (!g.contains(p)) {
        std::ostringstream msg;
        msg << "point (" << p.x << ", " << p.y << ") lies outside the grid rectangle";
        throw OutOfDomain(msg.str());
    }
    const double sx = std::clamp((p.x - g.origin().x) / g.h() - 0.5, 0.0, static_cast<double>(g.nx() - 1));
    const double sy = std::clamp((p.y - g.origin().y) / g.h() - 0.5, 0.0, static_cast<double>(g.ny() - 1));
    const int i0 = std::min(static_cast<int>(sx), g.nx() - 2);
    const int j0 = std::min(static_cast<int>(sy), g.ny() - 2);
    const double tx = sx - i0;
    const double ty = sy - j0;
    const double f00 = f(i0, j0);
    const double f10 = f(i0 + 1, j0);
    const double f01 = f(i0, j0 + 1);
    const double f11 = f(i0 + 1, j0 + 1);
    return (1.0 - ty) * ((1.0 - tx) * f00 + tx * f10) + ty * ((1.0 - tx) * f01 + tx * f11);
}

double sup_distance(const ScalarField& a, const ScalarField& b)
{
    require_same_grid(a.grid(), b.grid());
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        m = std::max(m, std::abs(a[k] - b[k]));
    }
    return m;
}

}  // namespace haptolab
