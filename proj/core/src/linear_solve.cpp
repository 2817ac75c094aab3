#include "haptolab/linear_solve.hpp"

#include "haptolab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace haptolab {

namespace {

// y = (shift - diffusivity Lap_h) x; mirrored ghosts drop the wall couplings.
// Written row by row so the interior loop is branch-free.
void apply(const Grid& g, double shift, double c, const double* x, double* y)
{
    const int nx = g.nx();
    const int ny = g.ny();
    for (int j = 0; j < ny; ++j) {
        const double* xr = x + g.index(0, j);
        const double* xs = j > 0 ? xr - nx : nullptr;
        const double* xn = j + 1 < ny ? xr + nx : nullptr;
        double* yr = y + g.index(0, j);
        // vertical links, then horizontal
        const double vlinks = (xs != nullptr) + (xn != nullptr);
        for (int i = 0; i < nx; ++i) {
            double v = -vlinks * xr[i];
            if (xs) v += xs[i];
            if (xn) v += xn[i];
            yr[i] = v;
        }
        for (int i = 1; i + 1 < nx; ++i) {
            yr[i] += xr[i - 1] + xr[i + 1] - 2.0 * xr[i];
        }
        if (nx > 1) {
            yr[0] += xr[1] - xr[0];
            yr[nx - 1] += xr[nx - 2] - xr[nx - 1];
        }
        for (int i = 0; i < nx; ++i) {
            yr[i] = shift * xr[i] - c * yr[i];
        }
    }
}

double diagonal(const Grid& g, double shift, double c, int i, int j)
{
    const int links = (i > 0) + (i + 1 < g.nx()) + (j > 0) + (j + 1 < g.ny());
    return shift + c * links;
}

}  // namespace

CgResult solve_shifted_laplacian(double shift, double diffusivity, const ScalarField& b, ScalarField& x, double tol,
                                 int max_iterations, CgWorkspace* workspace)
{
    const Grid& g = b.grid();
    require(x.grid() == g, "solution and right-hand side grids differ");
    require(shift > 0.0 && diffusivity >= 0.0, "operator must be symmetric positive definite");
    const std::size_t n = g.size();
    const double c = diffusivity / (g.h() * g.h());

    CgWorkspace local;
    CgWorkspace& ws = workspace ? *workspace : local;
    ws.r.resize(n);
    ws.z.resize(n);
    ws.p.resize(n);
    ws.ap.resize(n);
    double* r = ws.r.data();
    double* z = ws.z.data();
    double* p = ws.p.data();
    double* ap = ws.ap.data();
    double* xv = x.data();
    const double* bv = b.data();

    ws.inv_diag.resize(n);
    double* inv_diag = ws.inv_diag.data();
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            inv_diag[g.index(i, j)] = 1.0 / diagonal(g, shift, c, i, j);
        }
    }

    const double threshold = tol * std::max(1.0, b.max_abs());
    apply(g, shift, c, xv, ap);
    double rmax = 0.0;
    double rz = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        r[k] = bv[k] - ap[k];
        z[k] = inv_diag[k] * r[k];
        p[k] = z[k];
        rz += r[k] * z[k];
        rmax = std::max(rmax, std::abs(r[k]));
    }
    CgResult result;
    for (int it = 0; it < max_iterations; ++it) {
        if (rmax <= threshold) {
            result.iterations = it;
            result.residual = rmax;
            return result;
        }
        apply(g, shift, c, p, ap);
        double pap = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            pap += p[k] * ap[k];
        }
        const double a = rz / pap;
        double rz_new = 0.0;
        rmax = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            xv[k] += a * p[k];
            r[k] -= a * ap[k];
            z[k] = inv_diag[k] * r[k];
            rz_new += r[k] * z[k];
            rmax = std::max(rmax, std::abs(r[k]));
        }
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t k = 0; k < n; ++k) {
            p[k] = z[k] + beta * p[k];
        }
        if (!std::isfinite(rmax)) {
            break;
        }
    }
    throw SolverFailure("conjugate gradients did not reach residual " + std::to_string(threshold) + " (last " +
                        std::to_string(rmax) + ")");
}

}  // namespace haptolab
