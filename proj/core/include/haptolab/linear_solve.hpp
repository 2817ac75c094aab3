#pragma once

#include "haptolab/grid.hpp"

#include <vector>

namespace haptolab {

struct CgResult {
    int iterations = 0;
    double residual = 0.0;  // final max-norm residual
};

// Scratch vectors for the solver, reused across calls of equal size.
struct CgWorkspace {
    std::vector<double> r, z, p, ap, inv_diag;
};

// Solves (shift I - diffusivity Lap_h) x = b, Lap_h the mirrored-ghost
// 5-point Laplacian, by Jacobi-preconditioned conjugate gradients. x carries
// the initial guess. Stops once max|r| <= tol * max(1, max|b|); throws
// SolverFailure after max_iterations.
CgResult solve_shifted_laplacian(double shift, double diffusivity, const ScalarField& b, ScalarField& x,
                                 double tol = 1e-10, int max_iterations = 5000, CgWorkspace* workspace = nullptr);

}  // namespace haptolab
