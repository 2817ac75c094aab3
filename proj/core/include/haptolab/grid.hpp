#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace haptolab {

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

// Uniform cell-centered grid with square cells covering
// [origin, origin + (nx*h, ny*h)]. Samples live at cell centers.
class Grid {
public:
    Grid(int nx, int ny, double h, Point origin = {});

    // n x n cells on the unit square.
    static Grid unit_square(int n);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double h() const { return h_; }
    Point origin() const { return origin_; }
    std::size_t size() const { return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_); }
    double width() const { return nx_ * h_; }
    double height() const { return ny_ * h_; }

    std::size_t index(int i, int j) const
    {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(i);
    }
    double x_center(int i) const { return origin_.x + (i + 0.5) * h_; }
    double y_center(int j) const { return origin_.y + (j + 0.5) * h_; }
    Point center(int i, int j) const { return {x_center(i), y_center(j)}; }

    bool contains(Point p) const;
    // Distance from p to the nearest wall of the rectangle (p inside).
    double wall_distance(Point p) const;

    bool operator==(const Grid&) const = default;

private:
    int nx_;
    int ny_;
    double h_;
    Point origin_;
};

// One scalar unknown sampled at the cell centers of a Grid, stored row-major
// (index = j*nx + i). Homogeneous Neumann walls are realized by mirroring the
// adjacent interior cell into a single ghost ring.
class ScalarField {
public:
    explicit ScalarField(const Grid& grid, double value = 0.0);
    ScalarField(const Grid& grid, std::vector<double> values);

    template <class F>
    static ScalarField sample(const Grid& grid, F&& f)
    {
        ScalarField out(grid);
        for (int j = 0; j < grid.ny(); ++j) {
            for (int i = 0; i < grid.nx(); ++i) {
                out(i, j) = f(grid.x_center(i), grid.y_center(j));
            }
        }
        return out;
    }

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }

    double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }
    double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
    double& operator[](std::size_t k) { return values_[k]; }
    double operator[](std::size_t k) const { return values_[k]; }

    // Value with the ghost ring: i in [-1, nx], j in [-1, ny].
    double mirrored(int i, int j) const;

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }

    bool all_finite() const;
    double min() const;
    double max() const;
    double max_abs() const;
    // Cell sum times h^2.
    double integral() const;

    void fill(double value);

private:
    Grid grid_;
    std::vector<double> values_;
};

struct VectorField {
    explicit VectorField(const Grid& grid) : x(grid), y(grid) {}

    ScalarField x;
    ScalarField y;

    const Grid& grid() const { return x.grid(); }
    bool all_finite() const { return x.all_finite() && y.all_finite(); }
    // max over cells of the Euclidean norm
    double max_norm() const;
};

// 5-point Laplacian with mirrored ghosts (zero normal flux at every wall).
ScalarField laplacian_neumann(const ScalarField& f);
void laplacian_neumann(const ScalarField& f, ScalarField& out);

// Centered differences; at the boundary ring the mirrored ghost makes the
// wall-normal component the half one-sided difference.
VectorField gradient_centered(const ScalarField& f);
void gradient_centered(const ScalarField& f, VectorField& out);

// Conservative discretization of div(u w). Face velocities are averages of
// the adjacent cell values, face densities are upwinded on the sign of the
// face velocity, and wall faces carry no flux.
ScalarField advective_divergence(const ScalarField& u, const VectorField& w);
void advective_divergence(const ScalarField& u, const VectorField& w, ScalarField& out);

// Bilinear interpolation of the cell-center samples. Within half a cell of a
// wall the mirrored ghost makes the interpolant constant in the wall-normal
// direction. Throws OutOfDomain outside the grid rectangle.
double interpolate_bilinear(const ScalarField& f, Point p);

// max |a - b| over cells; grids must match.
double sup_distance(const ScalarField& a, const ScalarField& b);

}  // namespace haptolab
