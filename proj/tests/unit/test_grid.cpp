#include "haptolab/errors.hpp"
#include "haptolab/grid.hpp"
#include "haptolab/snapshot_io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace haptolab;

namespace {

constexpr double pi = std::numbers::pi;

ScalarField cos_cos(const Grid& g)
{
    return ScalarField::sample(g, [](double x, double y) { return std::cos(pi * x) * std::cos(pi * y); });
}

ScalarField random_field(const Grid& g, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    ScalarField f(g);
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = U(rng);
    return f;
}

double sup_interior(const ScalarField& a, int margin, auto&& exact)
{
    const Grid& g = a.grid();
    double e = 0.0;
    for (int j = margin; j < g.ny() - margin; ++j)
        for (int i = margin; i < g.nx() - margin; ++i)
            e = std::max(e, std::abs(a(i, j) - exact(g.x_center(i), g.y_center(j))));
    return e;
}

}  // namespace

TEST(Grid, RejectsTinyOrDegenerate)
{
    EXPECT_THROW(Grid(7, 8, 0.1), InvalidArgument);
    EXPECT_THROW(Grid(8, 8, 0.0), InvalidArgument);
    EXPECT_NO_THROW(Grid(8, 8, 0.1));
}

TEST(Grid, UnitSquareGeometry)
{
    Grid g = Grid::unit_square(10);
    EXPECT_DOUBLE_EQ(g.h(), 0.1);
    EXPECT_DOUBLE_EQ(g.x_center(0), 0.05);
    EXPECT_DOUBLE_EQ(g.width(), 1.0);
    EXPECT_NEAR(g.wall_distance({0.2, 0.7}), 0.2, 1e-15);
}

TEST(Laplacian, ConstantIsZero)
{
    Grid g = Grid::unit_square(16);
    ScalarField f(g, 3.5);
    EXPECT_EQ(laplacian_neumann(f).max_abs(), 0.0);
}

TEST(Laplacian, QuadraticExactInInterior)
{
    Grid g = Grid::unit_square(20);
    auto L = laplacian_neumann(ScalarField::sample(g, [](double x, double) { return x * x; }));
    EXPECT_LT(sup_interior(L, 1, [](double, double) { return 2.0; }), 1e-9);
}

TEST(Laplacian, SecondOrderOnCosineModes)
{
    std::vector<double> err;
    for (int n : {16, 32, 64, 128}) {
        Grid g = Grid::unit_square(n);
        auto L = laplacian_neumann(cos_cos(g));
        err.push_back(sup_interior(L, 0, [](double x, double y) {
            return -2.0 * pi * pi * std::cos(pi * x) * std::cos(pi * y);
        }));
    }
    for (std::size_t k = 1; k < err.size(); ++k) {
        double order = std::log2(err[k - 1] / err[k]);
        EXPECT_NEAR(order, 2.0, 0.1) << "level " << k;
    }
}

TEST(Laplacian, DiscreteDivergenceTheorem)
{
    std::mt19937_64 rng(7);
    Grid g(24, 17, 0.05);
    auto L = laplacian_neumann(random_field(g, rng));
    double sum = 0.0;
    for (std::size_t k = 0; k < L.size(); ++k) sum += L[k];
    EXPECT_NEAR(sum * g.h() * g.h(), 0.0, 1e-10);
}

TEST(Gradient, AffineExactAndConstantZero)
{
    Grid g = Grid::unit_square(12);
    auto G = gradient_centered(ScalarField::sample(g, [](double x, double y) { return 3 * x + 2 * y; }));
    for (int j = 1; j < 11; ++j)
        for (int i = 1; i < 11; ++i) {
            EXPECT_NEAR(G.x(i, j), 3.0, 1e-12);
            EXPECT_NEAR(G.y(i, j), 2.0, 1e-12);
        }
    EXPECT_EQ(gradient_centered(ScalarField(g, 1.0)).max_norm(), 0.0);
}

TEST(Gradient, SecondOrderOnCosineModes)
{
    std::vector<double> err;
    for (int n : {16, 32, 64, 128}) {
        Grid g = Grid::unit_square(n);
        auto G = gradient_centered(cos_cos(g));
        double e = 0.0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double x = g.x_center(i), y = g.y_center(j);
                e = std::max(e, std::abs(G.x(i, j) + pi * std::sin(pi * x) * std::cos(pi * y)));
                e = std::max(e, std::abs(G.y(i, j) + pi * std::cos(pi * x) * std::sin(pi * y)));
            }
        err.push_back(e);
    }
    // the boundary ring is a half one-sided difference, which for cos modes
    // (zero normal derivative) is still second order
    for (std::size_t k = 1; k < err.size(); ++k) EXPECT_GT(std::log2(err[k - 1] / err[k]), 1.8);
}

TEST(Ghosts, MirrorGivesZeroNormalDifference)
{
    std::mt19937_64 rng(3);
    Grid g(9, 11, 0.1);
    auto f = random_field(g, rng);
    for (int j = 0; j < g.ny(); ++j) {
        EXPECT_EQ(f.mirrored(-1, j), f(0, j));
        EXPECT_EQ(f.mirrored(g.nx(), j), f(g.nx() - 1, j));
    }
    for (int i = 0; i < g.nx(); ++i) {
        EXPECT_EQ(f.mirrored(i, -1), f(i, 0));
        EXPECT_EQ(f.mirrored(i, g.ny()), f(i, g.ny() - 1));
    }
}

TEST(AdvectiveDivergence, ZeroVelocityAndConservation)
{
    std::mt19937_64 rng(11);
    Grid g = Grid::unit_square(20);
    auto u = random_field(g, rng);
    VectorField w(g);
    EXPECT_EQ(advective_divergence(u, w).max_abs(), 0.0);

    w.x = random_field(g, rng);
    w.y = random_field(g, rng);
    auto d = advective_divergence(u, w);
    double sum = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) sum += d[k];
    EXPECT_NEAR(sum * g.h() * g.h(), 0.0, 1e-12);
}

TEST(AdvectiveDivergence, UnitDensityInQuadraticPotential)
{
    // u = 1, w = grad(x^2/2) = (x, 0): div(u w) = 1 away from the walls
    std::vector<double> err;
    for (int n : {16, 32, 64}) {
        Grid g = Grid::unit_square(n);
        VectorField w(g);
        w.x = ScalarField::sample(g, [](double x, double) { return x; });
        auto d = advective_divergence(ScalarField(g, 1.0), w);
        err.push_back(sup_interior(d, 1, [](double, double) { return 1.0; }));
    }
    for (double e : err) EXPECT_LT(e, 1e-10);
}

TEST(AdvectiveDivergence, FirstOrderOnSmoothFlux)
{
    // u = 1 + x y, w = (sin(pi x), cos(pi y)) / 2 in the interior
    auto exact = [](double x, double y) {
        double u = 1 + x * y, ux = y, uy = x;
        double wx = 0.5 * std::sin(pi * x), wy = 0.5 * std::cos(pi * y);
        return ux * wx + u * 0.5 * pi * std::cos(pi * x) + uy * wy - u * 0.5 * pi * std::sin(pi * y);
    };
    std::vector<double> err;
    for (int n : {32, 64, 128}) {
        Grid g = Grid::unit_square(n);
        VectorField w(g);
        w.x = ScalarField::sample(g, [](double x, double) { return 0.5 * std::sin(pi * x); });
        w.y = ScalarField::sample(g, [](double, double y) { return 0.5 * std::cos(pi * y); });
        auto d = advective_divergence(ScalarField::sample(g, [](double x, double y) { return 1 + x * y; }), w);
        err.push_back(sup_interior(d, n / 8, exact));
    }
    for (std::size_t k = 1; k < err.size(); ++k) EXPECT_GT(std::log2(err[k - 1] / err[k]), 0.9);
}

TEST(Operators, LinearUnderSuperposition)
{
    std::mt19937_64 rng(5);
    Grid g(13, 10, 0.07);
    auto a = random_field(g, rng), b = random_field(g, rng);
    VectorField w(g);
    w.x = random_field(g, rng);
    w.y = random_field(g, rng);
    const double alpha = 0.37, beta = -1.9;
    ScalarField c(g);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = alpha * a[k] + beta * b[k];

    auto La = laplacian_neumann(a), Lb = laplacian_neumann(b), Lc = laplacian_neumann(c);
    auto Da = advective_divergence(a, w), Db = advective_divergence(b, w), Dc = advective_divergence(c, w);
    auto Ga = gradient_centered(a), Gb = gradient_centered(b), Gc = gradient_centered(c);
    for (std::size_t k = 0; k < c.size(); ++k) {
        EXPECT_NEAR(Lc[k], alpha * La[k] + beta * Lb[k], 1e-12 * (1 + std::abs(Lc[k])));
        EXPECT_NEAR(Dc[k], alpha * Da[k] + beta * Db[k], 1e-12 * (1 + std::abs(Dc[k])));
        EXPECT_NEAR(Gc.x[k], alpha * Ga.x[k] + beta * Gb.x[k], 1e-12 * (1 + std::abs(Gc.x[k])));
    }
}

TEST(Bilinear, CellCentersAffineAndOutside)
{
    std::mt19937_64 rng(17);
    Grid g = Grid::unit_square(16);
    auto f = random_field(g, rng);
    EXPECT_EQ(interpolate_bilinear(f, g.center(3, 5)), f(3, 5));

    auto affine = ScalarField::sample(g, [](double x, double y) { return 1.5 - 2 * x + 0.25 * y; });
    std::uniform_real_distribution<double> U(g.h() / 2, 1 - g.h() / 2);
    for (int k = 0; k < 100; ++k) {
        Point p{U(rng), U(rng)};
        EXPECT_NEAR(interpolate_bilinear(affine, p), 1.5 - 2 * p.x + 0.25 * p.y, 1e-13);
    }
    EXPECT_THROW(interpolate_bilinear(f, {1.01, 0.5}), OutOfDomain);
}

TEST(Bilinear, SecondOrderOnCosineModes)
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> U(0.05, 0.95);
    std::vector<Point> pts(200);
    for (auto& p : pts) p = {U(rng), U(rng)};
    std::vector<double> err;
    for (int n : {16, 32, 64, 128}) {
        auto f = cos_cos(Grid::unit_square(n));
        double e = 0.0;
        for (auto p : pts) e = std::max(e, std::abs(interpolate_bilinear(f, p) - std::cos(pi * p.x) * std::cos(pi * p.y)));
        err.push_back(e);
    }
    for (std::size_t k = 1; k < err.size(); ++k) EXPECT_NEAR(std::log2(err[k - 1] / err[k]), 2.0, 0.25);
}

TEST(SnapshotIo, RoundTripIsLossless)
{
    std::mt19937_64 rng(29);
    Grid g(9, 8, 0.125, {0.25, -1.0});
    auto f = random_field(g, rng);
    std::stringstream ss;
    write_snapshot(ss, f, "u", 0.0123456789012345678);
    Snapshot s = read_snapshot(ss);
    EXPECT_EQ(s.name, "u");
    EXPECT_EQ(s.time, 0.0123456789012345678);
    EXPECT_TRUE(s.field.grid() == g);
    for (std::size_t k = 0; k < f.size(); ++k) EXPECT_EQ(s.field[k], f[k]);
}

TEST(SnapshotIo, FormatRealSeventeenDigits)
{
    EXPECT_EQ(std::stod(format_real(0.1)), 0.1);
    EXPECT_EQ(std::stod(format_real(1.0 / 3.0)), 1.0 / 3.0);
}
