#include "haptolab/analysis.hpp"
#include "haptolab/bistable.hpp"
#include "haptolab/curve.hpp"
#include "haptolab/errors.hpp"
#include "haptolab/studies.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace haptolab;

namespace {

constexpr double pi = std::numbers::pi;

InterfaceCurve circle_polygon(Point c, double R, int n)
{
    InterfaceCurve out;
    for (int k = 0; k < n; ++k) {
        double th = 2 * pi * k / n;
        out.points.push_back({c.x + R * std::cos(th), c.y + R * std::sin(th)});
    }
    return out;
}

InterfaceCurve random_star(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double r0 = 0.15 + 0.1 * U(rng), a = 0.05 * U(rng), ph = 2 * pi * U(rng);
    const int lobes = 2 + static_cast<int>(4 * U(rng));
    const Point c{0.4 + 0.2 * U(rng), 0.4 + 0.2 * U(rng)};
    InterfaceCurve out;
    const int n = 50 + static_cast<int>(100 * U(rng));
    for (int k = 0; k < n; ++k) {
        double th = 2 * pi * k / n;
        double r = r0 + a * std::cos(lobes * th + ph);
        out.points.push_back({c.x + r * std::cos(th), c.y + r * std::sin(th)});
    }
    return out;
}

// scalar reaction ODE u' = f(u) / eps^2 by RK4 at a fine fixed step
double reaction_ode(double u, double t, double eps)
{
    const int n = 200000;
    const double dt = t / n, c = 1.0 / (eps * eps);
    for (int k = 0; k < n; ++k) {
        double k1 = c * f_bistable(u);
        double k2 = c * f_bistable(u + 0.5 * dt * k1);
        double k3 = c * f_bistable(u + 0.5 * dt * k2);
        double k4 = c * f_bistable(u + dt * k3);
        u += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return u;
}

HaptoParams hp(double eps)
{
    HaptoParams p;
    p.eps = eps;
    p.C0 = 5.0;
    return p;
}

}  // namespace

TEST(LevelCurve, CircleAndVertexAccuracy)
{
    Grid g = Grid::unit_square(64);
    const double R = 0.3;
    auto f = ScalarField::sample(g, [&](double x, double y) {
        return (x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5) - R * R;
    });
    auto curves = extract_level_curve(f, 0.0);
    ASSERT_EQ(curves.components.size(), 1u);
    const auto& c = curves.main();
    EXPECT_TRUE(c.closed);
    EXPECT_GE(c.size(), 8u);
    EXPECT_GT(signed_area(c), 0.0);
    for (auto p : c.points) {
        EXPECT_NEAR(interpolate_bilinear(f, p), 0.0, 1e-9);
        EXPECT_NEAR(std::hypot(p.x - 0.5, p.y - 0.5), R, g.h());
    }
    EXPECT_LE(hausdorff(c, circle_polygon({0.5, 0.5}, R, 8192)), g.h());
}

TEST(LevelCurve, AffineIsCollinear)
{
    Grid g = Grid::unit_square(32);
    auto f = ScalarField::sample(g, [](double x, double y) { return 0.3 * x + 0.7 * y; });
    auto curves = extract_level_curve(f, 0.4);
    ASSERT_EQ(curves.components.size(), 1u);
    const auto& c = curves.main();
    EXPECT_FALSE(c.closed);
    for (auto p : c.points) EXPECT_NEAR(0.3 * p.x + 0.7 * p.y, 0.4, 1e-9);
}

TEST(LevelCurve, EmptyAndMultiComponent)
{
    Grid g = Grid::unit_square(64);
    EXPECT_TRUE(extract_level_curve(ScalarField(g, 1.0), 0.5).empty());
    auto two = ScalarField::sample(g, [](double x, double y) {
        return std::min(std::hypot(x - 0.3, y - 0.5), std::hypot(x - 0.7, y - 0.5)) - 0.1;
    });
    auto curves = extract_level_curve(two, 0.0);
    EXPECT_EQ(curves.components.size(), 2u);
    EXPECT_THROW(extract_level_curve(ScalarField(g, 1.0), 0.5).main(), InvalidCurve);
}

TEST(CurveDistance, IdenticalAndConcentric)
{
    auto a = circle_polygon({0.5, 0.5}, 0.3, 4096);
    EXPECT_LE(hausdorff(a, a), 1e-15);
    const double delta = 0.01;
    auto b = circle_polygon({0.5, 0.5}, 0.3 + delta, 4096);
    EXPECT_NEAR(hausdorff(a, b), delta, 0.02 * delta);
    EXPECT_NEAR(one_sided_sup_distance(a, b), delta, 0.02 * delta);
}

TEST(CurveDistance, OneSidedCanBeAsymmetric)
{
    // a quarter arc lies on the circle; the circle point opposite the arc's
    // middle is a chord of 135 degrees away from both arc ends
    auto circle = circle_polygon({0.5, 0.5}, 0.3, 2048);
    InterfaceCurve arc;
    arc.closed = false;
    for (int k = 0; k <= 64; ++k) {
        double th = 0.5 * pi * k / 64;
        arc.points.push_back({0.5 + 0.3 * std::cos(th), 0.5 + 0.3 * std::sin(th)});
    }
    EXPECT_LT(one_sided_sup_distance(arc, circle), 1e-4);
    EXPECT_NEAR(one_sided_sup_distance(circle, arc), 0.6 * std::sin(0.375 * pi), 1e-4);
}

TEST(CurveDistance, HausdorffIsAMetricOnRandomStars)
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_star(rng), b = random_star(rng), c = random_star(rng);
        double ab = hausdorff(a, b), ba = hausdorff(b, a), bc = hausdorff(b, c), ac = hausdorff(a, c);
        EXPECT_EQ(ab, ba);
        EXPECT_LE(ac, ab + bc + 1e-12);
    }
}

TEST(CurveDistance, SupRefinementFindsTheWorstPoint)
{
    // brute force along densely subdivided segments of `a`
    std::mt19937_64 rng(5);
    auto a = random_star(rng), b = random_star(rng);
    SegmentIndex idx(b);
    double brute = 0.0;
    for (std::size_t k = 0; k < a.segment_count(); ++k) {
        Point p = a.segment_start(k), q = a.segment_end(k);
        for (int s = 0; s <= 2000; ++s) {
            double t = s / 2000.0;
            Point x{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
            double d = 1e300;
            for (std::size_t m = 0; m < b.segment_count(); ++m)
                d = std::min(d, point_segment_distance(x, b.segment_start(m), b.segment_end(m)));
            if (s % 100 == 0) {
                EXPECT_NEAR(idx.distance(x), d, 1e-15);
            }
            brute = std::max(brute, d);
        }
    }
    double sup = one_sided_sup_distance(a, b);
    EXPECT_GE(sup, brute - 1e-12);
    EXPECT_LE(sup, brute + 1e-6);
}

TEST(Generation, TimeFormula)
{
    EXPECT_DOUBLE_EQ(generation_time(0.02), 4 * 0.02 * 0.02 * std::abs(std::log(0.02)));
}

TEST(Generation, EquilibriumHasNoViolations)
{
    Grid g = Grid::unit_square(32);
    const double eps = 0.04;
    auto s = DiffuseState::initial(ScalarField(g, 1.0), ScalarField(g, 1.0), ScalarField(g, 0.0));
    auto traj = run_diffuse(s, hp(eps), generation_time(eps), {});
    for (double eta : {0.05, 0.1, 0.2})
        for (double M0 : {0.0, 1.0, 5.0}) {
            auto r = check_generation(traj, s.u, eps, eta, M0);
            EXPECT_EQ(r.violations_a, 0);
            EXPECT_EQ(r.violations_b, 0);
            EXPECT_EQ(r.t_star, generation_time(eps));
        }
}

TEST(Generation, UniformAboveHalfFollowsTheReactionOde)
{
    Grid g = Grid::unit_square(16);
    const double eps = 0.04, M0 = 1.5, eta = 0.1;
    const double u_init = 0.5 + 2 * M0 * eps;
    auto s = DiffuseState::initial(ScalarField(g, u_init), ScalarField(g, 1.0), ScalarField(g, 0.0));
    const double t_star = generation_time(eps);
    auto traj = run_diffuse(s, hp(eps), t_star, {});
    const double oracle = reaction_ode(u_init, t_star, eps);
    EXPECT_GT(oracle, 1 - eta);
    EXPECT_NEAR(traj.snapshots.back().u.max(), oracle, 1e-8);
    auto r = check_generation(traj, s.u, eps, eta, M0);
    EXPECT_EQ(r.cells_upper, static_cast<long>(g.size()));
    EXPECT_EQ(r.violations_b, 0);
}

TEST(Generation, MissingSnapshotAndMonotoneInEta)
{
    Grid g = Grid::unit_square(32);
    const double eps = 0.05;
    auto u0 = ScalarField::sample(g, [&](double x, double y) {
        return standing_profile((std::hypot(x - 0.5, y - 0.5) - 0.25) / (2 * eps));
    });
    auto s = DiffuseState::initial(u0, ScalarField(g, 1.0), ScalarField(g, 0.0));
    auto early = run_diffuse(s, hp(eps), 0.5 * generation_time(eps), {});
    EXPECT_THROW(check_generation(early, u0, eps, 0.1, 1.0), MissingSnapshot);

    auto at = run_diffuse(s, hp(eps), generation_time(eps), {});
    long prev = -1;
    for (double eta : {0.2, 0.1, 0.05, 0.01, 0.001}) {
        auto r = check_generation(at, u0, eps, eta, 0.5);
        EXPECT_GE(r.violations_a + r.violations_b, prev);
        prev = r.violations_a + r.violations_b;
    }
    // the fitted M0 has no (b) violations and one ladder rung less does
    const auto& ut = at.snapshots.back().u;
    double M0 = fit_generation_M0(ut, u0, eps, 0.1, 0.05);
    EXPECT_EQ(check_generation_at(ut, u0, eps, 0.1, M0, 0).violations_b, 0);
    if (M0 >= 0.05) {
        EXPECT_GT(check_generation_at(ut, u0, eps, 0.1, M0 - 0.05, 0).violations_b, 0);
    }
}

TEST(EnvelopeFields, OrderingLimitAndBounds)
{
    Grid g = Grid::unit_square(64);
    const double T = 0.01, d0 = 0.06;
    auto c = envelope_constants(T, d0, 0.05, 1.2);
    auto d = ScalarField::sample(g, [&](double x, double y) {
        double s = std::hypot(x - 0.5, y - 0.5) - 0.25;
        return std::clamp(s, -3 * d0, 3 * d0);
    });
    for (double t : {0.0, 0.3 * T, T}) {
        for (double eps : {c.eps0, c.eps0 / 2, c.eps0 / 8}) {
            auto lo = envelope_fields(d, t, eps, c, -1);
            auto hi = envelope_fields(d, t, eps, c, +1);
            for (std::size_t k = 0; k < d.size(); ++k) {
                double mid = standing_profile(d[k] / eps);
                EXPECT_LE(lo[k], mid);
                EXPECT_GE(hi[k], mid);
                EXPECT_GT(lo[k], -1.0);
                EXPECT_LT(hi[k], 2.0);
            }
        }
    }
    // away from the interface both envelopes approach the indicator as eps
    // shrinks, up to q(t) and the profile tail
    const double t = 0.5 * T;
    double prev_gap = 1e300;
    for (double eps : {c.eps0, c.eps0 / 4, c.eps0 / 16}) {
        auto pq = envelope_p_q(t, eps, c);
        double gap = 0.0;
        for (int side : {-1, 1}) {
            auto u = envelope_fields(d, t, eps, c, side);
            for (std::size_t k = 0; k < d.size(); ++k) {
                if (std::abs(d[k]) < 2 * d0) continue;
                double target = d[k] < 0 ? 1.0 : 0.0;
                double tail = std::exp(-(std::abs(d[k]) - eps * pq.p) / eps * kProfileDecay);
                EXPECT_LE(std::abs(u[k] - target), pq.q + tail + 1e-15);
                gap = std::max(gap, std::abs(u[k] - target));
            }
        }
        EXPECT_LT(gap, prev_gap);
        prev_gap = gap;
    }
}

TEST(ResidualLv, TrivialStates)
{
    Grid g = Grid::unit_square(16);
    ChiSpec chi;
    auto v = ScalarField::sample(g, [](double x, double y) { return 1 + 0.3 * std::cos(pi * x) * std::cos(pi * y); });
    EXPECT_EQ(residual_Lv(ScalarField(g, 0.0), v, ScalarField(g, 0.0), chi, 0.05).max_abs(), 0.0);
    EXPECT_EQ(residual_Lv(ScalarField(g, 1.0), ScalarField(g, 1.0), ScalarField(g, 0.0), chi, 0.05).max_abs(), 0.0);
}

TEST(Fits, LineAndLogLog)
{
    auto lf = fit_line({0, 1, 2, 3}, {1, 3, 5, 7});
    EXPECT_NEAR(lf.slope, 2.0, 1e-14);
    EXPECT_NEAR(lf.intercept, 1.0, 1e-14);
    std::vector<double> x{0.04, 0.02, 0.01}, y;
    for (double e : x) y.push_back(3.0 * e);
    auto ll = fit_loglog(x, y);
    EXPECT_NEAR(ll.slope, 1.0, 1e-12);
    EXPECT_NEAR(ll.intercept, 3.0, 1e-12);
    EXPECT_THROW(fit_loglog({1, 2}, {1, -1}), InvalidArgument);
}

TEST(Restrict, AveragesBlocks)
{
    Grid g = Grid::unit_square(16);
    auto f = ScalarField::sample(g, [](double x, double y) { return 2 * x - y; });
    auto c = restrict_average(f);
    ASSERT_EQ(c.grid().nx(), 8);
    for (int j = 0; j < 8; ++j)
        for (int i = 0; i < 8; ++i)
            EXPECT_NEAR(c(i, j), 2 * c.grid().x_center(i) - c.grid().y_center(j), 1e-14);
}

TEST(Studies, CellsAndTimes)
{
    EXPECT_EQ(cells_for_eps(0.04, 4), 100);
    EXPECT_EQ(cells_for_eps(0.03, 4), 134);
    auto t = uniform_times(0.0, 1.0, 4);
    ASSERT_EQ(t.size(), 4u);
    EXPECT_EQ(t.back(), 1.0);
    EXPECT_DOUBLE_EQ(t[0], 0.25);
}
