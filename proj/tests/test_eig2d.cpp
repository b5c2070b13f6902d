#include "poincare/eig2d.hpp"
#include "poincare/error.hpp"
#include "poincare/io.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace poincare;

namespace {

constexpr double kPi = std::numbers::pi;

ConvexPolygon rectangle(double a, double b) { return ConvexPolygon({{0, 0}, {a, 0}, {a, b}, {0, b}}); }

ConvexPolygon regular_polygon(int n, double r)
{
    std::vector<Point> v;
    for (int i = 0; i < n; ++i)
        v.push_back({r * std::cos(2 * kPi * i / n), r * std::sin(2 * kPi * i / n)});
    return ConvexPolygon(v);
}

} // namespace

TEST(Mesh, SquareCoarse)
{
    const TriMesh m = mesh(rectangle(1, 1), 0.5);
    EXPECT_EQ(m.triangles.size(), 8u);
    EXPECT_EQ(m.nodes.size(), 9u);
    EXPECT_NEAR(m.area(), 1.0, 1e-15);
    EXPECT_EQ(std::count(m.boundary.begin(), m.boundary.end(), 1), 8);
}

TEST(Mesh, CutCellsCoverPolygon)
{
    for (const ConvexPolygon& poly : {regular_polygon(7, 1.0), ConvexPolygon({{0, 0}, {3, 0.4}, {0.5, 2}})}) {
        const TriMesh m = mesh(poly, 0.07);
        EXPECT_NEAR(m.area(), area(poly), 1e-12 * area(poly));
        EXPECT_LE(m.max_edge(), 0.07 * std::sqrt(2.0) + 1e-12);
        for (const auto& t : m.triangles) {
            const Point a = m.nodes[t[0]], b = m.nodes[t[1]], c = m.nodes[t[2]];
            EXPECT_GT(cross(b - a, c - a), 0.0);
        }
    }
}

TEST(Rayleigh2D, SquareLinearCase)
{
    const BoundReport r = check_bound(rectangle(1, 1), PExponent(2.0), 0.05);
    EXPECT_TRUE(r.converged);
    EXPECT_GE(r.mu_est, kPi * kPi * (1.0 - 1e-9)); // conforming elements
    EXPECT_NEAR(r.mu_est, kPi * kPi, 0.01 * kPi * kPi);
    EXPECT_NEAR(r.d, std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(r.ratio, 2.0, 0.02);
    EXPECT_NEAR(r.shift_t, 0.0, 1e-6);
    EXPECT_TRUE(r.holds());
}

TEST(Rayleigh2D, RectangleLinearCase)
{
    const BoundReport r = check_bound(rectangle(2, 1), PExponent(2.0), 0.05);
    EXPECT_GE(r.mu_est, kPi * kPi / 4.0 * (1.0 - 1e-9));
    EXPECT_NEAR(r.mu_est, kPi * kPi / 4.0, 0.01 * kPi * kPi / 4.0);
    EXPECT_TRUE(r.holds());
}

TEST(Rayleigh2D, DiskLinearCase)
{
    // first nontrivial Neumann eigenvalue of the unit disk: j'_{1,1}^2
    const BoundReport r = check_bound(regular_polygon(64, 1.0), PExponent(2.0), 0.05);
    EXPECT_NEAR(r.mu_est, 3.38995771667189, 0.02 * 3.38995771667189);
    EXPECT_TRUE(r.holds());
}

TEST(Rayleigh2D, RefinementDecreasesEstimate)
{
    for (double p : {2.0, 3.0}) {
        double previous = INFINITY;
        for (double h : {0.2, 0.1, 0.05}) {
            const double mu = rayleigh_min_2d(mesh(rectangle(1, 1), h), PExponent(p)).mu;
            EXPECT_LE(mu, previous * (1.0 + 1e-6)) << p << " h=" << h;
            previous = mu;
        }
    }
}

TEST(Rayleigh2D, BoundHoldsForHigherExponents)
{
    for (double p : {3.0, 4.0})
        for (const ConvexPolygon& poly : {rectangle(1, 1), regular_polygon(6, 1.0), ConvexPolygon({{0, 0}, {1, 0}, {0, 1}})}) {
            const BoundReport r = check_bound(poly, PExponent(p), 0.05);
            EXPECT_TRUE(r.holds()) << p << " ratio=" << r.ratio;
            EXPECT_GT(r.ratio, 1.0);
        }
}

TEST(Rayleigh2D, Deterministic)
{
    const TriMesh m = mesh(regular_polygon(5, 1.0), 0.1);
    const EigenResult2D a = rayleigh_min_2d(m, PExponent(3.0));
    const EigenResult2D b = rayleigh_min_2d(m, PExponent(3.0));
    EXPECT_EQ(a.mu, b.mu);
    EXPECT_EQ(a.u, b.u);
    EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Rayleigh2D, EigenfunctionIsBalancedAndNormalized)
{
    const TriMesh m = mesh(rectangle(1, 1), 0.1);
    const EigenResult2D r = rayleigh_min_2d(m, PExponent(3.0));
    EXPECT_LE(std::abs(r.moment_residual), 1e-8 * std::max(1.0, r.moment_scale));
    EXPECT_TRUE(r.converged);
}

TEST(Rayleigh2D, RejectsSubquadraticExponent)
{
    EXPECT_THROW(check_bound(rectangle(1, 1), PExponent(1.5), 0.1), Error);
    EXPECT_THROW(check_bound(rectangle(1, 1), PExponent(2.0), 0.0), Error);
}

TEST(Sharpness, ThinSlabsApproachTheBound)
{
    for (double p : {2.0, 3.0}) {
        const SharpnessTable t = thin_slab_sharpness(1.0, {0.2, 0.1, 0.05}, PExponent(p));
        ASSERT_EQ(t.rows.size(), 3u);
        EXPECT_TRUE(t.monotone()) << p;
        EXPECT_TRUE(t.converges()) << p;
        for (const SharpnessRow& row : t.rows) {
            EXPECT_NEAR(row.h, row.delta / 5.0, 1e-15);
            EXPECT_GE(row.ratio, 1.0 - 5.0 * row.h);
        }
        EXPECT_LT(t.rows.back().ratio, 1.01);
    }
}

TEST(ThinReduction, ResidualsShrinkWithWidth)
{
    const ConvexPolygon sq = rectangle(1, 1);
    const ScalarField raw([](double x, double y) { return x * x + x * y + y; });
    const PExponent p(2.0);
    const ScalarField u = raw.shifted(balance_shift(sq, raw, p, 1e-12));
    // |u|, |grad u|, |D^2 u| <= 3 on the square
    const double m = 3.0;
    auto worst = [&](double eps) {
        double r = 0.0;
        for (const SlicePiece& piece : decompose(sq, u, p, eps)) {
            const ThinReductionRecord rec = thin_reduction_check(piece, u, p, m);
            EXPECT_TRUE(rec.within_bound()) << eps;
            r = std::max({r, rec.r1 / rec.area, rec.r2 / rec.area, rec.r3 / rec.area});
        }
        return r;
    };
    const double coarse = worst(0.1);
    const double fine = worst(0.05);
    EXPECT_GT(coarse, 0.0);
    EXPECT_LE(fine, 0.75 * coarse);
}
