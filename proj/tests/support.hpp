#pragma once
// Random inputs shared by the unit and acceptance tests. Seeds are fixed.

#include "poincare/geom.hpp"
#include "poincare/pwl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace poincare::fixtures {

inline PiecewiseLinear random_pwl(std::mt19937_64& rng, int pieces, bool nonnegative = false)
{
    std::uniform_real_distribution<double> pos(-2.0, 2.0);
    std::uniform_real_distribution<double> val(nonnegative ? 0.05 : -1.5, 1.5);
    std::vector<double> xs(pieces + 1);
    for (double& x : xs)
        x = pos(rng);
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] <= xs[i - 1])
            xs[i] = xs[i - 1] + 1e-3;
    std::vector<double> vs(xs.size(), 0.0);
    for (std::size_t i = 1; i + 1 < vs.size(); ++i)
        vs[i] = val(rng);
    return PiecewiseLinear(xs, vs);
}

/// Vertices on an ellipse at sorted random angles, rotated and shifted.
inline ConvexPolygon random_convex_polygon(std::mt19937_64& rng, int min_vertices = 3, int max_vertices = 9)
{
    std::uniform_int_distribution<int> count(min_vertices, max_vertices);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = count(rng);
    const double a = 0.5 + unit(rng);
    const double b = 0.3 + 0.7 * unit(rng);
    const double rot = std::numbers::pi * unit(rng);
    const Point shift{2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0};
    std::vector<double> angles(n);
    for (int i = 0; i < n; ++i)
        angles[i] = 2.0 * std::numbers::pi * (i + 0.8 * unit(rng)) / n;
    std::vector<Point> v;
    for (double t : angles) {
        const double x = a * std::cos(t);
        const double y = b * std::sin(t);
        v.push_back(Point{std::cos(rot) * x - std::sin(rot) * y, std::sin(rot) * x + std::cos(rot) * y} + shift);
    }
    return ConvexPolygon(v);
}

inline ScalarField random_affine_field(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    const double a = c(rng), b = c(rng), d = c(rng);
    return ScalarField([a, b, d](double x, double y) { return a * x + b * y + d; });
}

} // namespace poincare::fixtures
