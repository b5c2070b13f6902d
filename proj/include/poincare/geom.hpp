#pragma once

// Convex polygons in the plane and the balanced slicing of a convex domain
// into thin convex pieces on each of which a field has zero p-moment.

#include "poincare/ptrig.hpp"
#include "poincare/wirtinger1d.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace poincare {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point, Point) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point a);

/// Counter-clockwise convex vertex loop with positive area. Clockwise input is
/// reversed; duplicate and collinear vertices are dropped.
class ConvexPolygon {
public:
    explicit ConvexPolygon(std::vector<Point> vertices);

    std::span<const Point> vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    Point centroid() const;
    bool contains(Point q, double tol = 0.0) const;

private:
    std::vector<Point> vertices_;
};

/// The line { x cos(theta) + y sin(theta) = c }, theta in [0, pi).
struct SplitLine {
    double theta;
    double c;

    static SplitLine normalized(double theta, double c);
    Point normal() const;
};

enum class Side { Below, Above }; // n.x <= c, n.x >= c

/// Intersection with a closed half-plane; nullopt when empty or degenerate.
std::optional<ConvexPolygon> clip(const ConvexPolygon& poly, const SplitLine& line, Side side);
/// Same with an arbitrary unit normal.
std::optional<ConvexPolygon> clip(const ConvexPolygon& poly, Point normal, double c, Side side);

double area(const ConvexPolygon& poly);
double diameter(const ConvexPolygon& poly);

struct WidthInfo {
    double width;
    double theta; // direction of the normal realizing the width, in [0, pi)
};

WidthInfo min_width(const ConvexPolygon& poly);

/// Total real map on the plane.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(std::function<double(double, double)> f) : f_(std::move(f)) {}

    double operator()(double x, double y) const { return f_(x, y); }
    double operator()(Point q) const { return f_(q.x, q.y); }

    /// Field minus a constant.
    ScalarField shifted(double t) const;

private:
    std::function<double(double, double)> f_;
};

/// integral over poly of g(u(x)), centroid fan plus a 7-point degree-5 triangle rule
/// with adaptive quadrisection until the absolute error estimate is below tol.
/// If g is only piecewise smooth across the zero set of kink, pass kink: a triangle
/// the zero set crosses is not accepted while all rule nodes sit on one side of it.
double integrate_field(const ConvexPolygon& poly, const std::function<double(Point)>& g, double tol,
                       const std::function<double(Point)>& kink = {});

/// integral over poly of |u - t|^{p-2} (u - t).
double p_moment(const ConvexPolygon& poly, const ScalarField& u, PExponent p, double t, double tol);

/// Scale of the moment: integral |u|^{p-1}, floored away from zero.
double moment_scale(const ConvexPolygon& poly, const ScalarField& u, PExponent p);

/// Unique t with p_moment(poly, u, p, t) = 0 (within tol * scale).
double balance_shift(const ConvexPolygon& poly, const ScalarField& u, PExponent p, double tol);

struct SplitResult {
    ConvexPolygon left;  // n.x <= c
    ConvexPolygon right; // n.x >= c
    SplitLine line;
    double left_moment;
    double right_moment;
};

/// Splits into two halves of equal area with zero p-moment each. For every
/// direction theta the cut is the area-bisecting line; theta is scanned on 128
/// directions for a sign change of the left moment (which flips sign under
/// theta -> theta + pi) and bisected. The field must be pre-balanced.
SplitResult split_once(const ConvexPolygon& poly, const ScalarField& u, PExponent p, double tol);

struct SlicePiece {
    ConvexPolygon polygon;
    double axis_theta; // long direction
    double length;     // extent along the axis
    double width;      // minimal width
    double p_moment_residual;
};

struct DecomposeOptions {
    double tol = 1e-10;
    int max_depth = 40;
};

/// Recursive split_once until every piece has min_width <= eps. Pieces are
/// ordered lexicographically by centroid.
std::vector<SlicePiece> decompose(const ConvexPolygon& poly, const ScalarField& u, PExponent p, double eps,
                                  const DecomposeOptions& options = {});

struct SectionProfile {
    double theta;
    double offset;  // support starts at x1 = offset
    double length;  // d_theta
    std::vector<double> ts;      // sample positions in [0, length]
    std::vector<double> lengths; // chord lengths

    /// Log-linear spline weight through the positive samples, shifted to start at 0.
    Weight1D to_weight() const;
};

/// Length of the chord poly cap { x cos(theta) + y sin(theta) = s }.
double chord_length(const ConvexPolygon& poly, double theta, double s);

/// Chord lengths at m uniform positions across the support in direction theta.
SectionProfile section_profile(const ConvexPolygon& poly, double theta, std::size_t m);

/// f(t)^2 >= f(t - d) f(t + d) (1 - rel_tol) at all interior samples.
bool is_discretely_log_concave(const SectionProfile& profile, double rel_tol = 1e-9);

} // namespace poincare
