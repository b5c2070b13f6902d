#pragma once

// First nontrivial Neumann p-Laplacian eigenvalue on convex polygons, computed
// as the minimum of the balanced Rayleigh quotient over P1 finite elements.

#include "poincare/geom.hpp"
#include "poincare/ptrig.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace poincare {

struct TriMesh {
    std::vector<Point> nodes;
    std::vector<std::array<int, 3>> triangles; // counter-clockwise
    std::vector<std::uint8_t> boundary;        // 1 where the node lies on the polygon boundary

    double area() const;
    double max_edge() const;
};

/// Structured grid of pitch h anchored at the lower-left corner of the bounding
/// box. Interior cells are split along the same diagonal; cut cells are clipped
/// exactly and fanned. Coincident nodes are merged.
TriMesh mesh(const ConvexPolygon& poly, double h);

struct EigenResult2D {
    double mu = 0.0;
    std::vector<double> u; // nodal values, normalized so that integral |u - t|^p = 1
    double shift_t = 0.0;
    double grad_norm = 0.0; // preconditioned gradient norm relative to mu
    double moment_residual = 0.0;
    double moment_scale = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Minimizes integral |grad u|^p / min_t integral |u - t|^p by nonlinear conjugate
/// gradients, preconditioned by stiffness plus mass, with an Armijo line search.
/// Stops once the relative preconditioned gradient norm drops below tol, or the
/// quotient has dropped by less than tol^2 (relative) over the last 25 steps.
EigenResult2D rayleigh_min_2d(const TriMesh& mesh, PExponent p, double tol = 1e-6, int max_iters = 20000);

struct BoundReport {
    double mu_est;
    double d;     // diameter
    double bound; // (pi_p / d)^p
    double ratio; // mu_est / bound
    double h;
    double shift_t;
    int iterations;
    bool converged;

    /// Conforming elements overestimate mu, so only the mesh slack is allowed below 1.
    bool holds() const { return ratio >= 1.0 - 5.0 * h; }
};

BoundReport check_bound(const ConvexPolygon& poly, PExponent p, double h, double tol = 1e-6);

struct SharpnessRow {
    double delta;
    double h;
    double mu_est;
    double bound;
    double ratio;
};

struct SharpnessTable {
    std::vector<SharpnessRow> rows;

    /// Ratios never increase along the (decreasing) list of thicknesses.
    bool monotone(double slack = 1e-9) const;
    /// Last ratio is within 1 + max(0.05, 10 h).
    bool converges() const;
};

/// Rectangles [0, d] x [0, delta] for each delta; h = h_rule(delta), default delta / 5.
SharpnessTable thin_slab_sharpness(double d, const std::vector<double>& deltas, PExponent p,
                                   const std::function<double(double)>& h_rule = {});

struct ThinReductionRecord {
    double r1; // |int |d_axis u|^p - int f |v'|^p|
    double r2; // |int |u|^p - int f |v|^p|
    double r3; // |int f |v|^{p-2} v - int |u|^{p-2} u|
    double area;
    double eps;   // piece width
    double bound; // C |piece| eps with C = p max(M, 1)^p

    bool within_bound() const { return r1 <= bound && r2 <= bound && r3 <= bound; }
};

/// Compares integrals over a thin piece with their one-dimensional reductions
/// along the piece axis: v(t) is u on the midline, f the chord length. M bounds
/// u and its first and second derivatives on the piece.
ThinReductionRecord thin_reduction_check(const SlicePiece& piece, const ScalarField& u, PExponent p,
                                         double c2_bound);

} // namespace poincare
