#pragma once

// Weighted one-dimensional p-Laplacian eigenvalue problems
//
//   (-u'|u'|^{p-2})' = lambda u|u|^{p-2} + h'(x) u'|u'|^{p-2}   on (0, L),
//
// with h = log f for a weight f on [0, L], under Neumann or Dirichlet
// boundary conditions. The shooting solvers integrate the first-order system
//
//   u'   = sign(phi) |phi|^{1/(p-1)}
//   phi' = -lambda u|u|^{p-2} - h'(x) phi
//
// and bisect lambda on the oscillation signature of the trajectory.

#include "poincare/ptrig.hpp"
#include "poincare/pwl.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace poincare {

class Weight1D {
public:
    enum class Kind { Exponential, LogLinearSpline, Smooth };

    /// f(x) = exp(kappa x) on [0, L].
    static Weight1D exponential(double length, double kappa);
    /// log f linear between knots; knots start at 0 and end at L.
    static Weight1D log_linear_spline(std::vector<double> knots, std::vector<double> log_values);
    /// Arbitrary smooth positive weight given through log f and its derivative.
    static Weight1D smooth(double length, std::function<double(double)> log_f,
                           std::function<double(double)> dlog_f, std::string label = "smooth");

    Kind kind() const noexcept { return kind_; }
    double length() const noexcept { return length_; }
    double kappa() const noexcept { return kappa_; }
    const std::string& label() const noexcept { return label_; }

    double log_f(double x) const;
    double f(double x) const { return std::exp(log_f(x)); }
    /// h'(x); for splines the left limit at knots (right limit at x = 0).
    double dlog_f(double x) const;

    /// Interior points where h' may jump.
    std::vector<double> kinks() const;

    /// Exponential: always. Spline: knot slopes nonincreasing. Smooth: h' sampled
    /// nonincreasing on a grid.
    bool is_log_concave() const;

private:
    Weight1D() = default;

    Kind kind_ = Kind::Exponential;
    double length_ = 1.0;
    double kappa_ = 0.0;
    std::vector<double> knots_;
    std::vector<double> log_values_;
    std::function<double(double)> log_f_;
    std::function<double(double)> dlog_f_;
    std::string label_;
};

/// Real function sampled on an increasing grid, linearly interpolated.
struct SampledFunction {
    std::vector<double> xs;
    std::vector<double> us;

    double operator()(double x) const;
};

struct EigenResult1D {
    double lambda = 0.0;
    SampledFunction eigenfunction;
    /// Location of the single sign change (Neumann); NaN for Dirichlet results.
    double interior_zero = std::numeric_limits<double>::quiet_NaN();
    /// |phi(L)| (Neumann) or |u(L)| (Dirichlet) at the returned lambda.
    double boundary_residual = 0.0;
    int iterations = 0;
};

/// First nontrivial Neumann eigenvalue; tol is the relative width of the final
/// lambda bracket. Normalization u(0) = 1.
EigenResult1D neumann_first_nontrivial(const Weight1D& w, PExponent p, double tol = 1e-11);

/// First Dirichlet eigenvalue; normalization phi(0) = 1.
EigenResult1D dirichlet_first(const Weight1D& w, PExponent p, double tol = 1e-11);

struct Rayleigh1DResult {
    double lambda_upper = 0.0;
    std::vector<double> nodes;
    std::vector<double> u; // balanced and normalized: integral f |u|^p = 1
    int iterations = 0;
    bool converged = false;
};

/// Minimizes integral f|u'|^p / integral f|u - t|^p over continuous piecewise-linear u
/// on a uniform grid of n_nodes, t the balance shift. Preconditioned gradient
/// descent with Armijo backtracking from u0(x) = x - L/2.
Rayleigh1DResult rayleigh_min_1d(const Weight1D& w, PExponent p, std::size_t n_nodes, int max_iters);

struct GapRecord {
    double lambda_neumann;
    double lambda_dirichlet;
    double gap; // |lambda_N - lambda_D| / lambda_D
};

GapRecord neumann_dirichlet_gap(double kappa, PExponent p, double length, double tol = 1e-11);

/// Folds a Neumann eigenfunction with a single zero x0 into a nonnegative
/// function vanishing at 0 and L:
///   w(x) = |v(x + x0) / v(L)|       on [0, L - x0]
///   w(x) = |v(x - L + x0) / v(0)|   on [L - x0, L]
SampledFunction fold_to_dirichlet(const SampledFunction& v, double x0, double length,
                                  std::size_t samples = 2001);

/// integral f|w'|^p / integral f|w|^p for the linear interpolant of w.
double weighted_rayleigh_quotient(const Weight1D& w, const SampledFunction& u, PExponent p);

struct ExpIdentityRecord {
    double lhs_energy; // integral e^{kappa x} |u'|^p
    double rhs_energy; // integral |v' - (kappa/p) v|^p, v = u e^{kappa x / p}
    double lhs_norm;   // integral e^{kappa x} |u|^p
    double rhs_norm;   // integral |v|^p

    double energy_residual() const { return std::abs(lhs_energy - rhs_energy); }
    double norm_residual() const { return std::abs(lhs_norm - rhs_norm); }
};

ExpIdentityRecord exp_identity_check(const PiecewiseLinear& u, double kappa, PExponent p, double tol);

} // namespace poincare
