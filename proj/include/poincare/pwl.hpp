#pragma once

// Exact calculus on continuous, compactly supported, piecewise-linear
// functions: L^p norms, drift energies, distribution functions and the
// symmetric decreasing rearrangement.

#include "poincare/ptrig.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace poincare {

/// Continuous piecewise-linear function vanishing at both ends of its
/// breakpoint list. Collinear interior breakpoints are dropped on construction.
class PiecewiseLinear {
public:
    PiecewiseLinear(std::vector<double> breakpoints, std::vector<double> values);

    std::span<const double> breakpoints() const noexcept { return xs_; }
    std::span<const double> values() const noexcept { return vs_; }
    std::size_t pieces() const noexcept { return xs_.size() - 1; }

    double slope(std::size_t piece) const;
    double operator()(double x) const;

    double max_abs() const;
    /// Support endpoints x_0 and x_m.
    double left() const noexcept { return xs_.front(); }
    double right() const noexcept { return xs_.back(); }

    /// |u| with sign changes inside pieces promoted to breakpoints.
    PiecewiseLinear abs() const;

    bool operator==(const PiecewiseLinear&) const = default;

private:
    std::vector<double> xs_;
    std::vector<double> vs_;
};

/// t -> |{ |u| > t }| for a piecewise-linear u. Linear between consecutive
/// levels; a plateau of |u| at level a produces a jump at a.
class DistributionFunction {
public:
    struct Level {
        double value;     // a_i
        double measure;   // |{|u| > a_i}|
        double left_limit; // |{|u| >= a_i}|, larger than measure at plateau levels
    };

    explicit DistributionFunction(std::vector<Level> levels) : levels_(std::move(levels)) {}

    std::span<const Level> levels() const noexcept { return levels_; }
    double operator()(double t) const;
    /// Derivative on the open band containing t (not at a level).
    double derivative(double t) const;

private:
    std::vector<Level> levels_;
};

/// |{x : w(x) > t}| (strict) or |{x : w(x) >= t}|, computed from the interval
/// endpoints of the superlevel set.
double superlevel_measure(const PiecewiseLinear& w, double t, bool strict);

/// integral_0^len |v0 + (v1 - v0) s / len|^p ds, stable for large p.
double integral_abs_linear_pow(double v0, double v1, double len, double p);

double lp_norm_p(const PiecewiseLinear& u, PExponent p);
DistributionFunction distribution(const PiecewiseLinear& u);
/// Symmetric decreasing rearrangement of |u|, centred at 0.
PiecewiseLinear rearrange(const PiecewiseLinear& u);

/// Exact integral of |u' + kappa u|^p.
double drift_energy(const PiecewiseLinear& u, double kappa, PExponent p);

/// A function f of the level u(x), evaluable on [0, max u].
class LevelFunction {
public:
    static LevelFunction constant(double c);
    static LevelFunction from(std::function<double(double)> f);

    double operator()(double level) const { return constant_ ? *constant_ : f_(level); }
    std::optional<double> constant_value() const noexcept { return constant_; }

private:
    std::function<double(double)> f_;
    std::optional<double> constant_;
};

/// integral |u'(x) + f(u(x))|^p dx for nonnegative u; exact for constant f,
/// otherwise adaptive quadrature per piece to tol.
double general_drift_energy(const PiecewiseLinear& u, const LevelFunction& f, PExponent p,
                            double tol);

struct TwoSlopeGap {
    double min_value;
    double lower_bound;
    double argmin_shift;
};

/// Minimum over sigma of |a+sigma|^p/a + |b-sigma|^p/b against 2^p (ab/(a+b))^{p-1}.
/// The minimizer is sigma = (a^{1/(p-1)} b - a b^{1/(p-1)}) / (a^{1/(p-1)} + b^{1/(p-1)})
/// and the minimum equals (a+b)^p / (a^{1/(p-1)} + b^{1/(p-1)})^{p-1}. Requires p >= 2.
TwoSlopeGap two_slope_gap(double a, double b, PExponent p);

struct DriftBoundReport {
    double sharp = 0.0; // integral |u#'|^p
    std::vector<double> kappas;
    std::vector<double> margins; // drift_energy(|u|, kappa) - sharp
    std::vector<double> violating_kappas;
    double rel_tol = 1e-12;

    bool holds() const noexcept { return violating_kappas.empty(); }
    double min_margin() const;
};

/// Checks integral |u' + kappa u|^p >= integral |u#'|^p over a grid of kappa (p >= 2).
/// A kappa violates when its margin is below -rel_tol * max(sharp, energy).
DriftBoundReport verify_drift_bound(const PiecewiseLinear& u, PExponent p, std::span<const double> kappa_grid,
                           double rel_tol = 1e-12);

struct DriftCounterexample {
    double lhs;            // integral |u' + 1|^p
    double rhs_rearranged; // integral |u#' + 1|^p
    double sharp;          // integral |u#'|^p
    PiecewiseLinear u;

    bool rearranged_inequality_holds() const noexcept { return lhs >= rhs_rearranged; }
    bool refined_inequality_holds() const noexcept { return lhs >= sharp; }
};

/// The function with slope 1-eps on [-1/(1-eps), 0] and -1 on [0, 1], for which
/// the rearranged drift inequality fails when p > 2 and eps is small.
PiecewiseLinear drift_counterexample_function(double eps);
DriftCounterexample drift_counterexample(PExponent p, double eps);

} // namespace poincare
