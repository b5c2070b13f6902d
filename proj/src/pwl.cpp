#include "poincare/pwl.hpp"

#include "poincare/error.hpp"
#include "poincare/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace poincare {

namespace {

// Slopes equal up to this relative gap are treated as one piece.
constexpr double kCollinearTol = 1e-12;

bool same_slope(double s1, double s2)
{
    return std::abs(s1 - s2) <= kCollinearTol * std::max(std::abs(s1), std::abs(s2));
}

// Crossing of level t on the segment (xa, va) -- (xb, vb); exact at the ends.
double crossing(double xa, double va, double xb, double vb, double t)
{
    if (t == va)
        return xa;
    if (t == vb)
        return xb;
    return xa + (t - va) / (vb - va) * (xb - xa);
}

} // namespace

PiecewiseLinear::PiecewiseLinear(std::vector<double> breakpoints, std::vector<double> values)
{
    if (breakpoints.size() != values.size())
        fail(ErrorCode::InvalidArgument, "breakpoints and values differ in length");
    if (breakpoints.size() < 2)
        fail(ErrorCode::InvalidArgument, "a piecewise-linear function needs at least two breakpoints");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (!std::isfinite(breakpoints[i]) || !std::isfinite(values[i]))
            fail(ErrorCode::InvalidArgument, "non-finite breakpoint or value");
        if (i > 0 && !(breakpoints[i] > breakpoints[i - 1]))
            fail(ErrorCode::InvalidArgument, "breakpoints must be strictly increasing");
    }
    if (values.front() != 0.0 || values.back() != 0.0)
        fail(ErrorCode::InvalidArgument, "values must vanish at the first and last breakpoint");

    xs_.reserve(breakpoints.size());
    vs_.reserve(values.size());
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (i + 1 < breakpoints.size() && xs_.size() >= 1) {
            const double left = (values[i] - vs_.back()) / (breakpoints[i] - xs_.back());
            const double right = (values[i + 1] - values[i]) / (breakpoints[i + 1] - breakpoints[i]);
            if (same_slope(left, right))
                continue;
        }
        xs_.push_back(breakpoints[i]);
        vs_.push_back(values[i]);
    }
}

double PiecewiseLinear::slope(std::size_t piece) const
{
    return (vs_[piece + 1] - vs_[piece]) / (xs_[piece + 1] - xs_[piece]);
}

double PiecewiseLinear::operator()(double x) const
{
    if (x <= xs_.front() || x >= xs_.back())
        return 0.0;
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
    return vs_[i] + (x - xs_[i]) * slope(i);
}

double PiecewiseLinear::max_abs() const
{
    double m = 0.0;
    for (double v : vs_)
        m = std::max(m, std::abs(v));
    return m;
}

PiecewiseLinear PiecewiseLinear::abs() const
{
    std::vector<double> xs;
    std::vector<double> vs;
    xs.reserve(xs_.size() * 2);
    vs.reserve(xs_.size() * 2);
    for (std::size_t i = 0; i < xs_.size(); ++i) {
        if (i > 0 && vs_[i - 1] * vs_[i] < 0.0) {
            const double xc = crossing(xs_[i - 1], vs_[i - 1], xs_[i], vs_[i], 0.0);
            if (xc > xs.back() && xc < xs_[i]) {
                xs.push_back(xc);
                vs.push_back(0.0);
            }
        }
        xs.push_back(xs_[i]);
        vs.push_back(std::abs(vs_[i]));
    }
    return PiecewiseLinear(std::move(xs), std::move(vs));
}

double superlevel_measure(const PiecewiseLinear& w, double t, bool strict)
{
    auto xs = w.breakpoints();
    auto vs = w.values();
    auto in = [&](double v) { return strict ? v > t : v >= t; };

    double total = 0.0;
    bool inside = in(vs[0]);
    double start = xs[0];
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const bool next = in(vs[i + 1]);
        if (inside && !next) {
            total += crossing(xs[i], vs[i], xs[i + 1], vs[i + 1], t) - start;
            inside = false;
        } else if (!inside && next) {
            start = crossing(xs[i], vs[i], xs[i + 1], vs[i + 1], t);
            inside = true;
        }
    }
    if (inside)
        total += xs.back() - start;
    return total;
}

double DistributionFunction::operator()(double t) const
{
    if (t < levels_.front().value)
        return std::numeric_limits<double>::infinity();
    if (t >= levels_.back().value)
        return 0.0;
    auto it = std::upper_bound(levels_.begin(), levels_.end(), t,
                               [](double v, const Level& l) { return v < l.value; });
    const Level& hi = *it;
    const Level& lo = *(it - 1);
    if (t == lo.value)
        return lo.measure;
    const double s = (t - lo.value) / (hi.value - lo.value);
    return lo.measure + s * (hi.left_limit - lo.measure);
}

double DistributionFunction::derivative(double t) const
{
    if (t < levels_.front().value || t >= levels_.back().value)
        return 0.0;
    auto it = std::upper_bound(levels_.begin(), levels_.end(), t,
                               [](double v, const Level& l) { return v < l.value; });
    const Level& hi = *it;
    const Level& lo = *(it - 1);
    return (hi.left_limit - lo.measure) / (hi.value - lo.value);
}

DistributionFunction distribution(const PiecewiseLinear& u)
{
    const PiecewiseLinear w = u.abs();
    std::vector<double> levels(w.values().begin(), w.values().end());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    std::vector<DistributionFunction::Level> out;
    out.reserve(levels.size());
    for (double a : levels) {
        const double strict = superlevel_measure(w, a, true);
        const double closed = a > 0.0 ? superlevel_measure(w, a, false) : strict;
        out.push_back({a, strict, closed});
    }
    return DistributionFunction(std::move(out));
}

PiecewiseLinear rearrange(const PiecewiseLinear& u)
{
    const DistributionFunction mu = distribution(u);
    auto levels = mu.levels();
    if (levels.size() == 1) {
        const double half = 0.5 * (u.right() - u.left());
        return PiecewiseLinear({-half, half}, {0.0, 0.0});
    }

    // Right half, outward from the origin: level a_i is reached at mu(a_i)/2 and,
    // on a plateau, held until mu(a_i^-)/2.
    std::vector<double> rx;
    std::vector<double> rv;
    for (std::size_t k = levels.size(); k-- > 0;) {
        const auto& l = levels[k];
        rx.push_back(0.5 * l.measure);
        rv.push_back(l.value);
        if (k > 0 && l.left_limit > l.measure) {
            rx.push_back(0.5 * l.left_limit);
            rv.push_back(l.value);
        }
    }

    std::vector<double> xs;
    std::vector<double> vs;
    xs.reserve(2 * rx.size());
    vs.reserve(2 * rx.size());
    for (std::size_t k = rx.size(); k-- > 1;) {
        xs.push_back(-rx[k]);
        vs.push_back(rv[k]);
    }
    for (std::size_t k = 0; k < rx.size(); ++k) {
        xs.push_back(rx[k]);
        vs.push_back(rv[k]);
    }
    return PiecewiseLinear(std::move(xs), std::move(vs));
}

double integral_abs_linear_pow(double v0, double v1, double len, double p)
{
    if (len <= 0.0)
        return 0.0;
    const double a0 = std::abs(v0);
    const double a1 = std::abs(v1);
    if (v0 * v1 < 0.0) {
        const double s0 = len * a0 / (a0 + a1);
        return (s0 * std::pow(a0, p) + (len - s0) * std::pow(a1, p)) / (p + 1.0);
    }
    const double big = std::max(a0, a1);
    if (big == 0.0)
        return 0.0;
    const double delta = (big - std::min(a0, a1)) / big;
    double shape = 1.0;
    if (delta > 0.0) // (1 - r^{p+1}) / ((p+1)(1-r)) with r = 1 - delta
        shape = -std::expm1((p + 1.0) * std::log1p(-delta)) / (delta * (p + 1.0));
    return len * std::pow(big, p) * shape;
}

double lp_norm_p(const PiecewiseLinear& u, PExponent p)
{
    auto xs = u.breakpoints();
    auto vs = u.values();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        total += integral_abs_linear_pow(vs[i], vs[i + 1], xs[i + 1] - xs[i], p);
    return total;
}

double drift_energy(const PiecewiseLinear& u, double kappa, PExponent p)
{
    auto xs = u.breakpoints();
    auto vs = u.values();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double b = u.slope(i);
        total += integral_abs_linear_pow(b + kappa * vs[i], b + kappa * vs[i + 1], xs[i + 1] - xs[i], p);
    }
    return total;
}

LevelFunction LevelFunction::constant(double c)
{
    LevelFunction f;
    f.constant_ = c;
    return f;
}

LevelFunction LevelFunction::from(std::function<double(double)> fn)
{
    LevelFunction f;
    f.f_ = std::move(fn);
    return f;
}

double general_drift_energy(const PiecewiseLinear& u, const LevelFunction& f, PExponent p, double tol)
{
    auto xs = u.breakpoints();
    auto vs = u.values();
    const double floor = -1e-15 * std::max(1.0, u.max_abs());
    for (double v : vs)
        if (v < floor)
            fail(ErrorCode::Domain, "general_drift_energy requires a nonnegative function");
    if (!(tol > 0.0))
        fail(ErrorCode::InvalidArgument, "tolerance must be positive");

    const double span = u.right() - u.left();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double len = xs[i + 1] - xs[i];
        const double b = u.slope(i);
        if (auto c = f.constant_value()) {
            total += len * std::pow(std::abs(b + *c), p.value());
            continue;
        }
        auto integrand = [&](double s) {
            const double level = vs[i] + (vs[i + 1] - vs[i]) * (s / len);
            return std::pow(std::abs(b + f(level)), p.value());
        };
        total += quad::integrate(integrand, 0.0, len, tol * len / span).value;
    }
    return total;
}

TwoSlopeGap two_slope_gap(double a, double b, PExponent p)
{
    require_p_at_least_two(p, "two_slope_gap");
    if (!(a > 0.0) || !(b > 0.0))
        fail(ErrorCode::Domain, "two_slope_gap requires positive slopes");
    const double pv = p.value();
    const double ra = std::pow(a, 1.0 / (pv - 1.0));
    const double rb = std::pow(b, 1.0 / (pv - 1.0));
    const double sigma = (ra * b - a * rb) / (ra + rb);
    TwoSlopeGap out;
    out.argmin_shift = sigma;
    out.min_value = std::pow(std::abs(a + sigma), pv) / a + std::pow(std::abs(b - sigma), pv) / b;
    out.lower_bound = std::pow(2.0, pv) * std::pow(a * b / (a + b), pv - 1.0);
    return out;
}

double DriftBoundReport::min_margin() const
{
    double m = std::numeric_limits<double>::infinity();
    for (double v : margins)
        m = std::min(m, v);
    return m;
}

DriftBoundReport verify_drift_bound(const PiecewiseLinear& u, PExponent p, std::span<const double> kappa_grid,
                           double rel_tol)
{
    require_p_at_least_two(p, "verify_drift_bound");
    const PiecewiseLinear w = u.abs();
    DriftBoundReport report;
    report.rel_tol = rel_tol;
    report.sharp = drift_energy(rearrange(w), 0.0, p);
    report.kappas.assign(kappa_grid.begin(), kappa_grid.end());
    report.margins.reserve(kappa_grid.size());
    for (double kappa : kappa_grid) {
        const double energy = drift_energy(w, kappa, p);
        const double margin = energy - report.sharp;
        report.margins.push_back(margin);
        if (margin < -rel_tol * std::max(report.sharp, energy))
            report.violating_kappas.push_back(kappa);
    }
    return report;
}

PiecewiseLinear drift_counterexample_function(double eps)
{
    if (!(eps > 0.0 && eps < 1.0))
        fail(ErrorCode::Domain, "eps must lie in (0, 1)");
    return PiecewiseLinear({-1.0 / (1.0 - eps), 0.0, 1.0}, {0.0, 1.0, 0.0});
}

DriftCounterexample drift_counterexample(PExponent p, double eps)
{
    if (!(p.value() > 2.0))
        fail(ErrorCode::Domain, "the counterexample needs p > 2");
    const double pv = p.value();
    const double support = (2.0 - eps) / (1.0 - eps);
    const double s = 2.0 * (1.0 - eps) / (2.0 - eps);
    DriftCounterexample rec{
        std::pow(2.0 - eps, pv) / (1.0 - eps),
        (std::pow(1.0 + s, pv) + std::pow(1.0 - s, pv)) * 0.5 * support,
        std::pow(s, pv) * support,
        drift_counterexample_function(eps),
    };
    return rec;
}

} // namespace poincare
