#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature on a finite interval.

#include "poincare/error.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

namespace poincare::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15(F& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = fc * kronrod_weights[7];
    double gauss = fc * gauss_weights[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kronrod_nodes[i];
        const double s = f(c - dx) + f(c + dx);
        kronrod += kronrod_weights[i] * s;
        if (i % 2 == 1)
            gauss += gauss_weights[i / 2] * s;
    }
    return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

} // namespace detail

/// Integrates f over [a, b] until the summed error estimate drops below
/// max(abs_tol, rel_tol * |I|). Throws ToleranceNotReached past max_intervals.
template <class F>
Result integrate(F&& f, double a, double b, double abs_tol, double rel_tol = 0.0,
                 int max_intervals = 4000)
{
    if (a == b)
        return {};
    std::priority_queue<detail::Segment> heap;
    auto first = detail::gk15(f, a, b);
    double total = first.value;
    double err = first.error;
    heap.push(first);
    int count = 1;
    while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (count >= max_intervals)
            fail(ErrorCode::ToleranceNotReached,
                 "adaptive quadrature stalled with error estimate " + std::to_string(err));
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval no longer divisible; accept what we have.
            break;
        }
        auto left = detail::gk15(f, worst.a, mid);
        auto right = detail::gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
    }
    // Recompute the sums from scratch so the result does not carry drift.
    double value = 0.0;
    double error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    return {value, error, count};
}

/// Integrates over consecutive panels [cuts[i], cuts[i+1]] sharing the tolerance budget.
template <class F>
Result integrate_panels(F&& f, const std::vector<double>& cuts, double abs_tol,
                        double rel_tol = 0.0)
{
    Result out;
    if (cuts.size() < 2)
        return out;
    const double span = cuts.back() - cuts.front();
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double share = span > 0 ? (cuts[i + 1] - cuts[i]) / span : 1.0;
        auto r = integrate(f, cuts[i], cuts[i + 1], abs_tol * share, rel_tol);
        out.value += r.value;
        out.error += r.error;
        out.intervals += r.intervals;
    }
    return out;
}

} // namespace poincare::quad
