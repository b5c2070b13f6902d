#pragma once

// Root of a strictly decreasing balance residual t -> integral |u - t|^{p-2}(u - t).

#include "poincare/error.hpp"

#include <cmath>

namespace poincare::detail {

/// moment(t) must be strictly decreasing with moment(lo) >= 0 >= moment(hi);
/// slope(t) is its (nonpositive) derivative. Newton steps that leave the
/// bracket fall back to bisection.
template <class Moment, class Slope>
double solve_balance(Moment&& moment, Slope&& slope, double lo, double hi, double abs_tol)
{
    double m_lo = moment(lo);
    double m_hi = moment(hi);
    if (m_lo < 0.0 || m_hi > 0.0 || (hi > lo && m_lo < m_hi))
        fail(ErrorCode::BracketFailure, "balance residual is not decreasing across the bracket");
    if (m_lo == 0.0)
        return lo;
    if (m_hi == 0.0)
        return hi;

    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double m = moment(t);
        if (std::abs(m) <= abs_tol)
            return t;
        if (m > 0.0) {
            lo = t;
            m_lo = m;
        } else {
            hi = t;
            m_hi = m;
        }
        if (!(m_lo > 0.0 && m_hi < 0.0))
            fail(ErrorCode::BracketFailure, "balance residual lost monotonicity");
        const double d = slope(t);
        double next = d < 0.0 ? t - m / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (next == t || hi - lo <= 4.0 * std::abs(t) * 2.2e-16)
            return next;
        t = next;
    }
    return t;
}

} // namespace poincare::detail
