#include "poincare/ptrig.hpp"

#include "poincare/error.hpp"
#include "poincare/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace poincare {

PExponent::PExponent(double p) : p_(p)
{
    if (!(p > 1.0) || !std::isfinite(p))
        fail(ErrorCode::Domain, "exponent p must satisfy p > 1, got " + std::to_string(p));
}

void require_p_at_least_two(PExponent p, const char* what)
{
    if (p.value() < 2.0)
        fail(ErrorCode::Domain, std::string(what) + " requires p >= 2, got " + std::to_string(p.value()));
}

namespace {

double amplitude(double p) { return std::pow(p - 1.0, 1.0 / p); }

// Integrand of integral_0^1 (1 - s^p)^{-1/p} ds after s = 1 - r^q, q = p/(p-1).
// Bounded on [0, 1]; equals q p^{-1/p} at r = 0.
struct Desingularized {
    double p;
    double q;

    double operator()(double r) const
    {
        if (r <= 0.0)
            return q * std::pow(p, -1.0 / p);
        const double rq = std::pow(r, q);
        const double gap = -std::expm1(p * std::log1p(-rq)); // 1 - (1 - r^q)^p
        return q * std::pow(rq / gap, 1.0 / p);
    }
};

} // namespace

double pi_p(PExponent p)
{
    const double pv = p.value();
    return 2.0 * std::numbers::pi * amplitude(pv) / (pv * std::sin(std::numbers::pi / pv));
}

double pi_p_quad(PExponent p, double tol)
{
    if (!(tol > 0.0 && tol < 1e-3))
        fail(ErrorCode::InvalidArgument, "pi_p_quad tolerance must lie in (0, 1e-3)");
    const double pv = p.value();
    const double scale = 2.0 * amplitude(pv);
    Desingularized g{pv, p.conjugate()};
    auto r = quad::integrate(g, 0.0, 1.0, 0.25 * tol / scale, 0.0, 20000);
    return scale * r.value;
}

double arc_sin_p(PExponent p, double y)
{
    const double pv = p.value();
    const double a = amplitude(pv);
    if (y < 0.0)
        return -arc_sin_p(p, -y);
    if (y > a * (1.0 + 1e-14))
        fail(ErrorCode::Domain, "arc_sin_p argument exceeds (p-1)^{1/p}");
    const double z = std::min(y / a, 1.0);
    const double q = p.conjugate();
    const double r_low = std::pow(1.0 - z, 1.0 / q);
    Desingularized g{pv, q};
    return a * quad::integrate(g, r_low, 1.0, 1e-15, 1e-14, 20000).value;
}

double sin_p(PExponent p, double x)
{
    const double pv = p.value();
    const double half_period = pi_p(p);
    if (!std::isfinite(x))
        fail(ErrorCode::Domain, "sin_p argument must be finite");

    double xr = std::fmod(x, 2.0 * half_period);
    if (xr < 0.0)
        xr += 2.0 * half_period;
    double sign = 1.0;
    if (xr >= half_period) {
        xr -= half_period;
        sign = -1.0;
    }
    if (xr > 0.5 * half_period)
        xr = half_period - xr;
    if (xr <= 0.0)
        return 0.0;

    const double a = amplitude(pv);
    if (xr >= 0.5 * half_period)
        return sign * a;

    // Safeguarded Newton on the increasing map F; F'(y) = (1 - y^p/(p-1))^{-1/p}.
    double lo = 0.0;
    double hi = a;
    double y = std::min(xr, a);
    for (int it = 0; it < 200; ++it) {
        const double residual = arc_sin_p(p, y) - xr;
        if (std::abs(residual) <= 1e-14 * std::max(1.0, xr))
            break;
        if (residual > 0.0)
            hi = y;
        else
            lo = y;
        const double slope = std::pow(std::max(1.0 - std::pow(y, pv) / (pv - 1.0), 1e-300), -1.0 / pv);
        double next = y - residual / slope;
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (hi - lo <= 1e-16 * a)
            break;
        y = next;
    }
    return sign * y;
}

double sharp_constant_1d(PExponent p, double length)
{
    if (!(length > 0.0) || !std::isfinite(length))
        fail(ErrorCode::Domain, "interval length must be positive");
    return std::pow(pi_p(p) / length, p.value());
}

} // namespace poincare
