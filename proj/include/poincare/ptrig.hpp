#pragma once

// p-trigonometric special functions: the generalized pi, sin_p and the sharp
// one-dimensional Poincare-Wirtinger constant (pi_p / L)^p.

namespace poincare {

/// Exponent of the p-Laplacian. Construction rejects p <= 1.
class PExponent {
public:
    explicit PExponent(double p);

    double value() const noexcept { return p_; }
    operator double() const noexcept { return p_; }

    /// Conjugate exponent p / (p - 1).
    double conjugate() const noexcept { return p_ / (p_ - 1.0); }

private:
    double p_;
};

/// Throws a domain error unless p >= 2 (for results only guaranteed in that range).
void require_p_at_least_two(PExponent p, const char* what);

/// Closed form 2 pi (p-1)^{1/p} / (p sin(pi/p)).
double pi_p(PExponent p);

/// 2 * integral_0^{(p-1)^{1/p}} (1 - t^p/(p-1))^{-1/p} dt, integrated numerically.
/// The endpoint singularity is removed by t = (p-1)^{1/p} (1 - r^{p/(p-1)}).
/// Requires 0 < tol < 1e-3.
double pi_p_quad(PExponent p, double tol);

/// Inverse of F(y) = integral_0^y (1 - s^p/(p-1))^{-1/p} ds on [0, pi_p/2],
/// extended by sin_p(pi_p - x) = sin_p(x) and odd 2 pi_p periodicity.
/// Maximum value (p-1)^{1/p} at x = pi_p/2.
double sin_p(PExponent p, double x);

/// F(y) above, for 0 <= y <= (p-1)^{1/p}.
double arc_sin_p(PExponent p, double y);

/// (pi_p / L)^p, the first nontrivial Neumann (and first Dirichlet)
/// p-Laplacian eigenvalue of an interval of length L.
double sharp_constant_1d(PExponent p, double length);

} // namespace poincare
