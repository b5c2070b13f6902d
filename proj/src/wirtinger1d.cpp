#include "poincare/wirtinger1d.hpp"

#include "balance.hpp"
#include "poincare/error.hpp"
#include "poincare/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace poincare {

// ---------------------------------------------------------------------------
// Weights

Weight1D Weight1D::exponential(double length, double kappa)
{
    if (!(length > 0.0) || !std::isfinite(length) || !std::isfinite(kappa))
        fail(ErrorCode::InvalidArgument, "exponential weight needs a positive length and finite kappa");
    Weight1D w;
    w.kind_ = Kind::Exponential;
    w.length_ = length;
    w.kappa_ = kappa;
    w.label_ = "exp:" + std::to_string(kappa);
    return w;
}

Weight1D Weight1D::log_linear_spline(std::vector<double> knots, std::vector<double> log_values)
{
    if (knots.size() != log_values.size() || knots.size() < 2)
        fail(ErrorCode::InvalidArgument, "spline weight needs at least two knots with matching values");
    if (knots.front() != 0.0)
        fail(ErrorCode::InvalidArgument, "spline weight knots must start at 0");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!std::isfinite(knots[i]) || !std::isfinite(log_values[i]))
            fail(ErrorCode::InvalidArgument, "non-finite spline knot or log value");
        if (i > 0 && !(knots[i] > knots[i - 1]))
            fail(ErrorCode::InvalidArgument, "spline knots must be strictly increasing");
    }
    Weight1D w;
    w.kind_ = Kind::LogLinearSpline;
    w.length_ = knots.back();
    w.knots_ = std::move(knots);
    w.log_values_ = std::move(log_values);
    w.label_ = "spline";
    return w;
}

Weight1D Weight1D::smooth(double length, std::function<double(double)> log_f,
                          std::function<double(double)> dlog_f, std::string label)
{
    if (!(length > 0.0) || !log_f || !dlog_f)
        fail(ErrorCode::InvalidArgument, "smooth weight needs a positive length and both callables");
    Weight1D w;
    w.kind_ = Kind::Smooth;
    w.length_ = length;
    w.log_f_ = std::move(log_f);
    w.dlog_f_ = std::move(dlog_f);
    w.label_ = std::move(label);
    return w;
}

double Weight1D::log_f(double x) const
{
    switch (kind_) {
    case Kind::Exponential:
        return kappa_ * x;
    case Kind::LogLinearSpline: {
        if (x <= knots_.front())
            return log_values_.front();
        if (x >= knots_.back())
            return log_values_.back();
        auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
        const double s = (x - knots_[i]) / (knots_[i + 1] - knots_[i]);
        return log_values_[i] + s * (log_values_[i + 1] - log_values_[i]);
    }
    case Kind::Smooth:
        return log_f_(x);
    }
    return 0.0;
}

double Weight1D::dlog_f(double x) const
{
    switch (kind_) {
    case Kind::Exponential:
        return kappa_;
    case Kind::LogLinearSpline: {
        auto it = std::lower_bound(knots_.begin(), knots_.end(), x);
        std::size_t i = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
        i = std::min(i, knots_.size() - 2);
        return (log_values_[i + 1] - log_values_[i]) / (knots_[i + 1] - knots_[i]);
    }
    case Kind::Smooth:
        return dlog_f_(x);
    }
    return 0.0;
}

std::vector<double> Weight1D::kinks() const
{
    if (kind_ != Kind::LogLinearSpline)
        return {};
    return {knots_.begin() + 1, knots_.end() - 1};
}

bool Weight1D::is_log_concave() const
{
    switch (kind_) {
    case Kind::Exponential:
        return true;
    case Kind::LogLinearSpline: {
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
            const double s = (log_values_[i + 1] - log_values_[i]) / (knots_[i + 1] - knots_[i]);
            if (s > prev + 1e-12 * std::max(1.0, std::abs(prev)))
                return false;
            prev = s;
        }
        return true;
    }
    case Kind::Smooth: {
        double prev = dlog_f_(0.0);
        for (int i = 1; i <= 1000; ++i) {
            const double s = dlog_f_(length_ * i / 1000.0);
            if (s > prev + 1e-12 * std::max(1.0, std::abs(prev)))
                return false;
            prev = s;
        }
        return true;
    }
    }
    return false;
}

double SampledFunction::operator()(double x) const
{
    if (xs.empty())
        return 0.0;
    if (x <= xs.front())
        return us.front();
    if (x >= xs.back())
        return us.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
    const double s = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return us[i] + s * (us[i + 1] - us[i]);
}

// ---------------------------------------------------------------------------
// Shooting

namespace {

constexpr int kSegments = 2000;
constexpr double kRelTol = 1e-11;
constexpr double kAbsTol = 1e-13;

struct State {
    double u;
    double phi;
};

struct SignChange {
    double xa, ua, da, xb, ub, db;
};

struct Trajectory {
    State end{};
    int zeros = 0;
    bool stopped_early = false;
    std::vector<double> xs;
    std::vector<double> us;
    std::vector<SignChange> changes;
};

class Shooter {
public:
    Shooter(const Weight1D& w, double p) : w_(w), p_(p)
    {
        const double L = w.length();
        for (int i = 0; i <= kSegments; ++i)
            grid_.push_back(L * i / kSegments);
        for (double k : w.kinks())
            grid_.push_back(k);
        std::sort(grid_.begin(), grid_.end());
        grid_.erase(std::unique(grid_.begin(), grid_.end()), grid_.end());
    }

    double flux_to_slope(double phi) const
    {
        return std::copysign(std::pow(std::abs(phi), 1.0 / (p_ - 1.0)), phi);
    }

    // Integrates from x = 0. stop_after_zeros < 0 disables early exit.
    Trajectory run(double lambda, State init, int stop_after_zeros, bool record) const
    {
        Trajectory tr;
        State y = init;
        int last_sign = y.u > 0 ? 1 : (y.u < 0 ? -1 : 0);
        double h = (grid_[1] - grid_[0]) * 1e-3;
        const double min_step = 1e-15 * w_.length();
        if (record) {
            tr.xs.push_back(grid_[0]);
            tr.us.push_back(y.u);
        }

        for (std::size_t seg = 0; seg + 1 < grid_.size(); ++seg) {
            const double a = grid_[seg];
            const double b = grid_[seg + 1];
            const bool piecewise = w_.kind() == Weight1D::Kind::LogLinearSpline;
            const double seg_slope = piecewise ? w_.dlog_f(0.5 * (a + b)) : 0.0;
            auto rhs = [&](double x, const State& s) {
                const double dh = piecewise ? seg_slope : w_.dlog_f(x);
                const double au = std::abs(s.u);
                return State{flux_to_slope(s.phi),
                             -lambda * std::pow(au, p_ - 2.0) * s.u - dh * s.phi};
            };

            double x = a;
            h = std::min(h, b - a);
            State k1 = rhs(x, y);
            while (x < b) {
                const bool last = x + h >= b;
                const double step = last ? b - x : h;
                State k2 = rhs(x + step / 5, {y.u + step * (k1.u / 5), y.phi + step * (k1.phi / 5)});
                State k3 = rhs(x + 3 * step / 10,
                               {y.u + step * (3 * k1.u / 40 + 9 * k2.u / 40),
                                y.phi + step * (3 * k1.phi / 40 + 9 * k2.phi / 40)});
                State k4 = rhs(x + 4 * step / 5,
                               {y.u + step * (44 * k1.u / 45 - 56 * k2.u / 15 + 32 * k3.u / 9),
                                y.phi + step * (44 * k1.phi / 45 - 56 * k2.phi / 15 + 32 * k3.phi / 9)});
                State k5 = rhs(x + 8 * step / 9,
                               {y.u + step * (19372 * k1.u / 6561 - 25360 * k2.u / 2187 +
                                              64448 * k3.u / 6561 - 212 * k4.u / 729),
                                y.phi + step * (19372 * k1.phi / 6561 - 25360 * k2.phi / 2187 +
                                                64448 * k3.phi / 6561 - 212 * k4.phi / 729)});
                State k6 = rhs(x + step,
                               {y.u + step * (9017 * k1.u / 3168 - 355 * k2.u / 33 + 46732 * k3.u / 5247 +
                                              49 * k4.u / 176 - 5103 * k5.u / 18656),
                                y.phi + step * (9017 * k1.phi / 3168 - 355 * k2.phi / 33 +
                                                46732 * k3.phi / 5247 + 49 * k4.phi / 176 -
                                                5103 * k5.phi / 18656)});
                State yn{y.u + step * (35 * k1.u / 384 + 500 * k3.u / 1113 + 125 * k4.u / 192 -
                                       2187 * k5.u / 6784 + 11 * k6.u / 84),
                         y.phi + step * (35 * k1.phi / 384 + 500 * k3.phi / 1113 + 125 * k4.phi / 192 -
                                         2187 * k5.phi / 6784 + 11 * k6.phi / 84)};
                const double xn = last ? b : x + step;
                State k7 = rhs(xn, yn);
                auto err_of = [&](double c1, double c3, double c4, double c5, double c6, double c7) {
                    return step * (71 * c1 / 57600 - 71 * c3 / 16695 + 71 * c4 / 1920 -
                                   17253 * c5 / 339200 + 22 * c6 / 525 - c7 / 40);
                };
                const double eu = err_of(k1.u, k3.u, k4.u, k5.u, k6.u, k7.u);
                const double ep = err_of(k1.phi, k3.phi, k4.phi, k5.phi, k6.phi, k7.phi);
                const double su = kAbsTol + kRelTol * std::max(std::abs(y.u), std::abs(yn.u));
                const double sp = kAbsTol + kRelTol * std::max(std::abs(y.phi), std::abs(yn.phi));
                const double err = std::sqrt(0.5 * ((eu / su) * (eu / su) + (ep / sp) * (ep / sp)));
                if (!std::isfinite(err) || !std::isfinite(yn.u) || !std::isfinite(yn.phi)) {
                    h = 0.25 * step;
                    if (h < min_step)
                        fail(ErrorCode::StepUnderflow, "shooting integrator produced non-finite values");
                    continue;
                }
                const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
                if (err > 1.0) {
                    h = step * std::max(factor, 0.1);
                    if (h < min_step)
                        fail(ErrorCode::StepUnderflow, "shooting step size underflow");
                    continue;
                }

                const int sign = yn.u > 0 ? 1 : (yn.u < 0 ? -1 : 0);
                if (sign != 0) {
                    if (last_sign != 0 && sign != last_sign) {
                        ++tr.zeros;
                        tr.changes.push_back({x, y.u, k1.u, xn, yn.u, k7.u});
                    }
                    last_sign = sign;
                }
                x = xn;
                y = yn;
                k1 = k7;
                if (!last)
                    h = step * factor;
                if (stop_after_zeros >= 0 && tr.zeros >= stop_after_zeros) {
                    tr.end = y;
                    tr.stopped_early = true;
                    return tr;
                }
            }
            if (record) {
                tr.xs.push_back(b);
                tr.us.push_back(y.u);
            }
        }
        tr.end = y;
        return tr;
    }

private:
    const Weight1D& w_;
    double p_;
    std::vector<double> grid_;
};

// Root of the cubic Hermite interpolant on a recorded sign change.
double hermite_zero(const SignChange& c)
{
    const double len = c.xb - c.xa;
    auto value = [&](double x) {
        const double s = (x - c.xa) / len;
        const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
        const double h10 = s * (1 - s) * (1 - s);
        const double h01 = s * s * (3 - 2 * s);
        const double h11 = s * s * (s - 1);
        return h00 * c.ua + h10 * len * c.da + h01 * c.ub + h11 * len * c.db;
    };
    double lo = c.xa;
    double hi = c.xb;
    const bool rising = c.ub > c.ua;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((value(mid) < 0.0) == rising)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

enum class Boundary { Neumann, Dirichlet };

EigenResult1D solve(const Weight1D& w, PExponent p, double tol, Boundary bc)
{
    if (!(tol > 0.0))
        fail(ErrorCode::InvalidArgument, "tolerance must be positive");
    const Shooter shooter(w, p.value());
    const State init = bc == Boundary::Neumann ? State{1.0, 0.0} : State{0.0, 1.0};
    // Neumann: past the first nontrivial eigenvalue once u has two zeros, or one
    // zero and is already turning back (phi(L) > 0). Dirichlet: once u vanishes.
    const int stop_zeros = bc == Boundary::Neumann ? 2 : 1;
    auto past = [&](double lambda) {
        const Trajectory tr = shooter.run(lambda, init, stop_zeros, false);
        if (bc == Boundary::Neumann)
            return tr.zeros >= 2 || (tr.zeros == 1 && tr.end.phi > 0.0);
        return tr.zeros >= 1 || tr.end.u <= 0.0;
    };

    int iterations = 0;
    double lo = 0.5 * sharp_constant_1d(p, w.length());
    for (; past(lo); ++iterations) {
        lo *= 0.5;
        if (iterations > 80)
            fail(ErrorCode::BracketFailure, "no lower lambda bracket found");
    }
    double hi = 2.0 * lo;
    for (; !past(hi); ++iterations) {
        lo = hi;
        hi *= 2.0;
        if (iterations > 80)
            fail(ErrorCode::BracketFailure, "no upper lambda bracket found");
    }
    const double width_tol = std::max(tol, 4e-16);
    while (hi - lo > width_tol * lo) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        (past(mid) ? hi : lo) = mid;
        ++iterations;
    }

    EigenResult1D out;
    out.lambda = 0.5 * (lo + hi);
    out.iterations = iterations;
    Trajectory tr = shooter.run(out.lambda, init, -1, true);
    out.eigenfunction.xs = std::move(tr.xs);
    out.eigenfunction.us = std::move(tr.us);
    if (bc == Boundary::Neumann) {
        if (tr.zeros != 1)
            fail(ErrorCode::BracketFailure,
                 "Neumann eigenfunction has " + std::to_string(tr.zeros) + " sign changes, expected 1");
        out.interior_zero = hermite_zero(tr.changes.front());
        out.boundary_residual = std::abs(tr.end.phi);
    } else {
        out.boundary_residual = std::abs(tr.end.u);
    }
    return out;
}

// Four-point Gauss-Legendre rule on [0, 1].
constexpr std::array<double, 4> kGaussNodes = {0.06943184420297371, 0.33000947820757187,
                                               0.66999052179242813, 0.93056815579702629};
constexpr std::array<double, 4> kGaussWeights = {0.17392742256872693, 0.32607257743127307,
                                                 0.32607257743127307, 0.17392742256872693};

} // namespace

EigenResult1D neumann_first_nontrivial(const Weight1D& w, PExponent p, double tol)
{
    return solve(w, p, tol, Boundary::Neumann);
}

EigenResult1D dirichlet_first(const Weight1D& w, PExponent p, double tol)
{
    return solve(w, p, tol, Boundary::Dirichlet);
}

GapRecord neumann_dirichlet_gap(double kappa, PExponent p, double length, double tol)
{
    const Weight1D w = Weight1D::exponential(length, kappa);
    const double ln = neumann_first_nontrivial(w, p, tol).lambda;
    const double ld = dirichlet_first(w, p, tol).lambda;
    return {ln, ld, std::abs(ln - ld) / ld};
}

// ---------------------------------------------------------------------------
// Variational solver

namespace {

class Discrete1D {
public:
    Discrete1D(const Weight1D& w, double p, std::size_t n) : p_(p), n_(n)
    {
        const double L = w.length();
        h_ = L / static_cast<double>(n - 1);
        elem_mass_.resize(n - 1);
        qf_.resize((n - 1) * 4);
        for (std::size_t e = 0; e + 1 < n; ++e) {
            double mass = 0.0;
            for (int q = 0; q < 4; ++q) {
                const double fq = w.f((static_cast<double>(e) + kGaussNodes[q]) * h_);
                qf_[e * 4 + q] = kGaussWeights[q] * h_ * fq;
                mass += qf_[e * 4 + q];
            }
            elem_mass_[e] = mass;
        }
    }

    double h() const { return h_; }

    double energy(const std::vector<double>& u) const
    {
        double e = 0.0;
        for (std::size_t k = 0; k + 1 < n_; ++k)
            e += std::pow(std::abs((u[k + 1] - u[k]) / h_), p_) * elem_mass_[k];
        return e;
    }

    template <class F>
    void for_each_quad(const std::vector<double>& u, F&& fn) const
    {
        for (std::size_t e = 0; e + 1 < n_; ++e)
            for (int q = 0; q < 4; ++q) {
                const double s = kGaussNodes[q];
                fn(e, s, qf_[e * 4 + q], u[e] + s * (u[e + 1] - u[e]));
            }
    }

    double moment(const std::vector<double>& u, double t) const
    {
        double m = 0.0;
        for_each_quad(u, [&](std::size_t, double, double wq, double uq) {
            const double d = uq - t;
            m += wq * std::pow(std::abs(d), p_ - 2.0) * d;
        });
        return m;
    }

    double moment_slope(const std::vector<double>& u, double t) const
    {
        double m = 0.0;
        for_each_quad(u, [&](std::size_t, double, double wq, double uq) {
            m -= wq * (p_ - 1.0) * std::pow(std::abs(uq - t), p_ - 2.0);
        });
        return m;
    }

    double denominator(const std::vector<double>& u, double t) const
    {
        double d = 0.0;
        for_each_quad(u, [&](std::size_t, double, double wq, double uq) { d += wq * std::pow(std::abs(uq - t), p_); });
        return d;
    }

    double balance(const std::vector<double>& u) const
    {
        const auto [mn, mx] = std::minmax_element(u.begin(), u.end());
        if (*mx - *mn <= 0.0)
            return *mn;
        const double scale = denominator(u, 0.5 * (*mn + *mx)) / std::max(*mx - *mn, 1e-300);
        return detail::solve_balance([&](double t) { return moment(u, t); },
                                     [&](double t) { return moment_slope(u, t); }, *mn, *mx,
                                     1e-15 * scale);
    }

    // Gradient of E/D with D = min_t integral f|u - t|^p (envelope at the balance shift).
    std::vector<double> gradient(const std::vector<double>& u, double t, double ratio, double denom) const
    {
        std::vector<double> g(n_, 0.0);
        for (std::size_t k = 0; k + 1 < n_; ++k) {
            const double s = (u[k + 1] - u[k]) / h_;
            const double c = p_ * std::pow(std::abs(s), p_ - 2.0) * s * elem_mass_[k] / h_;
            g[k + 1] += c;
            g[k] -= c;
        }
        for_each_quad(u, [&](std::size_t e, double s, double wq, double uq) {
            const double d = uq - t;
            const double c = -ratio * wq * p_ * std::pow(std::abs(d), p_ - 2.0) * d;
            g[e] += c * (1.0 - s);
            g[e + 1] += c * s;
        });
        for (double& v : g)
            v /= denom;
        return g;
    }

    // Solves (K + M) x = r for the unweighted P1 stiffness and mass matrices.
    std::vector<double> precondition(const std::vector<double>& r) const
    {
        const double kd = 1.0 / h_;
        const double md = h_ / 6.0;
        std::vector<double> diag(n_), off(n_ - 1, -kd + md), x(r);
        for (std::size_t i = 0; i < n_; ++i) {
            const bool end = i == 0 || i + 1 == n_;
            diag[i] = (end ? 1.0 : 2.0) * (kd + 2.0 * md);
        }
        std::vector<double> c(n_ - 1);
        c[0] = off[0] / diag[0];
        x[0] /= diag[0];
        for (std::size_t i = 1; i < n_; ++i) {
            const double m = diag[i] - off[i - 1] * c[i - 1];
            if (i + 1 < n_)
                c[i] = off[i] / m;
            x[i] = (x[i] - off[i - 1] * x[i - 1]) / m;
        }
        for (std::size_t i = n_ - 1; i-- > 0;)
            x[i] -= c[i] * x[i + 1];
        return x;
    }

private:
    double p_;
    std::size_t n_;
    double h_;
    std::vector<double> elem_mass_;
    std::vector<double> qf_;
};

} // namespace

Rayleigh1DResult rayleigh_min_1d(const Weight1D& w, PExponent p, std::size_t n_nodes, int max_iters)
{
    if (n_nodes < 16)
        fail(ErrorCode::InvalidArgument, "rayleigh_min_1d needs at least 16 nodes");
    const double pv = p.value();
    const Discrete1D disc(w, pv, n_nodes);
    const double L = w.length();

    Rayleigh1DResult out;
    out.nodes.resize(n_nodes);
    std::vector<double> u(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        out.nodes[i] = disc.h() * static_cast<double>(i);
        u[i] = out.nodes[i] - 0.5 * L;
    }

    // Shift to balance and scale to unit weighted p-norm.
    auto normalize = [&](std::vector<double>& v) {
        const double t = disc.balance(v);
        for (double& x : v)
            x -= t;
        const double d = disc.denominator(v, 0.0);
        const double s = std::pow(d, -1.0 / pv);
        for (double& x : v)
            x *= s;
    };
    normalize(u);
    double ratio = disc.energy(u);
    double step = 1.0;

    for (int it = 0; it < max_iters; ++it) {
        out.iterations = it + 1;
        const std::vector<double> g = disc.gradient(u, 0.0, ratio, 1.0);
        const std::vector<double> d = disc.precondition(g);
        double slope = 0.0;
        for (std::size_t i = 0; i < n_nodes; ++i)
            slope += g[i] * d[i];
        if (std::sqrt(std::max(slope, 0.0)) <= 1e-10 * ratio) {
            out.converged = true;
            break;
        }
        step = std::min(2.0 * step, 1e6);
        bool accepted = false;
        while (step > 1e-20) {
            std::vector<double> trial(n_nodes);
            for (std::size_t i = 0; i < n_nodes; ++i)
                trial[i] = u[i] - step * d[i];
            normalize(trial);
            double r = disc.energy(trial);
            if (r <= ratio - 1e-4 * step * slope) {
                // Keep halving while that still lowers the quotient: an accepted
                // step can leave the high-frequency error undamped.
                std::vector<double> half(n_nodes);
                while (step > 1e-20) {
                    for (std::size_t i = 0; i < n_nodes; ++i)
                        half[i] = u[i] - 0.5 * step * d[i];
                    normalize(half);
                    const double rh = disc.energy(half);
                    if (!(rh < r))
                        break;
                    trial.swap(half);
                    r = rh;
                    step *= 0.5;
                }
                u = std::move(trial);
                ratio = r;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            out.converged = true; // no further decrease representable
            break;
        }
    }
    out.lambda_upper = ratio;
    out.u = std::move(u);
    return out;
}

// ---------------------------------------------------------------------------
// Folding and quotients

SampledFunction fold_to_dirichlet(const SampledFunction& v, double x0, double length, std::size_t samples)
{
    if (v.xs.size() < 2 || samples < 2)
        fail(ErrorCode::InvalidArgument, "fold_to_dirichlet needs sampled input");
    const double v0 = v(0.0);
    const double vL = v(length);
    if (!(x0 > 0.0 && x0 < length) || v0 == 0.0 || vL == 0.0 || v0 * vL > 0.0)
        fail(ErrorCode::Domain, "fold_to_dirichlet needs a bracketed interior zero");
    SampledFunction w;
    w.xs.resize(samples);
    w.us.resize(samples);
    const double seam = length - x0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = length * static_cast<double>(i) / static_cast<double>(samples - 1);
        w.xs[i] = x;
        w.us[i] = x <= seam ? std::abs(v(x + x0) / vL) : std::abs(v(x - length + x0) / v0);
    }
    w.us.front() = 0.0;
    w.us.back() = 0.0;
    return w;
}

double weighted_rayleigh_quotient(const Weight1D& w, const SampledFunction& u, PExponent p)
{
    const double pv = p.value();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k + 1 < u.xs.size(); ++k) {
        const double a = u.xs[k];
        const double len = u.xs[k + 1] - a;
        const double slope = (u.us[k + 1] - u.us[k]) / len;
        for (int q = 0; q < 4; ++q) {
            const double s = kGaussNodes[q];
            const double wf = kGaussWeights[q] * len * w.f(a + s * len);
            num += wf * std::pow(std::abs(slope), pv);
            den += wf * std::pow(std::abs(u.us[k] + s * (u.us[k + 1] - u.us[k])), pv);
        }
    }
    return num / den;
}

ExpIdentityRecord exp_identity_check(const PiecewiseLinear& u, double kappa, PExponent p, double tol)
{
    if (!(tol > 0.0))
        fail(ErrorCode::InvalidArgument, "tolerance must be positive");
    const double pv = p.value();
    const double c = kappa / pv;
    std::vector<double> cuts(u.breakpoints().begin(), u.breakpoints().end());

    auto slope_at = [&](double x) {
        auto xs = u.breakpoints();
        auto it = std::upper_bound(xs.begin(), xs.end(), x);
        std::size_t i = it == xs.begin() ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
        i = std::min(i, u.pieces() - 1);
        return u.slope(i);
    };
    auto v = [&](double x) { return u(x) * std::exp(c * x); };
    auto dv = [&](double x) { return (slope_at(x) + c * u(x)) * std::exp(c * x); };

    ExpIdentityRecord rec{};
    rec.lhs_energy = quad::integrate_panels(
        [&](double x) { return std::exp(kappa * x) * std::pow(std::abs(slope_at(x)), pv); }, cuts, tol).value;
    rec.rhs_energy = quad::integrate_panels(
        [&](double x) { return std::pow(std::abs(dv(x) - c * v(x)), pv); }, cuts, tol).value;
    rec.lhs_norm = quad::integrate_panels(
        [&](double x) { return std::exp(kappa * x) * std::pow(std::abs(u(x)), pv); }, cuts, tol).value;
    rec.rhs_norm = quad::integrate_panels(
        [&](double x) { return std::pow(std::abs(v(x)), pv); }, cuts, tol).value;
    return rec;
}

} // namespace poincare
