#include "poincare/eig2d.hpp"

#include "balance.hpp"
#include "poincare/error.hpp"
#include "poincare/quadrature.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <utility>

namespace poincare {

// ---------------------------------------------------------------------------
// Meshing

double TriMesh::area() const
{
    double s = 0.0;
    for (const auto& t : triangles)
        s += 0.5 * cross(nodes[t[1]] - nodes[t[0]], nodes[t[2]] - nodes[t[0]]);
    return s;
}

double TriMesh::max_edge() const
{
    double m = 0.0;
    for (const auto& t : triangles)
        for (int k = 0; k < 3; ++k)
            m = std::max(m, norm(nodes[t[(k + 1) % 3]] - nodes[t[k]]));
    return m;
}

namespace {

class NodeIndex {
public:
    explicit NodeIndex(double tol) : tol_(tol) {}

    int insert(Point q, std::vector<Point>& nodes)
    {
        const long long kx = std::llround(q.x / tol_);
        const long long ky = std::llround(q.y / tol_);
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = index_.find({kx + dx, ky + dy});
                if (it != index_.end() && norm(nodes[it->second] - q) <= tol_)
                    return it->second;
            }
        const int id = static_cast<int>(nodes.size());
        nodes.push_back(q);
        index_.emplace(std::make_pair(kx, ky), id);
        return id;
    }

private:
    double tol_;
    std::map<std::pair<long long, long long>, int> index_;
};

} // namespace

TriMesh mesh(const ConvexPolygon& poly, double h)
{
    if (!(h > 0.0) || !std::isfinite(h))
        fail(ErrorCode::InvalidArgument, "mesh pitch must be positive");
    if (!(h < diameter(poly)))
        fail(ErrorCode::Degenerate, "mesh pitch must be smaller than the polygon diameter");

    auto v = poly.vertices();
    double xmin = v[0].x, xmax = v[0].x, ymin = v[0].y, ymax = v[0].y;
    for (const Point& q : v) {
        xmin = std::min(xmin, q.x);
        xmax = std::max(xmax, q.x);
        ymin = std::min(ymin, q.y);
        ymax = std::max(ymax, q.y);
    }
    const long nx = std::max(1L, static_cast<long>(std::ceil((xmax - xmin) / h - 1e-9)));
    const long ny = std::max(1L, static_cast<long>(std::ceil((ymax - ymin) / h - 1e-9)));

    TriMesh m;
    NodeIndex index(1e-9 * h);
    const double min_area = 1e-12 * h * h;
    auto add_fan = [&](const std::vector<Point>& loop) {
        std::vector<int> ids;
        ids.reserve(loop.size());
        for (const Point& q : loop)
            ids.push_back(index.insert(q, m.nodes));
        for (std::size_t k = 1; k + 1 < ids.size(); ++k) {
            const std::array<int, 3> tri{ids[0], ids[k], ids[k + 1]};
            const double a = 0.5 * cross(m.nodes[tri[1]] - m.nodes[tri[0]], m.nodes[tri[2]] - m.nodes[tri[0]]);
            if (a > min_area)
                m.triangles.push_back(tri);
        }
    };

    for (long j = 0; j < ny; ++j) {
        for (long i = 0; i < nx; ++i) {
            const double x0 = xmin + h * static_cast<double>(i);
            const double y0 = ymin + h * static_cast<double>(j);
            const double x1 = i + 1 == nx ? std::max(xmax, x0 + h) : xmin + h * static_cast<double>(i + 1);
            const double y1 = j + 1 == ny ? std::max(ymax, y0 + h) : ymin + h * static_cast<double>(j + 1);
            const std::vector<Point> cell{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
            if (std::all_of(cell.begin(), cell.end(), [&](Point q) { return poly.contains(q); })) {
                add_fan(cell);
                continue;
            }
            std::optional<ConvexPolygon> piece = ConvexPolygon(cell);
            for (std::size_t k = 0; k < v.size() && piece; ++k) {
                const Point e = v[(k + 1) % v.size()] - v[k];
                const Point n = (1.0 / norm(e)) * Point{e.y, -e.x};
                piece = clip(*piece, n, dot(n, v[k]), Side::Below);
            }
            if (piece) {
                auto pv = piece->vertices();
                add_fan(std::vector<Point>(pv.begin(), pv.end()));
            }
        }
    }

    // Drop nodes only touched by discarded slivers.
    std::vector<int> remap(m.nodes.size(), -1);
    std::vector<Point> used;
    for (auto& t : m.triangles)
        for (int& id : t) {
            if (remap[id] < 0) {
                remap[id] = static_cast<int>(used.size());
                used.push_back(m.nodes[id]);
            }
            id = remap[id];
        }
    m.nodes = std::move(used);
    if (m.triangles.empty())
        fail(ErrorCode::Degenerate, "mesh has no triangles");

    const double btol = 1e-9 * h;
    m.boundary.assign(m.nodes.size(), 0);
    for (std::size_t i = 0; i < m.nodes.size(); ++i)
        for (std::size_t k = 0; k < v.size(); ++k) {
            const Point e = v[(k + 1) % v.size()] - v[k];
            if (std::abs(cross(e, m.nodes[i] - v[k])) <= btol * norm(e)) {
                m.boundary[i] = 1;
                break;
            }
        }
    return m;
}

// ---------------------------------------------------------------------------
// Discrete Rayleigh quotient

namespace {

// Six-point degree-4 triangle rule.
constexpr double kQa = 0.445948490915965;
constexpr double kQb = 0.091576213509771;
constexpr double kWa = 0.223381589678011;
constexpr double kWb = 0.109951743655322;

constexpr std::array<std::array<double, 3>, 6> kBary = {{
    {kQa, kQa, 1.0 - 2.0 * kQa},
    {kQa, 1.0 - 2.0 * kQa, kQa},
    {1.0 - 2.0 * kQa, kQa, kQa},
    {kQb, kQb, 1.0 - 2.0 * kQb},
    {kQb, 1.0 - 2.0 * kQb, kQb},
    {1.0 - 2.0 * kQb, kQb, kQb},
}};
constexpr std::array<double, 6> kW = {kWa, kWa, kWa, kWb, kWb, kWb};

// Powers of |d| with integer exponents unrolled.
class Powers {
public:
    explicit Powers(double p) : p_(p), ip_(p == std::floor(p) && p <= 6.0 ? static_cast<int>(p) : 0) {}

    double abs_pow(double d) const // |d|^p
    {
        const double a = std::abs(d);
        switch (ip_) {
        case 2: return a * a;
        case 3: return a * a * a;
        case 4: return (a * a) * (a * a);
        default: return std::pow(a, p_);
        }
    }
    double abs_pow_m2(double d) const // |d|^{p-2}
    {
        const double a = std::abs(d);
        switch (ip_) {
        case 2: return 1.0;
        case 3: return a;
        case 4: return a * a;
        default: return a == 0.0 ? 0.0 : std::pow(a, p_ - 2.0);
        }
    }
    // |g|^p and |g|^{p-2} from the squared norm.
    double sq_pow(double g2) const
    {
        switch (ip_) {
        case 2: return g2;
        case 3: return g2 * std::sqrt(g2);
        case 4: return g2 * g2;
        default: return std::pow(g2, 0.5 * p_);
        }
    }
    double sq_pow_m2(double g2) const
    {
        switch (ip_) {
        case 2: return 1.0;
        case 3: return std::sqrt(g2);
        case 4: return g2;
        default: return g2 == 0.0 ? 0.0 : std::pow(g2, 0.5 * p_ - 1.0);
        }
    }

private:
    double p_;
    int ip_;
};

class Discrete2D {
public:
    Discrete2D(const TriMesh& m, double p) : mesh_(m), p_(p), pw_(p)
    {
        const std::size_t nt = m.triangles.size();
        area_.resize(nt);
        grads_.resize(nt);
        for (std::size_t k = 0; k < nt; ++k) {
            const auto& t = m.triangles[k];
            const Point a = m.nodes[t[0]], b = m.nodes[t[1]], c = m.nodes[t[2]];
            const double twice = cross(b - a, c - a);
            area_[k] = 0.5 * twice;
            grads_[k] = {Point{b.y - c.y, c.x - b.x}, Point{c.y - a.y, a.x - c.x}, Point{a.y - b.y, b.x - a.x}};
            for (Point& g : grads_[k])
                g = (1.0 / twice) * g;
        }
        factor_preconditioner();
    }

    std::size_t size() const { return mesh_.nodes.size(); }

    double energy(const std::vector<double>& u) const
    {
        double s = 0.0;
        for (std::size_t k = 0; k < area_.size(); ++k) {
            const Point g = grad(k, u);
            s += area_[k] * pw_.sq_pow(dot(g, g));
        }
        return s;
    }

    template <class Fn>
    double quad_sum(const std::vector<double>& u, Fn&& fn) const
    {
        double s = 0.0;
        for (std::size_t k = 0; k < area_.size(); ++k) {
            const auto& t = mesh_.triangles[k];
            double local = 0.0;
            for (std::size_t q = 0; q < kW.size(); ++q) {
                const double uq = kBary[q][0] * u[t[0]] + kBary[q][1] * u[t[1]] + kBary[q][2] * u[t[2]];
                local += kW[q] * fn(uq);
            }
            s += area_[k] * local;
        }
        return s;
    }

    double denominator(const std::vector<double>& u, double t) const
    {
        return quad_sum(u, [&](double uq) { return pw_.abs_pow(uq - t); });
    }
    double moment(const std::vector<double>& u, double t) const
    {
        return quad_sum(u, [&](double uq) { return pw_.abs_pow_m2(uq - t) * (uq - t); });
    }
    double moment_scale(const std::vector<double>& u, double t) const
    {
        return quad_sum(u, [&](double uq) { return pw_.abs_pow_m2(uq - t) * std::abs(uq - t); });
    }
    double moment_slope(const std::vector<double>& u, double t) const
    {
        return -(p_ - 1.0) * quad_sum(u, [&](double uq) { return pw_.abs_pow_m2(uq - t); });
    }

    double balance(const std::vector<double>& u) const
    {
        const auto [lo_it, hi_it] = std::minmax_element(u.begin(), u.end());
        const double lo = *lo_it, hi = *hi_it;
        if (!(hi > lo))
            return lo;
        const double tol = 1e-14 * moment_scale(u, 0.5 * (lo + hi));
        return detail::solve_balance([&](double t) { return moment(u, t); },
                                     [&](double t) { return moment_slope(u, t); }, lo, hi, tol);
    }

    /// Gradient of E - ratio * D at balanced t (the t-derivative of D vanishes there).
    std::vector<double> gradient(const std::vector<double>& u, double t, double ratio) const
    {
        std::vector<double> g(size(), 0.0);
        for (std::size_t k = 0; k < area_.size(); ++k) {
            const auto& tri = mesh_.triangles[k];
            const Point gu = grad(k, u);
            const double coef = p_ * pw_.sq_pow_m2(dot(gu, gu)) * area_[k];
            for (int i = 0; i < 3; ++i)
                g[tri[i]] += coef * dot(gu, grads_[k][i]);
            for (std::size_t q = 0; q < kW.size(); ++q) {
                const double d = kBary[q][0] * u[tri[0]] + kBary[q][1] * u[tri[1]] + kBary[q][2] * u[tri[2]] - t;
                const double c = -ratio * p_ * kW[q] * area_[k] * pw_.abs_pow_m2(d) * d;
                for (int i = 0; i < 3; ++i)
                    g[tri[i]] += c * kBary[q][i];
            }
        }
        return g;
    }

    std::vector<double> precondition(const std::vector<double>& g) const
    {
        Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(g.data(), static_cast<Eigen::Index>(g.size()));
        Eigen::VectorXd x = solver_.solve(rhs);
        return {x.data(), x.data() + x.size()};
    }

private:
    Point grad(std::size_t k, const std::vector<double>& u) const
    {
        const auto& t = mesh_.triangles[k];
        return u[t[0]] * grads_[k][0] + u[t[1]] * grads_[k][1] + u[t[2]] * grads_[k][2];
    }

    void factor_preconditioner()
    {
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(9 * area_.size());
        for (std::size_t k = 0; k < area_.size(); ++k) {
            const auto& t = mesh_.triangles[k];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    const double stiff = area_[k] * dot(grads_[k][i], grads_[k][j]);
                    const double mass = area_[k] * (i == j ? 2.0 : 1.0) / 12.0;
                    trips.emplace_back(t[i], t[j], stiff + mass);
                }
        }
        const auto n = static_cast<Eigen::Index>(size());
        Eigen::SparseMatrix<double> a(n, n);
        a.setFromTriplets(trips.begin(), trips.end());
        solver_.compute(a);
        if (solver_.info() != Eigen::Success)
            fail(ErrorCode::Degenerate, "preconditioner factorization failed");
    }

    const TriMesh& mesh_;
    double p_;
    Powers pw_;
    std::vector<double> area_;
    std::vector<std::array<Point, 3>> grads_;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver_;
};

} // namespace

EigenResult2D rayleigh_min_2d(const TriMesh& m, PExponent p, double tol, int max_iters)
{
    require_p_at_least_two(p, "rayleigh_min_2d");
    if (!(tol > 0.0))
        fail(ErrorCode::InvalidArgument, "tolerance must be positive");
    const double pv = p.value();
    const Discrete2D disc(m, pv);
    const std::size_t n = disc.size();

    // Start from the projection onto the direction of the farthest boundary pair.
    std::vector<Point> rim;
    for (std::size_t i = 0; i < n; ++i)
        if (m.boundary[i])
            rim.push_back(m.nodes[i]);
    if (rim.size() < 2)
        rim = m.nodes;
    Point a = rim[0], b = rim[1];
    double best = -1.0;
    for (std::size_t i = 0; i < rim.size(); ++i)
        for (std::size_t j = i + 1; j < rim.size(); ++j) {
            const double d = norm(rim[i] - rim[j]);
            if (d > best) {
                best = d;
                a = rim[i];
                b = rim[j];
            }
        }
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i)
        u[i] = dot(m.nodes[i] - a, b - a);

    auto normalize = [&](std::vector<double>& v) {
        const double t = disc.balance(v);
        for (double& x : v)
            x -= t;
        const double s = std::pow(disc.denominator(v, 0.0), -1.0 / pv);
        for (double& x : v)
            x *= s;
    };
    normalize(u);
    double ratio = disc.energy(u);
    double step = 1.0;

    // Armijo backtracking from the previous step length, then doubling (or
    // halving) for as long as the quotient keeps dropping.
    std::vector<double> trial(n), kept(n);
    auto line_search = [&](const std::vector<double>& dir, double slope) {
        auto eval = [&](double s) {
            for (std::size_t i = 0; i < n; ++i)
                trial[i] = u[i] - s * dir[i];
            normalize(trial);
            return disc.energy(trial);
        };
        double s = step;
        double r = eval(s);
        while (!(r <= ratio - 1e-4 * s * slope)) {
            s *= 0.5;
            if (s < 1e-20)
                return false;
            r = eval(s);
        }
        kept.swap(trial);
        auto improve = [&](double factor) {
            bool moved = false;
            for (int k = 0; k < 60; ++k) {
                const double r2 = eval(s * factor);
                if (!(r2 < r))
                    break;
                kept.swap(trial);
                s *= factor;
                r = r2;
                moved = true;
            }
            return moved;
        };
        if (!(s == step && improve(2.0)))
            improve(0.5);
        u.swap(kept);
        ratio = r;
        step = std::min(s, 1e6);
        return true;
    };

    // Preconditioned nonlinear conjugate gradients (Polak-Ribiere, clipped at 0).
    constexpr std::size_t kWindow = 25;
    std::vector<double> history;
    std::vector<double> dir(n), z_prev;
    double gz_prev = 0.0;
    EigenResult2D out;
    for (int it = 0; it < max_iters; ++it) {
        out.iterations = it + 1;
        const std::vector<double> g = disc.gradient(u, 0.0, ratio);
        const std::vector<double> z = disc.precondition(g);
        double gz = 0.0;
        double g_zprev = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            gz += g[i] * z[i];
            if (!z_prev.empty())
                g_zprev += g[i] * z_prev[i];
        }
        out.grad_norm = std::sqrt(std::max(gz, 0.0)) / ratio;
        history.push_back(ratio);
        // Nearly degenerate eigenvalues keep the gradient from shrinking while
        // the quotient itself has settled; the second test catches that.
        const bool settled = history.size() > kWindow &&
                             history[history.size() - 1 - kWindow] - ratio <= tol * tol * ratio;
        if (out.grad_norm <= tol || settled) {
            out.converged = true;
            break;
        }

        const double beta = z_prev.empty() ? 0.0 : std::max(0.0, (gz - g_zprev) / gz_prev);
        double slope = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dir[i] = z[i] + beta * dir[i];
            slope += g[i] * dir[i];
        }
        bool moved = slope > 0.0 && line_search(dir, slope);
        if (!moved && beta > 0.0) {
            dir = z;
            moved = line_search(dir, gz);
        }
        if (!moved)
            break; // best iterate kept, flagged as not converged
        z_prev = z;
        gz_prev = gz;
    }

    out.shift_t = disc.balance(u);
    out.moment_residual = disc.moment(u, out.shift_t);
    out.moment_scale = disc.moment_scale(u, out.shift_t);
    out.mu = ratio;
    out.u = std::move(u);
    return out;
}

BoundReport check_bound(const ConvexPolygon& poly, PExponent p, double h, double tol)
{
    const TriMesh m = mesh(poly, h);
    const EigenResult2D r = rayleigh_min_2d(m, p, tol);
    const double d = diameter(poly);
    const double bound = sharp_constant_1d(p, d);
    return {r.mu, d, bound, r.mu / bound, h, r.shift_t, r.iterations, r.converged};
}

// ---------------------------------------------------------------------------
// Thin slabs

bool SharpnessTable::monotone(double slack) const
{
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].ratio > rows[i - 1].ratio + slack)
            return false;
    return true;
}

bool SharpnessTable::converges() const
{
    if (rows.empty())
        return false;
    const SharpnessRow& last = rows.back();
    return last.ratio <= 1.0 + std::max(0.05, 10.0 * last.h);
}

SharpnessTable thin_slab_sharpness(double d, const std::vector<double>& deltas, PExponent p,
                                   const std::function<double(double)>& h_rule)
{
    if (!(d > 0.0))
        fail(ErrorCode::InvalidArgument, "slab length must be positive");
    SharpnessTable table;
    const double bound = sharp_constant_1d(p, d);
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const double delta = deltas[i];
        if (!(delta > 0.0 && delta < 0.5 * d))
            fail(ErrorCode::InvalidArgument, "slab thickness must lie in (0, d/2)");
        if (i > 0 && !(delta < deltas[i - 1]))
            fail(ErrorCode::InvalidArgument, "slab thicknesses must be decreasing");
        const double h = h_rule ? h_rule(delta) : delta / 5.0;
        const ConvexPolygon rect({{0.0, 0.0}, {d, 0.0}, {d, delta}, {0.0, delta}});
        const EigenResult2D r = rayleigh_min_2d(mesh(rect, h), p);
        table.rows.push_back({delta, h, r.mu, bound, r.mu / bound});
    }
    return table;
}

// ---------------------------------------------------------------------------
// One-dimensional reduction on thin pieces

namespace {

template <class F>
double five_point_derivative(F&& f, double x, double step)
{
    return (f(x - 2.0 * step) - 8.0 * f(x - step) + 8.0 * f(x + step) - f(x + 2.0 * step)) / (12.0 * step);
}

} // namespace

ThinReductionRecord thin_reduction_check(const SlicePiece& piece, const ScalarField& u, PExponent p,
                                         double c2_bound)
{
    if (!(c2_bound > 0.0))
        fail(ErrorCode::InvalidArgument, "second-derivative bound must be positive");
    const ConvexPolygon& poly = piece.polygon;
    const double pv = p.value();
    const Powers pw(pv);
    const Point axis{std::cos(piece.axis_theta), std::sin(piece.axis_theta)};
    const Point across{-axis.y, axis.x};

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    double nlo = lo, nhi = -lo;
    std::vector<double> cuts;
    for (const Point& q : poly.vertices()) {
        lo = std::min(lo, dot(axis, q));
        hi = std::max(hi, dot(axis, q));
        nlo = std::min(nlo, dot(across, q));
        nhi = std::max(nhi, dot(across, q));
    }
    for (const Point& q : poly.vertices())
        cuts.push_back(dot(axis, q) - lo);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    const double mid = 0.5 * (nlo + nhi);
    const double step = 1e-3 * std::max(hi - lo, 1e-3);

    auto along = [&](double t) { return (lo + t) * axis + mid * across; };
    auto v = [&](double t) { return u(along(t)); };
    auto dv = [&](double t) { return five_point_derivative(v, t, step); };
    auto f = [&](double t) { return chord_length(poly, piece.axis_theta, lo + t); };
    auto du_axis = [&](Point q) {
        return five_point_derivative([&](double s) { return u(q + s * axis); }, 0.0, step);
    };

    const double area_i = area(poly);
    const double tol2 = 1e-15 * std::max(area_i, 1e-300);
    auto line = [&](auto&& g) { return quad::integrate_panels(g, cuts, 1e-16, 1e-13).value; };

    const double e2 = integrate_field(poly, [&](Point q) { return pw.abs_pow(du_axis(q)); }, tol2, du_axis);
    const double e1 = line([&](double t) { return f(t) * pw.abs_pow(dv(t)); });
    const std::function<double(Point)> kink = [&](Point q) { return u(q); };
    const double n2 = integrate_field(poly, [&](Point q) { return pw.abs_pow(u(q)); }, tol2, kink);
    const double n1 = line([&](double t) { return f(t) * pw.abs_pow(v(t)); });
    const double m2 = integrate_field(
        poly, [&](Point q) { const double x = u(q); return pw.abs_pow_m2(x) * x; }, tol2, kink);
    const double m1 = line([&](double t) { const double x = v(t); return f(t) * pw.abs_pow_m2(x) * x; });

    const double c = pv * std::pow(std::max(c2_bound, 1.0), pv);
    return {std::abs(e2 - e1), std::abs(n2 - n1), std::abs(m1 - m2), area_i, piece.width,
            c * area_i * piece.width};
}

} // namespace poincare
