#include "poincare/geom.hpp"

#include "balance.hpp"
#include "poincare/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace poincare {

double norm(Point a) { return std::hypot(a.x, a.y); }

// ---------------------------------------------------------------------------
// Polygons

namespace {

double signed_area(const std::vector<Point>& v)
{
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % v.size()];
        s += cross(a, b);
    }
    return 0.5 * s;
}

double extent(const std::vector<Point>& v)
{
    double m = 0.0;
    for (const Point& q : v)
        m = std::max({m, std::abs(q.x), std::abs(q.y)});
    return m;
}

} // namespace

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices)
{
    for (const Point& q : vertices)
        if (!std::isfinite(q.x) || !std::isfinite(q.y))
            fail(ErrorCode::InvalidArgument, "non-finite polygon vertex");

    const double scale = std::max(extent(vertices), 1e-300);
    const double dup_tol = 1e-13 * scale;

    std::vector<Point> v;
    v.reserve(vertices.size());
    for (const Point& q : vertices)
        if (v.empty() || norm(q - v.back()) > dup_tol)
            v.push_back(q);
    while (v.size() > 1 && norm(v.front() - v.back()) <= dup_tol)
        v.pop_back();
    if (v.size() < 3)
        fail(ErrorCode::Degenerate, "polygon needs at least three distinct vertices");
    if (signed_area(v) < 0.0)
        std::reverse(v.begin(), v.end());

    // Drop collinear vertices until none remain.
    bool changed = true;
    while (changed && v.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Point& prev = v[(i + v.size() - 1) % v.size()];
            const Point& next = v[(i + 1) % v.size()];
            const Point e1 = v[i] - prev;
            const Point e2 = next - v[i];
            if (std::abs(cross(e1, e2)) <= 1e-12 * norm(e1) * norm(e2) && dot(e1, e2) > 0.0) {
                v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    if (v.size() < 3)
        fail(ErrorCode::Degenerate, "polygon is degenerate");
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point e1 = v[i] - v[(i + v.size() - 1) % v.size()];
        const Point e2 = v[(i + 1) % v.size()] - v[i];
        if (cross(e1, e2) < -1e-12 * norm(e1) * norm(e2))
            fail(ErrorCode::InvalidArgument, "polygon is not convex");
    }
    if (!(signed_area(v) > 0.0))
        fail(ErrorCode::Degenerate, "polygon has zero area");
    vertices_ = std::move(v);
}

Point ConvexPolygon::centroid() const
{
    double a = 0.0;
    Point c{};
    const Point o = vertices_[0];
    for (std::size_t i = 1; i + 1 < vertices_.size(); ++i) {
        const Point p1 = vertices_[i] - o;
        const Point p2 = vertices_[i + 1] - o;
        const double t = 0.5 * cross(p1, p2);
        a += t;
        c = c + (t / 3.0) * (p1 + p2);
    }
    return o + (1.0 / a) * c;
}

bool ConvexPolygon::contains(Point q, double tol) const
{
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const Point a = vertices_[i];
        const Point b = vertices_[(i + 1) % vertices_.size()];
        const Point e = b - a;
        if (cross(e, q - a) < -tol * norm(e))
            return false;
    }
    return true;
}

SplitLine SplitLine::normalized(double theta, double c)
{
    double t = std::fmod(theta, 2.0 * std::numbers::pi);
    if (t < 0.0)
        t += 2.0 * std::numbers::pi;
    if (t >= std::numbers::pi) {
        t -= std::numbers::pi;
        c = -c;
    }
    return {t, c};
}

Point SplitLine::normal() const { return {std::cos(theta), std::sin(theta)}; }

std::optional<ConvexPolygon> clip(const ConvexPolygon& poly, Point normal, double c, Side side)
{
    auto v = poly.vertices();
    const double sign = side == Side::Below ? 1.0 : -1.0;
    std::vector<double> s(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        s[i] = sign * (dot(normal, v[i]) - c);

    std::vector<Point> out;
    out.reserve(v.size() + 2);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::size_t j = (i + 1) % v.size();
        if (s[i] <= 0.0)
            out.push_back(v[i]);
        if ((s[i] < 0.0 && s[j] > 0.0) || (s[i] > 0.0 && s[j] < 0.0)) {
            const double r = s[i] / (s[i] - s[j]);
            out.push_back(v[i] + r * (v[j] - v[i]));
        }
    }
    if (out.size() < 3)
        return std::nullopt;
    const double total = area(poly);
    if (std::abs(signed_area(out)) <= 1e-15 * total)
        return std::nullopt;
    try {
        return ConvexPolygon(std::move(out));
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::optional<ConvexPolygon> clip(const ConvexPolygon& poly, const SplitLine& line, Side side)
{
    return clip(poly, line.normal(), line.c, side);
}

double area(const ConvexPolygon& poly)
{
    auto v = poly.vertices();
    double s = 0.0;
    const Point o = v[0];
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        s += cross(v[i] - o, v[i + 1] - o);
    return 0.5 * s;
}

double diameter(const ConvexPolygon& poly)
{
    auto v = poly.vertices();
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            d = std::max(d, norm(v[i] - v[j]));
    return d;
}

WidthInfo min_width(const ConvexPolygon& poly)
{
    auto v = poly.vertices();
    WidthInfo best{std::numeric_limits<double>::infinity(), 0.0};
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point e = v[(i + 1) % v.size()] - v[i];
        const Point n = (1.0 / norm(e)) * Point{e.y, -e.x};
        double far = 0.0;
        for (const Point& q : v)
            far = std::max(far, std::abs(dot(n, q - v[i])));
        if (far < best.width)
            best = {far, SplitLine::normalized(std::atan2(n.y, n.x), 0.0).theta};
    }
    return best;
}

// ---------------------------------------------------------------------------
// Fields and quadrature

ScalarField ScalarField::shifted(double t) const
{
    auto f = f_;
    return ScalarField([f, t](double x, double y) { return f(x, y) - t; });
}

namespace {

// Degree-5 seven-point rule (barycentric coordinates, weights sum to 1).
constexpr double kA = 0.101286507323456338800987361915123;
constexpr double kB = 0.470142064105115089770441209513447;
constexpr double kWA = 0.125939180544827152595683945500181;
constexpr double kWB = 0.132394152788506180737649387833152;
constexpr double kWC = 0.225;

struct Tri {
    Point a, b, c;
};

double tri_area(const Tri& t) { return 0.5 * std::abs(cross(t.b - t.a, t.c - t.a)); }

struct RuleValue {
    double value;
    double magnitude; // same rule applied to |g|, for the roundoff floor
};

std::array<Point, 7> rule_nodes(const Tri& t)
{
    auto at = [&](double l1, double l2, double l3) {
        return Point{l1 * t.a.x + l2 * t.b.x + l3 * t.c.x, l1 * t.a.y + l2 * t.b.y + l3 * t.c.y};
    };
    const double ca = 1.0 - 2.0 * kA;
    const double cb = 1.0 - 2.0 * kB;
    return {at(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0), at(kA, kA, ca), at(kA, ca, kA), at(ca, kA, kA),
            at(kB, kB, cb),                    at(kB, cb, kB), at(cb, kB, kB)};
}

constexpr std::array<double, 7> kWeights = {kWC, kWA, kWA, kWA, kWB, kWB, kWB};

RuleValue tri_rule(const Tri& t, const std::function<double(Point)>& g)
{
    const auto nodes = rule_nodes(t);
    double s = 0.0;
    double m = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double v = g(nodes[i]);
        s += kWeights[i] * v;
        m += kWeights[i] * std::abs(v);
    }
    const double a = tri_area(t);
    return {s * a, m * a};
}

constexpr int kMaxDepth = 18;
// Below this depth a kink feature missed by every node is too small to matter.
constexpr int kKinkDepth = 12;

using Kink = std::function<double(Point)>;

// Where kink changes sign on [p, q], by the Illinois variant of regula falsi.
Point edge_root(Point p, Point q, double kp, double kq, const Kink& kink)
{
    double lo = 0.0, hi = 1.0, flo = kp, fhi = kq;
    double r = 0.5;
    int side = 0;
    for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
        r = (lo * fhi - hi * flo) / (fhi - flo);
        const double fr = kink(p + r * (q - p));
        if (fr == 0.0)
            break;
        if ((fr > 0.0) == (flo > 0.0)) {
            lo = r;
            flo = fr;
            if (side == -1)
                fhi *= 0.5;
            side = -1;
        } else {
            hi = r;
            fhi = fr;
            if (side == 1)
                flo *= 0.5;
            side = 1;
        }
    }
    return p + r * (q - p);
}

// Six-point Gauss-Legendre rule on [0, 1].
constexpr std::array<double, 6> kGlNodes = {0.033765242898423987, 0.16939530676686775, 0.38069040695840156,
                                            0.61930959304159844, 0.83060469323313225, 0.96623475710157601};
constexpr std::array<double, 6> kGlWeights = {0.085662246189585173, 0.18038078652406930, 0.23395696728634552,
                                              0.23395696728634552, 0.18038078652406930, 0.085662246189585173};

// Integral over the region swept from segment a0-a1 (s = 0) to segment b0-b1 (s = 1),
// with s = sigma^2 so nodes crowd the s = 0 side, where g has limited smoothness.
RuleValue graded_rule(Point a0, Point a1, Point b0, Point b1, const std::function<double(Point)>& g)
{
    RuleValue out{0.0, 0.0};
    for (int i = 0; i < 6; ++i) {
        const double sigma = kGlNodes[i];
        const double sv = sigma * sigma;
        for (int j = 0; j < 6; ++j) {
            const double w = kGlNodes[j];
            const Point a = a0 + w * (a1 - a0);
            const Point b = b0 + w * (b1 - b0);
            const Point dw = (1.0 - sv) * (a1 - a0) + sv * (b1 - b0);
            const double jac = std::abs(cross(b - a, dw)) * 2.0 * sigma;
            const double v = g((1.0 - sv) * a + sv * b);
            const double wt = kGlWeights[i] * kGlWeights[j] * jac;
            out.value += wt * v;
            out.magnitude += wt * std::abs(v);
        }
    }
    return out;
}

// Rule value; a triangle whose vertices the kink separates is cut along the chord
// between the kink's edge crossings and each side integrated with graded_rule.
// Exact for polynomial branches across a straight zero line; a curved one leaves
// an error that shrinks with the triangle, which the refinement test can see.
RuleValue piece_rule(const Tri& t, const std::function<double(Point)>& g, const Kink& kink)
{
    if (!kink)
        return tri_rule(t, g);
    const std::array<Point, 3> v = {t.a, t.b, t.c};
    const std::array<double, 3> k = {kink(t.a), kink(t.b), kink(t.c)};
    const bool pa = k[0] > 0.0, pb = k[1] > 0.0, pc = k[2] > 0.0;
    if (pa == pb && pb == pc)
        return tri_rule(t, g);
    const int lone = pa == pb ? 2 : (pa == pc ? 1 : 0);
    const int m = (lone + 1) % 3;
    const int n = (lone + 2) % 3;
    const Point P = edge_root(v[lone], v[m], k[lone], k[m], kink);
    const Point Q = edge_root(v[lone], v[n], k[lone], k[n], kink);
    const RuleValue near = graded_rule(P, Q, v[lone], v[lone], g);
    const RuleValue far = graded_rule(P, Q, v[m], v[n], g);
    return {near.value + far.value, near.magnitude + far.magnitude};
}

// The vertices agree in sign but some interior sample does not: the zero set
// enters and leaves without separating the vertices, and piece_rule cannot see it.
bool hidden_kink(const Tri& t, const std::array<Tri, 4>& kids, const Kink& kink)
{
    const bool s = kink(t.a) > 0.0;
    if ((kink(t.b) > 0.0) != s || (kink(t.c) > 0.0) != s)
        return false;
    for (const Point& q : {kids[3].a, kids[3].b, kids[3].c})
        if ((kink(q) > 0.0) != s)
            return true;
    for (const Point& q : rule_nodes(t))
        if ((kink(q) > 0.0) != s)
            return true;
    return false;
}

double adaptive(const Tri& t, double coarse, const std::function<double(Point)>& g, const Kink& kink, double tol,
                int depth)
{
    const Point ab = 0.5 * (t.a + t.b);
    const Point bc = 0.5 * (t.b + t.c);
    const Point ca = 0.5 * (t.c + t.a);
    const std::array<Tri, 4> kids = {Tri{t.a, ab, ca}, Tri{ab, t.b, bc}, Tri{ca, bc, t.c}, Tri{ab, bc, ca}};
    std::array<double, 4> vals{};
    double fine = 0.0;
    double magnitude = 0.0;
    for (int i = 0; i < 4; ++i) {
        const RuleValue r = piece_rule(kids[i], g, kink);
        vals[i] = r.value;
        fine += r.value;
        magnitude += r.magnitude;
    }
    // Child areas carry a relative error of about eps * (coordinate size / edge size).
    const double edge = std::min({norm(t.b - t.a), norm(t.c - t.b), norm(t.a - t.c)});
    const double coord = std::max({std::abs(t.a.x), std::abs(t.a.y), edge});
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * magnitude * (coord / edge);
    const double diff = std::abs(fine - coarse);
    const bool trusted = !kink || depth >= kKinkDepth || !hidden_kink(t, kids, kink);
    if (trusted && (diff <= tol || diff <= floor))
        return fine;
    if (depth >= kMaxDepth)
        fail(ErrorCode::ToleranceNotReached, "triangle quadrature did not reach tolerance");
    // Half rather than a quarter of the budget per child: |fine - coarse| already
    // overstates the error of fine.
    double sum = 0.0;
    for (int i = 0; i < 4; ++i)
        sum += adaptive(kids[i], vals[i], g, kink, 0.5 * tol, depth + 1);
    return sum;
}

std::vector<Tri> fan(const ConvexPolygon& poly)
{
    auto v = poly.vertices();
    const Point c = poly.centroid();
    std::vector<Tri> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back({c, v[i], v[(i + 1) % v.size()]});
    return out;
}

} // namespace

double integrate_field(const ConvexPolygon& poly, const std::function<double(Point)>& g, double tol,
                       const std::function<double(Point)>& kink)
{
    const double total = area(poly);
    double sum = 0.0;
    for (const Tri& t : fan(poly)) {
        const double share = tri_area(t) / total;
        sum += adaptive(t, piece_rule(t, g, kink).value, g, kink, tol * share, 0);
    }
    return sum;
}

double p_moment(const ConvexPolygon& poly, const ScalarField& u, PExponent p, double t, double tol)
{
    const double pm2 = p.value() - 2.0;
    // |d|^{p-2} d is a polynomial in d for even integer p - 2.
    const bool smooth = pm2 == 2.0 * std::floor(0.5 * pm2);
    if (pm2 == 0.0)
        return integrate_field(poly, [&](Point q) { return u(q) - t; }, tol);
    return integrate_field(
        poly,
        [&](Point q) {
            const double d = u(q) - t;
            return d == 0.0 ? 0.0 : std::pow(std::abs(d), pm2) * d;
        },
        tol, smooth ? Kink{} : Kink([&](Point q) { return u(q) - t; }));
}

double moment_scale(const ConvexPolygon& poly, const ScalarField& u, PExponent p)
{
    double s = 0.0;
    for (const Tri& t : fan(poly))
        s += tri_rule(t, [&](Point q) { return std::pow(std::abs(u(q)), p.value() - 1.0); }).value;
    return std::max(s, std::numeric_limits<double>::min());
}

namespace {

std::pair<double, double> sampled_range(const ConvexPolygon& poly, const ScalarField& u)
{
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    auto take = [&](Point q) {
        const double v = u(q);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    };
    for (const Tri& t : fan(poly)) {
        take(t.a);
        take(t.b);
        take(0.5 * (t.b + t.c));
        take((1.0 / 3.0) * (t.a + t.b + t.c));
    }
    return {lo, hi};
}

} // namespace

double balance_shift(const ConvexPolygon& poly, const ScalarField& u, PExponent p, double tol)
{
    auto [lo, hi] = sampled_range(poly, u);
    if (!(hi > lo))
        return lo;
    const double scale = moment_scale(poly, u.shifted(0.5 * (lo + hi)), p);
    const double qtol = 0.1 * tol * scale;
    auto moment = [&](double t) { return p_moment(poly, u, p, t, qtol); };
    const double pv = p.value();
    auto slope = [&](double t) {
        if (pv == 2.0)
            return -area(poly);
        return -(pv - 1.0) * integrate_field(
                                 poly, [&](Point q) { return std::pow(std::abs(u(q) - t), pv - 2.0); },
                                 std::abs(qtol) + 1e-6 * area(poly), [&](Point q) { return u(q) - t; });
    };
    const double span = hi - lo;
    for (int i = 0; i < 60 && moment(lo) < 0.0; ++i)
        lo -= span;
    for (int i = 0; i < 60 && moment(hi) > 0.0; ++i)
        hi += span;
    return detail::solve_balance(moment, slope, lo, hi, tol * scale);
}

// ---------------------------------------------------------------------------
// Splitting

namespace {

struct HalfCut {
    ConvexPolygon left;
    ConvexPolygon right;
    Point normal;
    double c;
};

// Area-bisecting cut with normal (cos theta, sin theta).
HalfCut area_bisector(const ConvexPolygon& poly, double theta, double total_area)
{
    const Point n{std::cos(theta), std::sin(theta)};
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Point& q : poly.vertices()) {
        lo = std::min(lo, dot(n, q));
        hi = std::max(hi, dot(n, q));
    }
    const double target = 0.5 * total_area;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        auto left = clip(poly, n, mid, Side::Below);
        const double a = left ? area(*left) : 0.0;
        (a < target ? lo : hi) = mid;
    }
    const double c = 0.5 * (lo + hi);
    auto left = clip(poly, n, c, Side::Below);
    auto right = clip(poly, n, c, Side::Above);
    if (!left || !right)
        fail(ErrorCode::SplitFailure, "area bisector produced an empty piece");
    return {*left, *right, n, c};
}

} // namespace

SplitResult split_once(const ConvexPolygon& poly, const ScalarField& u, PExponent p, double tol)
{
    const double total_area = area(poly);
    const double scale = moment_scale(poly, u, p);
    const double qtol = 0.01 * tol * scale;
    const double total_moment = p_moment(poly, u, p, 0.0, qtol);
    // Target half the residual moment on each side so errors do not accumulate.
    const double target = 0.5 * total_moment;
    const double accept = tol * scale;

    auto gap = [&](double theta, HalfCut& cut) {
        cut = area_bisector(poly, theta, total_area);
        return p_moment(cut.left, u, p, 0.0, qtol) - target;
    };
    // Directions stay in [0, pi) here, so the cut needs no renormalization.
    auto finish = [&](const HalfCut& cut, double theta) {
        return SplitResult{cut.left, cut.right, SplitLine{theta, cut.c}, p_moment(cut.left, u, p, 0.0, qtol),
                           p_moment(cut.right, u, p, 0.0, qtol)};
    };

    constexpr int kDirections = 128;
    HalfCut cut = area_bisector(poly, 0.0, total_area);
    const double g0 = p_moment(cut.left, u, p, 0.0, qtol) - target;
    if (std::abs(g0) <= accept)
        return finish(cut, 0.0);

    double prev_theta = 0.0;
    double prev_gap = g0;
    double lo_theta = 0.0, hi_theta = 0.0;
    bool bracketed = false;
    for (int k = 1; k <= kDirections && !bracketed; ++k) {
        const double theta = std::numbers::pi * k / kDirections;
        double g;
        if (k == kDirections) {
            g = -g0; // the half-plane at theta + pi is the complement
        } else {
            g = gap(theta, cut);
            if (std::abs(g) <= accept)
                return finish(cut, theta);
        }
        if ((g > 0.0) != (prev_gap > 0.0)) {
            lo_theta = prev_theta;
            hi_theta = theta;
            bracketed = true;
        } else {
            prev_theta = theta;
            prev_gap = g;
        }
    }
    if (!bracketed)
        fail(ErrorCode::SplitFailure, "no sign change of the moment gap over the direction scan");

    const bool lo_positive = prev_gap > 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo_theta + hi_theta);
        const double g = gap(mid, cut);
        if (std::abs(g) <= accept)
            return finish(cut, mid);
        if ((g > 0.0) == lo_positive)
            lo_theta = mid;
        else
            hi_theta = mid;
        if (hi_theta - lo_theta <= 1e-16)
            break;
    }
    fail(ErrorCode::SplitFailure, "direction bisection did not balance the moments");
}

namespace {

Point projection_range(const ConvexPolygon& poly, Point dir)
{
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Point& q : poly.vertices()) {
        lo = std::min(lo, dot(dir, q));
        hi = std::max(hi, dot(dir, q));
    }
    return {lo, hi};
}

void decompose_into(const ConvexPolygon& poly, const ScalarField& u, PExponent p, double eps, double tol,
                    double abs_scale, int depth, const DecomposeOptions& opt, std::vector<SlicePiece>& out)
{
    const WidthInfo w = min_width(poly);
    if (w.width <= eps) {
        const double axis = SplitLine::normalized(w.theta + 0.5 * std::numbers::pi, 0.0).theta;
        const Point range = projection_range(poly, {std::cos(axis), std::sin(axis)});
        out.push_back({poly, axis, range.y - range.x, w.width,
                       p_moment(poly, u, p, 0.0, 0.01 * tol * abs_scale)});
        return;
    }
    if (depth >= opt.max_depth)
        fail(ErrorCode::DepthExceeded, "decomposition exceeded the maximum depth of " +
                                           std::to_string(opt.max_depth));
    // Tolerance is relative to the moment scale of the root polygon.
    const double local_scale = moment_scale(poly, u, p);
    const double local_tol = tol * abs_scale / local_scale;
    SplitResult s = split_once(poly, u, p, local_tol);
    decompose_into(s.left, u, p, eps, tol, abs_scale, depth + 1, opt, out);
    decompose_into(s.right, u, p, eps, tol, abs_scale, depth + 1, opt, out);
}

} // namespace

std::vector<SlicePiece> decompose(const ConvexPolygon& poly, const ScalarField& u, PExponent p, double eps,
                                  const DecomposeOptions& options)
{
    if (!(eps > 0.0))
        fail(ErrorCode::InvalidArgument, "eps must be positive");
    std::vector<SlicePiece> out;
    decompose_into(poly, u, p, eps, options.tol, moment_scale(poly, u, p), 0, options, out);
    std::sort(out.begin(), out.end(), [](const SlicePiece& a, const SlicePiece& b) {
        const Point ca = a.polygon.centroid();
        const Point cb = b.polygon.centroid();
        return ca.x != cb.x ? ca.x < cb.x : ca.y < cb.y;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Section profiles

double chord_length(const ConvexPolygon& poly, double theta, double s)
{
    const Point n{std::cos(theta), std::sin(theta)};
    const Point tangent{-n.y, n.x};
    auto v = poly.vertices();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point a = v[i];
        const Point b = v[(i + 1) % v.size()];
        const double da = dot(n, a) - s;
        const double db = dot(n, b) - s;
        if (da == 0.0) {
            lo = std::min(lo, dot(tangent, a));
            hi = std::max(hi, dot(tangent, a));
        }
        if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
            const Point q = a + (da / (da - db)) * (b - a);
            lo = std::min(lo, dot(tangent, q));
            hi = std::max(hi, dot(tangent, q));
        }
    }
    return hi > lo ? hi - lo : 0.0;
}

SectionProfile section_profile(const ConvexPolygon& poly, double theta, std::size_t m)
{
    if (m < 8)
        fail(ErrorCode::InvalidArgument, "section_profile needs at least 8 samples");
    const Point n{std::cos(theta), std::sin(theta)};
    const Point range = projection_range(poly, n);
    SectionProfile prof;
    prof.theta = theta;
    prof.offset = range.x;
    prof.length = range.y - range.x;
    prof.ts.resize(m);
    prof.lengths.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = prof.length * static_cast<double>(i) / static_cast<double>(m - 1);
        prof.ts[i] = t;
        prof.lengths[i] = chord_length(poly, theta, prof.offset + t);
    }
    return prof;
}

Weight1D SectionProfile::to_weight() const
{
    std::vector<double> knots;
    std::vector<double> logs;
    double start = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (lengths[i] > 0.0) {
            if (knots.empty())
                start = ts[i];
            knots.push_back(ts[i] - start);
            logs.push_back(std::log(lengths[i]));
        }
    }
    if (knots.size() < 2)
        fail(ErrorCode::Degenerate, "section profile has fewer than two positive samples");
    return Weight1D::log_linear_spline(std::move(knots), std::move(logs));
}

bool is_discretely_log_concave(const SectionProfile& profile, double rel_tol)
{
    const auto& f = profile.lengths;
    for (std::size_t i = 1; i + 1 < f.size(); ++i)
        if (f[i] * f[i] < f[i - 1] * f[i + 1] * (1.0 - rel_tol))
            return false;
    return true;
}

} // namespace poincare
