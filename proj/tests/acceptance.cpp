// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "poincare/eig2d.hpp"
#include "poincare/geom.hpp"
#include "poincare/io.hpp"
#include "poincare/ptrig.hpp"
#include "poincare/pwl.hpp"
#include "poincare/wirtinger1d.hpp"
#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>

using namespace poincare;

namespace {

constexpr double kPi = std::numbers::pi;
const std::string kData = POINCARE_DATA_DIR;

int failures = 0;

void report(int id, const char* name, bool ok, double seconds, const std::string& detail)
{
    std::printf("%s %2d %-34s %8.2fs  %s\n", ok ? "PASS" : "FAIL", id, name, seconds, detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++failures;
}

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

template <class F>
void criterion(int id, const char* name, F body)
{
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(id, name, ok, seconds, detail);
}

double elapsed_since(std::chrono::steady_clock::time_point t)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// (pi_p)^p, mpmath at 30 digits.
double pi_p_power(double p)
{
    if (p == 2.0)
        return 9.8696044010893586188;
    if (p == 3.0)
        return 28.288761976002555416;
    if (p == 4.0)
        return 73.056818275501827927;
    return NAN;
}

bool pi_p_consistency(std::string& detail)
{
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double p : {2.0, 2.5, 3.0, 5.0, 10.0})
        worst = std::max(worst, std::abs(pi_p_quad(PExponent(p), 1e-10) - pi_p(PExponent(p))));
    const double at2 = std::abs(pi_p(PExponent(2.0)) - kPi);
    const double t = elapsed_since(start);
    detail = fmt("max|quad-closed|=%.2e (<1e-9)  |pi_2-pi|=%.1e (<1e-12)  t<1s", worst, at2);
    return worst < 1e-9 && at2 < 1e-12 && t < 1.0;
}

bool one_dimensional_constant(std::string& detail)
{
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double p : {2.0, 3.0, 4.0}) {
        const double lambda = neumann_first_nontrivial(Weight1D::exponential(1.0, 0.0), PExponent(p)).lambda;
        worst = std::max(worst, std::abs(lambda / pi_p_power(p) - 1.0));
    }
    const double t = elapsed_since(start);
    detail = fmt("max rel err=%.2e (<1e-4)  t<10s", worst);
    return worst < 1e-4 && t < 10.0;
}

bool neumann_dirichlet(std::string& detail)
{
    const auto start = std::chrono::steady_clock::now();
    double worst_gap = 0.0, worst_closed = 0.0;
    for (double kappa : {-2.0, -1.0, 0.0, 1.0, 2.0})
        for (double p : {2.0, 3.0, 4.0}) {
            const GapRecord g = neumann_dirichlet_gap(kappa, PExponent(p), 1.0);
            worst_gap = std::max(worst_gap, g.gap);
            if (p == 2.0) {
                const double exact = kPi * kPi + kappa * kappa / 4.0;
                worst_closed = std::max({worst_closed, std::abs(g.lambda_neumann - exact),
                                         std::abs(g.lambda_dirichlet - exact)});
            }
        }
    const double t = elapsed_since(start);
    detail = fmt("max gap=%.2e (<1e-4)  p=2 max|lambda-closed|=%.2e (<1e-5)  t<60s", worst_gap, worst_closed);
    return worst_gap < 1e-4 && worst_closed < 1e-5 && t < 60.0;
}

std::vector<Weight1D> log_concave_suite()
{
    std::vector<Weight1D> ws;
    for (double kappa : {-4.0, -1.0, 0.0, 1.0, 4.0})
        ws.push_back(Weight1D::exponential(1.0, kappa));
    ws.push_back(Weight1D::exponential(2.0, 1.5));
    for (auto [c, m] : {std::pair{1.0, 0.5}, std::pair{4.0, 0.2}, std::pair{10.0, 0.5}, std::pair{3.0, 1.3}})
        ws.push_back(Weight1D::smooth(
            1.0, [c, m](double x) { return -c * (x - m) * (x - m); },
            [c, m](double x) { return -2.0 * c * (x - m); }, "gaussian"));
    for (double s : {-0.9, 2.0, 10.0})
        ws.push_back(Weight1D::smooth(
            1.0, [s](double x) { return std::log(1.0 + s * x); }, [s](double x) { return s / (1.0 + s * x); },
            "affine"));
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> slope(-3.0, 3.0);
    for (int k = 0; k < 10; ++k) {
        const int knots = 3 + k % 5;
        const double length = k % 3 == 0 ? 2.0 : 1.0;
        std::vector<double> slopes(knots - 1);
        for (double& v : slopes)
            v = slope(rng);
        std::sort(slopes.rbegin(), slopes.rend());
        std::vector<double> xs(knots), ls(knots, 0.0);
        for (int i = 0; i < knots; ++i)
            xs[i] = length * i / (knots - 1);
        for (int i = 1; i < knots; ++i)
            ls[i] = ls[i - 1] + slopes[i - 1] * (xs[i] - xs[i - 1]);
        ws.push_back(Weight1D::log_linear_spline(xs, ls));
    }
    return ws;
}

bool log_concave_bound(std::string& detail)
{
    const auto ws = log_concave_suite();
    int violations = 0, not_log_concave = 0;
    double worst = INFINITY;
    for (const Weight1D& w : ws) {
        if (!w.is_log_concave())
            ++not_log_concave;
        for (double p : {2.0, 3.0, 4.0}) {
            const double lambda = neumann_first_nontrivial(w, PExponent(p), 1e-10).lambda;
            const double bound = sharp_constant_1d(PExponent(p), w.length());
            worst = std::min(worst, lambda / bound);
            if (lambda < bound * (1.0 - 1e-3))
                ++violations;
        }
    }
    detail = fmt("%zu weights x 3 p  violations=%d  min lambda/bound=%.6f", ws.size(), violations, worst);
    return ws.size() >= 20 && violations == 0 && not_log_concave == 0;
}

bool drift_bound_suite(std::string& detail)
{
    std::mt19937_64 rng(102);
    std::vector<double> kappas;
    for (int i = -100; i <= 100; ++i)
        kappas.push_back(0.1 * i);
    std::size_t violations = 0;
    double worst = INFINITY;
    for (int k = 0; k < 500; ++k) {
        const PiecewiseLinear u = fixtures::random_pwl(rng, 2 + k % 15);
        for (double p : {2.0, 3.0, 4.0}) {
            const DriftBoundReport r = verify_drift_bound(u, PExponent(p), kappas, 1e-12);
            violations += r.violating_kappas.size();
            worst = std::min(worst, r.min_margin() / r.sharp);
        }
    }
    detail = fmt("500 functions x 3 p x 201 kappa  violations=%zu  min margin/sharp=%.3e", violations, worst);
    return violations == 0;
}

bool counterexample(std::string& detail)
{
    const DriftCounterexample c = drift_counterexample(PExponent(4.0), 0.01);
    // closed forms in mpmath
    const double lhs = 15.840800010101010101, rhs = 15.919800006332134156, sharp = 1.9700005037688124976;
    const double err = std::max({std::abs(c.lhs - lhs), std::abs(c.rhs_rearranged - rhs), std::abs(c.sharp - sharp)});
    // First-order expansions; the remainder must scale like eps^2.
    auto remainders = [](double eps) {
        const double p = 4.0;
        const DriftCounterexample d = drift_counterexample(PExponent(p), eps);
        return std::pair{std::abs(d.lhs - std::pow(2.0, p) * (1.0 - eps * (p / 2.0 - 1.0))),
                         std::abs(d.rhs_rearranged - std::pow(2.0, p) * (1.0 - 0.5 * eps * (p / 2.0 - 1.0)))};
    };
    const auto [l1, r1] = remainders(0.01);
    const auto [l2, r2] = remainders(0.005);
    const double ql = l1 / l2, qr = r1 / r2;
    const bool second_order = ql > 3.5 && ql < 4.5 && qr > 3.5 && qr < 4.5 && l1 < 20.0 * 1e-4 && r1 < 20.0 * 1e-4;
    detail = fmt("lhs=%.6f rhs#=%.6f sharp=%.6f  max|err|=%.1e (<1e-6)  remainder ratios eps/2: %.3f %.3f (~4)",
                 c.lhs, c.rhs_rearranged, c.sharp, err, ql, qr);
    return err < 1e-6 && c.lhs < c.rhs_rearranged && c.lhs >= c.sharp && second_order;
}

bool two_slope(std::string& detail)
{
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> side(0.05, 5.0);
    int below = 0, not_stationary = 0;
    double worst_stationary = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double a = side(rng), b = side(rng);
        for (double p : {2.0, 3.0, 5.0}) {
            const auto phi = [&](double s) { return std::pow(std::abs(a + s), p) / a + std::pow(std::abs(b - s), p) / b; };
            // grid refinement: the minimizer lies in [-a, b]
            double lo = -a, hi = b, best = 0.0, best_value = INFINITY;
            for (int round = 0; round < 8; ++round) {
                const int n = 400;
                for (int i = 0; i <= n; ++i) {
                    const double s = lo + (hi - lo) * i / n;
                    if (const double v = phi(s); v < best_value) {
                        best_value = v;
                        best = s;
                    }
                }
                const double step = (hi - lo) / n;
                lo = best - step;
                hi = best + step;
            }
            const double lower = std::pow(2.0, p) * std::pow(a * b / (a + b), p - 1.0);
            if (best_value < lower * (1.0 - 1e-12))
                ++below;
            const double q = 1.0 / (p - 1.0);
            const double aq = std::pow(a, q), bq = std::pow(b, q);
            const double star = (aq * b - a * bq) / (aq + bq);
            const double left = std::pow(std::abs(a + star), p - 1.0) / a;
            const double right = std::pow(std::abs(b - star), p - 1.0) / b;
            const double stationary = std::abs(left - right) / std::max(left, right);
            worst_stationary = std::max(worst_stationary, stationary);
            if (stationary > 1e-8 || phi(star) > best_value * (1.0 + 1e-12))
                ++not_stationary;
        }
    }
    detail = fmt("600 cases  below bound=%d  argmin not stationary=%d  max rel derivative=%.1e", below,
                 not_stationary, worst_stationary);
    return below == 0 && not_stationary == 0;
}

bool decomposition_audit(std::string& detail)
{
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(104);
    const PExponent p(2.0);
    const double eps = 0.1;
    double worst_defect = 0.0, worst_moment = 0.0, worst_width = 0.0;
    int nonconvex = 0, not_log_concave = 0;
    std::size_t total_pieces = 0;
    for (int k = 0; k < 10; ++k) {
        const ConvexPolygon poly = fixtures::random_convex_polygon(rng);
        const ScalarField raw = fixtures::random_affine_field(rng);
        const ScalarField u = raw.shifted(balance_shift(poly, raw, p, 1e-12));
        const double scale = moment_scale(poly, u, p);
        const auto pieces = decompose(poly, u, p, eps);
        total_pieces += pieces.size();
        double covered = 0.0;
        for (const SlicePiece& piece : pieces) {
            covered += area(piece.polygon);
            const auto v = piece.polygon.vertices();
            for (std::size_t i = 0; i < v.size(); ++i) {
                const Point a = v[i], b = v[(i + 1) % v.size()], c = v[(i + 2) % v.size()];
                if (cross(b - a, c - b) <= 0.0)
                    ++nonconvex;
            }
            worst_width = std::max(worst_width, min_width(piece.polygon).width / eps);
            worst_moment = std::max(worst_moment, std::abs(p_moment(piece.polygon, u, p, 0.0, 1e-13)) / scale);
            if (!is_discretely_log_concave(section_profile(piece.polygon, piece.axis_theta, 64)))
                ++not_log_concave;
        }
        worst_defect = std::max(worst_defect, std::abs(covered - area(poly)) / area(poly));
    }
    const double t = elapsed_since(start);
    detail = fmt("%zu pieces  area defect=%.1e (<1e-9)  max width/eps=%.3f  max|moment|/scale=%.1e (<=1e-8)  "
                 "nonconvex=%d  profile failures=%d  t<60s",
                 total_pieces, worst_defect, worst_width, worst_moment, nonconvex, not_log_concave);
    return worst_defect < 1e-9 && worst_width <= 1.0 && worst_moment <= 1e-8 && nonconvex == 0 &&
           not_log_concave == 0 && t < 60.0;
}

bool diameter_bound(std::string& detail)
{
    const auto start = std::chrono::steady_clock::now();
    const double h = 0.02;
    const auto square = check_bound(io::read_polygon(kData + "/polygons/square.txt"), PExponent(2.0), h);
    const auto rect = check_bound(io::read_polygon(kData + "/polygons/rectangle.txt"), PExponent(2.0), h);
    const auto disk = check_bound(io::read_polygon(kData + "/polygons/disk64.txt"), PExponent(2.0), h);
    const bool examples = std::abs(square.mu_est / (kPi * kPi) - 1.0) < 0.02 &&
                          std::abs(square.ratio / 2.0 - 1.0) < 0.03 &&
                          std::abs(rect.mu_est / (kPi * kPi / 4.0) - 1.0) < 0.02 &&
                          std::abs(rect.ratio / 1.25 - 1.0) < 0.03 && std::abs(disk.mu_est / 3.390 - 1.0) < 0.03;
    int cases = 0, violations = 0, unconverged = 0;
    double worst = INFINITY;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(kData + "/polygons"))
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        const ConvexPolygon poly = io::read_polygon(file.string());
        for (double p : {2.0, 3.0, 4.0}) {
            const BoundReport r = check_bound(poly, PExponent(p), h);
            ++cases;
            worst = std::min(worst, r.ratio);
            if (!r.holds())
                ++violations;
            if (!r.converged)
                ++unconverged;
        }
    }
    const double t = elapsed_since(start);
    detail = fmt("square mu=%.4f ratio=%.4f  rect mu=%.4f ratio=%.4f  disk mu=%.4f  corpus %d cases: "
                 "violations=%d unconverged=%d min ratio=%.4f  t<300s",
                 square.mu_est, square.ratio, rect.mu_est, rect.ratio, disk.mu_est, cases, violations, unconverged,
                 worst);
    return examples && violations == 0 && t < 300.0;
}

bool sharpness(std::string& detail)
{
    const PExponent p(3.0);
    const SharpnessTable table = thin_slab_sharpness(1.0, {0.2, 0.1, 0.05}, p);
    const double last = table.rows.back().mu_est / pi_p_power(3.0);

    // Thin-slab residuals of x^2 + x y + y on the unit square, eps and eps/2.
    const ConvexPolygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const ScalarField raw([](double x, double y) { return x * x + x * y + y; });
    const PExponent p2(2.0);
    const ScalarField u = raw.shifted(balance_shift(sq, raw, p2, 1e-12));
    auto worst = [&](double eps) {
        std::array<double, 3> r{};
        for (const SlicePiece& piece : decompose(sq, u, p2, eps)) {
            const ThinReductionRecord rec = thin_reduction_check(piece, u, p2, 3.0);
            r[0] = std::max(r[0], rec.r1 / rec.area);
            r[1] = std::max(r[1], rec.r2 / rec.area);
            r[2] = std::max(r[2], rec.r3 / rec.area);
        }
        return r;
    };
    const auto coarse = worst(0.1), fine = worst(0.05);
    bool halves = true;
    std::string ratios;
    for (int i = 0; i < 3; ++i) {
        const double q = fine[i] / coarse[i];
        halves = halves && coarse[i] > 0.0 && q <= 0.75;
        ratios += fmt(" %.3f", q);
    }
    detail = fmt("mu/pi_3^3 at delta=0.05: %.5f (within 5%%)  monotone=%d  residual ratios eps/2:%s (<=0.75)", last,
                 table.monotone() ? 1 : 0, ratios.c_str());
    return std::abs(last - 1.0) < 0.05 && table.monotone() && halves;
}

} // namespace

int main()
{
    criterion(1, "pi_p consistency", pi_p_consistency);
    criterion(2, "1D sharp constant", one_dimensional_constant);
    criterion(3, "Neumann = Dirichlet, exp weights", neumann_dirichlet);
    criterion(4, "log-concave weight bound", log_concave_bound);
    criterion(5, "drift bound property suite", drift_bound_suite);
    criterion(6, "drift counterexample", counterexample);
    criterion(7, "two-slope inequality", two_slope);
    criterion(8, "decomposition audit", decomposition_audit);
    criterion(9, "diameter bound on polygons", diameter_bound);
    criterion(10, "thin-slab sharpness", sharpness);
    std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
