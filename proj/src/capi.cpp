#include "poincare/poincare.h"

#include "poincare/eig2d.hpp"
#include "poincare/error.hpp"
#include "poincare/expr.hpp"
#include "poincare/geom.hpp"
#include "poincare/io.hpp"
#include "poincare/ptrig.hpp"
#include "poincare/pwl.hpp"
#include "poincare/wirtinger1d.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>

using namespace poincare;

struct pc_pwl {
    PiecewiseLinear u;
};
struct pc_weight {
    Weight1D w;
};
struct pc_eigen1d {
    EigenResult1D r;
};
struct pc_polygon {
    ConvexPolygon poly;
};
struct pc_field {
    expr::Ast ast;
    ScalarField field;
};
struct pc_decomposition {
    std::vector<SlicePiece> pieces;
    ScalarField field; // already shifted
    double moment_tol;
};

namespace {

thread_local std::string last_error;
thread_local size_t last_offset = static_cast<size_t>(-1);

pc_status to_status(ErrorCode c)
{
    switch (c) {
    case ErrorCode::Domain: return PC_DOMAIN;
    case ErrorCode::InvalidArgument: return PC_INVALID_ARGUMENT;
    case ErrorCode::ToleranceNotReached: return PC_TOLERANCE_NOT_REACHED;
    case ErrorCode::BracketFailure: return PC_BRACKET_FAILURE;
    case ErrorCode::StepUnderflow: return PC_STEP_UNDERFLOW;
    case ErrorCode::Parse: return PC_PARSE;
    case ErrorCode::Eval: return PC_EVAL;
    case ErrorCode::SplitFailure: return PC_SPLIT_FAILURE;
    case ErrorCode::DepthExceeded: return PC_DEPTH_EXCEEDED;
    case ErrorCode::Degenerate: return PC_DEGENERATE;
    case ErrorCode::Io: return PC_IO;
    }
    return PC_INTERNAL;
}

struct BufferTooSmall {
    size_t needed;
};

template <class F>
pc_status guard(F&& body)
{
    last_error.clear();
    last_offset = static_cast<size_t>(-1);
    try {
        body();
        return PC_OK;
    } catch (const BufferTooSmall& e) {
        last_error = "buffer too small: need " + std::to_string(e.needed);
        return PC_BUFFER_TOO_SMALL;
    } catch (const expr::ParseError& e) {
        last_error = e.what();
        last_offset = e.offset();
        return PC_PARSE;
    } catch (const Error& e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return PC_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return PC_INTERNAL;
    }
}

void require(const void* ptr, const char* what)
{
    if (ptr == nullptr)
        fail(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

void check_capacity(size_t needed, size_t capacity)
{
    if (capacity < needed)
        throw BufferTooSmall{needed};
}

const SlicePiece& piece_at(const pc_decomposition* d, size_t i)
{
    require(d, "decomposition");
    if (i >= d->pieces.size())
        fail(ErrorCode::InvalidArgument, "piece index out of range");
    return d->pieces[i];
}

} // namespace

extern "C" {

const char* pc_last_error(void) { return last_error.c_str(); }
size_t pc_last_error_offset(void) { return last_offset; }

const char* pc_status_string(pc_status s)
{
    switch (s) {
    case PC_OK: return "ok";
    case PC_BUFFER_TOO_SMALL: return "buffer too small";
    case PC_INTERNAL: return "internal error";
    default: break;
    }
    if (s >= PC_DOMAIN && s <= PC_IO)
        return to_string(static_cast<ErrorCode>(s));
    return "unknown status";
}

// ---- generalized trigonometry

pc_status pc_pi_p(double p, double* out)
{
    return guard([&] { require(out, "out"); *out = pi_p(PExponent(p)); });
}

pc_status pc_pi_p_quad(double p, double tol, double* out)
{
    return guard([&] { require(out, "out"); *out = pi_p_quad(PExponent(p), tol); });
}

pc_status pc_sin_p(double p, double x, double* out)
{
    return guard([&] { require(out, "out"); *out = sin_p(PExponent(p), x); });
}

pc_status pc_sharp_constant_1d(double p, double length, double* out)
{
    return guard([&] { require(out, "out"); *out = sharp_constant_1d(PExponent(p), length); });
}

// ---- piecewise-linear functions

pc_status pc_pwl_create(const double* xs, const double* values, size_t n, pc_pwl** out)
{
    return guard([&] {
        require(out, "out");
        if (n > 0) {
            require(xs, "xs");
            require(values, "values");
        }
        *out = new pc_pwl{PiecewiseLinear({xs, xs + n}, {values, values + n})};
    });
}

pc_status pc_pwl_read_csv(const char* path, pc_pwl** out)
{
    return guard([&] {
        require(path, "path");
        require(out, "out");
        *out = new pc_pwl{io::read_pwl_csv(path)};
    });
}

void pc_pwl_free(pc_pwl* u) { delete u; }

size_t pc_pwl_size(const pc_pwl* u) { return u ? u->u.breakpoints().size() : 0; }

pc_status pc_pwl_points(const pc_pwl* u, double* xs, double* values, size_t capacity)
{
    return guard([&] {
        require(u, "u");
        check_capacity(u->u.breakpoints().size(), capacity);
        require(xs, "xs");
        require(values, "values");
        std::copy(u->u.breakpoints().begin(), u->u.breakpoints().end(), xs);
        std::copy(u->u.values().begin(), u->u.values().end(), values);
    });
}

pc_status pc_pwl_rearrange(const pc_pwl* u, pc_pwl** out)
{
    return guard([&] {
        require(u, "u");
        require(out, "out");
        *out = new pc_pwl{rearrange(u->u)};
    });
}

pc_status pc_pwl_lp_norm_p(const pc_pwl* u, double p, double* out)
{
    return guard([&] {
        require(u, "u");
        require(out, "out");
        *out = lp_norm_p(u->u, PExponent(p));
    });
}

pc_status pc_pwl_drift_energy(const pc_pwl* u, double p, double kappa, double* out)
{
    return guard([&] {
        require(u, "u");
        require(out, "out");
        *out = drift_energy(u->u, kappa, PExponent(p));
    });
}

pc_status pc_verify_drift_bound(const pc_pwl* u, double p, const double* kappas, size_t n_kappas, double rel_tol,
                                pc_drift_bound_report* out)
{
    return guard([&] {
        require(u, "u");
        require(out, "out");
        if (n_kappas > 0)
            require(kappas, "kappas");
        const DriftBoundReport r = verify_drift_bound(u->u, PExponent(p), {kappas, n_kappas}, rel_tol);
        out->sharp = r.sharp;
        out->n_kappas = r.kappas.size();
        out->n_violations = r.violating_kappas.size();
        out->holds = r.holds() ? 1 : 0;
        out->min_margin = std::numeric_limits<double>::quiet_NaN();
        out->worst_kappa = std::numeric_limits<double>::quiet_NaN();
        if (!r.margins.empty()) {
            const auto it = std::min_element(r.margins.begin(), r.margins.end());
            out->min_margin = *it;
            out->worst_kappa = r.kappas[static_cast<size_t>(it - r.margins.begin())];
        }
    });
}

pc_status pc_drift_counterexample_run(double p, double eps, pc_drift_counterexample* out)
{
    return guard([&] {
        require(out, "out");
        const DriftCounterexample r = drift_counterexample(PExponent(p), eps);
        *out = {r.lhs, r.rhs_rearranged, r.sharp, r.rearranged_inequality_holds() ? 1 : 0,
                r.refined_inequality_holds() ? 1 : 0};
    });
}

pc_status pc_two_slope_gap_run(double a, double b, double p, pc_two_slope_gap* out)
{
    return guard([&] {
        require(out, "out");
        const TwoSlopeGap g = two_slope_gap(a, b, PExponent(p));
        *out = {g.min_value, g.lower_bound, g.argmin_shift};
    });
}

// ---- weights and one-dimensional eigenvalues

pc_status pc_weight_exponential(double length, double kappa, pc_weight** out)
{
    return guard([&] {
        require(out, "out");
        *out = new pc_weight{Weight1D::exponential(length, kappa)};
    });
}

pc_status pc_weight_spline(const double* knots, const double* log_values, size_t n, pc_weight** out)
{
    return guard([&] {
        require(out, "out");
        if (n > 0) {
            require(knots, "knots");
            require(log_values, "log_values");
        }
        *out = new pc_weight{Weight1D::log_linear_spline({knots, knots + n}, {log_values, log_values + n})};
    });
}

pc_status pc_weight_read_csv(const char* path, pc_weight** out)
{
    return guard([&] {
        require(path, "path");
        require(out, "out");
        *out = new pc_weight{io::read_weight_csv(path)};
    });
}

void pc_weight_free(pc_weight* w) { delete w; }
double pc_weight_length(const pc_weight* w) { return w ? w->w.length() : 0.0; }
int pc_weight_is_log_concave(const pc_weight* w) { return w && w->w.is_log_concave() ? 1 : 0; }
int pc_weight_is_exponential(const pc_weight* w)
{
    return w && w->w.kind() == Weight1D::Kind::Exponential ? 1 : 0;
}
double pc_weight_kappa(const pc_weight* w) { return w ? w->w.kappa() : 0.0; }

pc_status pc_neumann_first(const pc_weight* w, double p, double tol, pc_eigen1d** out)
{
    return guard([&] {
        require(w, "weight");
        require(out, "out");
        *out = new pc_eigen1d{neumann_first_nontrivial(w->w, PExponent(p), tol)};
    });
}

pc_status pc_dirichlet_first(const pc_weight* w, double p, double tol, pc_eigen1d** out)
{
    return guard([&] {
        require(w, "weight");
        require(out, "out");
        *out = new pc_eigen1d{dirichlet_first(w->w, PExponent(p), tol)};
    });
}

void pc_eigen1d_free(pc_eigen1d* r) { delete r; }
double pc_eigen1d_lambda(const pc_eigen1d* r) { return r ? r->r.lambda : 0.0; }
double pc_eigen1d_interior_zero(const pc_eigen1d* r)
{
    return r ? r->r.interior_zero : std::numeric_limits<double>::quiet_NaN();
}
double pc_eigen1d_boundary_residual(const pc_eigen1d* r) { return r ? r->r.boundary_residual : 0.0; }
size_t pc_eigen1d_size(const pc_eigen1d* r) { return r ? r->r.eigenfunction.xs.size() : 0; }

pc_status pc_eigen1d_samples(const pc_eigen1d* r, double* xs, double* us, size_t capacity)
{
    return guard([&] {
        require(r, "result");
        check_capacity(r->r.eigenfunction.xs.size(), capacity);
        require(xs, "xs");
        require(us, "us");
        std::copy(r->r.eigenfunction.xs.begin(), r->r.eigenfunction.xs.end(), xs);
        std::copy(r->r.eigenfunction.us.begin(), r->r.eigenfunction.us.end(), us);
    });
}

// ---- polygons, fields and slicing

pc_status pc_polygon_create(const double* xy, size_t n, pc_polygon** out)
{
    return guard([&] {
        require(out, "out");
        if (n > 0)
            require(xy, "xy");
        std::vector<Point> pts(n);
        for (size_t i = 0; i < n; ++i)
            pts[i] = {xy[2 * i], xy[2 * i + 1]};
        *out = new pc_polygon{ConvexPolygon(std::move(pts))};
    });
}

pc_status pc_polygon_read(const char* path, pc_polygon** out)
{
    return guard([&] {
        require(path, "path");
        require(out, "out");
        *out = new pc_polygon{io::read_polygon(path)};
    });
}

void pc_polygon_free(pc_polygon* poly) { delete poly; }
size_t pc_polygon_size(const pc_polygon* poly) { return poly ? poly->poly.size() : 0; }

pc_status pc_polygon_vertices(const pc_polygon* poly, double* xy, size_t capacity)
{
    return guard([&] {
        require(poly, "polygon");
        check_capacity(poly->poly.size(), capacity);
        require(xy, "xy");
        size_t k = 0;
        for (const Point& q : poly->poly.vertices()) {
            xy[k++] = q.x;
            xy[k++] = q.y;
        }
    });
}

double pc_polygon_area(const pc_polygon* poly) { return poly ? area(poly->poly) : 0.0; }
double pc_polygon_diameter(const pc_polygon* poly) { return poly ? diameter(poly->poly) : 0.0; }

void pc_polygon_min_width(const pc_polygon* poly, double* width, double* theta)
{
    if (!poly)
        return;
    const WidthInfo w = min_width(poly->poly);
    if (width)
        *width = w.width;
    if (theta)
        *theta = w.theta;
}

pc_status pc_field_parse(const char* src, pc_field** out)
{
    return guard([&] {
        require(src, "src");
        require(out, "out");
        expr::Ast ast = expr::parse(src);
        ScalarField f = expr::to_field(ast);
        *out = new pc_field{std::move(ast), std::move(f)};
    });
}

void pc_field_free(pc_field* f) { delete f; }

pc_status pc_field_eval(const pc_field* f, double x, double y, double* out)
{
    return guard([&] {
        require(f, "field");
        require(out, "out");
        *out = expr::eval(f->ast, x, y);
    });
}

pc_status pc_field_print(const pc_field* f, char* buf, size_t capacity, size_t* needed)
{
    return guard([&] {
        require(f, "field");
        const std::string s = expr::print(f->ast);
        if (needed)
            *needed = s.size() + 1;
        check_capacity(s.size() + 1, buf ? capacity : 0);
        std::memcpy(buf, s.c_str(), s.size() + 1);
    });
}

pc_status pc_p_moment(const pc_polygon* poly, const pc_field* u, double p, double t, double tol, double* out)
{
    return guard([&] {
        require(poly, "polygon");
        require(u, "field");
        require(out, "out");
        *out = p_moment(poly->poly, u->field, PExponent(p), t, tol);
    });
}

pc_status pc_balance_shift(const pc_polygon* poly, const pc_field* u, double p, double tol, double* out)
{
    return guard([&] {
        require(poly, "polygon");
        require(u, "field");
        require(out, "out");
        *out = balance_shift(poly->poly, u->field, PExponent(p), tol);
    });
}

pc_status pc_decompose(const pc_polygon* poly, const pc_field* u, double shift, double p, double eps, double tol,
                       int max_depth, pc_decomposition** out)
{
    return guard([&] {
        require(poly, "polygon");
        require(u, "field");
        require(out, "out");
        const PExponent pe(p);
        ScalarField shifted = u->field.shifted(shift);
        DecomposeOptions opt;
        opt.tol = tol;
        opt.max_depth = max_depth;
        auto pieces = decompose(poly->poly, shifted, pe, eps, opt);
        const double scale = moment_scale(poly->poly, shifted, pe);
        // A piece inherits half its parent's residual plus its own split error.
        *out = new pc_decomposition{std::move(pieces), std::move(shifted), 2.0 * tol * scale};
    });
}

void pc_decomposition_free(pc_decomposition* d) { delete d; }
size_t pc_decomposition_size(const pc_decomposition* d) { return d ? d->pieces.size() : 0; }
double pc_decomposition_moment_tolerance(const pc_decomposition* d) { return d ? d->moment_tol : 0.0; }

pc_status pc_decomposition_piece(const pc_decomposition* d, size_t i, pc_piece_info* out)
{
    return guard([&] {
        require(out, "out");
        const SlicePiece& s = piece_at(d, i);
        *out = {s.axis_theta, s.length, s.width, area(s.polygon), s.p_moment_residual, s.polygon.size()};
    });
}

pc_status pc_decomposition_piece_vertices(const pc_decomposition* d, size_t i, double* xy, size_t capacity)
{
    return guard([&] {
        require(xy, "xy");
        const SlicePiece& s = piece_at(d, i);
        check_capacity(s.polygon.size(), capacity);
        size_t k = 0;
        for (const Point& q : s.polygon.vertices()) {
            xy[k++] = q.x;
            xy[k++] = q.y;
        }
    });
}

pc_status pc_decomposition_piece_log_concave(const pc_decomposition* d, size_t i, size_t m, int* out)
{
    return guard([&] {
        require(out, "out");
        const SlicePiece& s = piece_at(d, i);
        *out = is_discretely_log_concave(section_profile(s.polygon, s.axis_theta, m)) ? 1 : 0;
    });
}

pc_status pc_thin_reduction_check(const pc_decomposition* d, size_t i, double p, double c2_bound,
                                  pc_thin_reduction* out)
{
    return guard([&] {
        require(out, "out");
        const SlicePiece& s = piece_at(d, i);
        const ThinReductionRecord r = thin_reduction_check(s, d->field, PExponent(p), c2_bound);
        *out = {r.r1, r.r2, r.r3, r.area, r.eps, r.bound, r.within_bound() ? 1 : 0};
    });
}

// ---- two-dimensional eigenvalues

pc_status pc_check_bound(const pc_polygon* poly, double p, double h, double tol, pc_bound_report* out)
{
    return guard([&] {
        require(poly, "polygon");
        require(out, "out");
        const BoundReport r = check_bound(poly->poly, PExponent(p), h, tol);
        *out = {r.mu_est, r.d, r.bound, r.ratio, r.h, r.shift_t, r.iterations, r.converged ? 1 : 0,
                r.holds() ? 1 : 0};
    });
}

pc_status pc_thin_slab_sharpness(double d, const double* deltas, size_t n_deltas, double p, pc_sharpness_row* rows,
                                 int* monotone, int* converges)
{
    return guard([&] {
        if (n_deltas > 0) {
            require(deltas, "deltas");
            require(rows, "rows");
        }
        const SharpnessTable t = thin_slab_sharpness(d, {deltas, deltas + n_deltas}, PExponent(p));
        for (size_t k = 0; k < t.rows.size(); ++k)
            rows[k] = {t.rows[k].delta, t.rows[k].h, t.rows[k].mu_est, t.rows[k].bound, t.rows[k].ratio};
        if (monotone)
            *monotone = t.monotone() ? 1 : 0;
        if (converges)
            *converges = t.converges() ? 1 : 0;
    });
}

} // extern "C"
