// Command-line front end. Links only the C interface.

#include "poincare/poincare.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kUsage = 2;

// Library failures caused by the input itself count as usage errors.
struct LibraryError {
    pc_status status;
    std::string message;
};

void check(pc_status s)
{
    if (s != PC_OK)
        throw LibraryError{s, pc_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using Pwl = std::unique_ptr<pc_pwl, Deleter<pc_pwl, pc_pwl_free>>;
using Weight = std::unique_ptr<pc_weight, Deleter<pc_weight, pc_weight_free>>;
using Eigen1d = std::unique_ptr<pc_eigen1d, Deleter<pc_eigen1d, pc_eigen1d_free>>;
using Polygon = std::unique_ptr<pc_polygon, Deleter<pc_polygon, pc_polygon_free>>;
using Field = std::unique_ptr<pc_field, Deleter<pc_field, pc_field_free>>;
using Decomposition = std::unique_ptr<pc_decomposition, Deleter<pc_decomposition, pc_decomposition_free>>;

// Twelve significant digits; integral values print without a fraction.
Json num(double v)
{
    if (!std::isfinite(v))
        return nullptr;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    const double r = std::strtod(buf, nullptr);
    if (r == std::floor(r) && std::abs(r) < 1e15)
        return static_cast<long long>(r);
    return r;
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::vector<std::pair<double, double>> pwl_points(const pc_pwl* u)
{
    const size_t n = pc_pwl_size(u);
    std::vector<double> xs(n), vs(n);
    check(pc_pwl_points(u, xs.data(), vs.data(), n));
    std::vector<std::pair<double, double>> out(n);
    for (size_t i = 0; i < n; ++i)
        out[i] = {xs[i], vs[i]};
    return out;
}

void write_csv(std::ostream& out, const char* header, const std::vector<std::pair<double, double>>& rows)
{
    out << header << '\n';
    for (auto [a, b] : rows)
        out << fmt(a) << ',' << fmt(b) << '\n';
}

auto exponent_check = CLI::Validator(
    [](std::string& s) {
        try {
            return std::stod(s) > 1.0 ? std::string() : std::string("p must exceed 1");
        } catch (...) {
            return std::string("p must be a number");
        }
    },
    "P>1", "exponent");

// ---- subcommands

int run_pip(double p, double tol)
{
    double closed = 0.0, quad = 0.0;
    check(pc_pi_p(p, &closed));
    check(pc_pi_p_quad(p, tol, &quad));
    const double diff = std::abs(closed - quad);
    emit(Json{{"p", num(p)}, {"pi_p", num(closed)}, {"pi_p_quad", num(quad)}, {"difference", num(diff)}});
    return diff <= 10.0 * tol ? kOk : kVerificationFailed;
}

int run_wirtinger(const std::string& weight_arg, double p, double length, double tol, bool csv)
{
    Weight w;
    pc_weight* raw = nullptr;
    if (weight_arg.rfind("exp:", 0) == 0) {
        double kappa = 0.0;
        try {
            kappa = std::stod(weight_arg.substr(4));
        } catch (...) {
            throw CLI::ValidationError("--weight", "expected exp:<kappa>");
        }
        check(pc_weight_exponential(length, kappa, &raw));
    } else if (weight_arg.rfind("spline:", 0) == 0) {
        check(pc_weight_read_csv(weight_arg.substr(7).c_str(), &raw));
    } else {
        throw CLI::ValidationError("--weight", "expected exp:<kappa> or spline:<file>");
    }
    w.reset(raw);

    pc_eigen1d* n_raw = nullptr;
    pc_eigen1d* d_raw = nullptr;
    check(pc_neumann_first(w.get(), p, tol, &n_raw));
    Eigen1d neumann(n_raw);
    check(pc_dirichlet_first(w.get(), p, tol, &d_raw));
    Eigen1d dirichlet(d_raw);

    const double L = pc_weight_length(w.get());
    double sharp = 0.0;
    check(pc_sharp_constant_1d(p, L, &sharp));
    const double ln = pc_eigen1d_lambda(neumann.get());
    const double ld = pc_eigen1d_lambda(dirichlet.get());
    const bool log_concave = pc_weight_is_log_concave(w.get()) != 0;
    const bool bound_holds = !log_concave || ln >= sharp * (1.0 - 1e-3);
    const bool exponential = pc_weight_is_exponential(w.get()) != 0;
    const double gap = std::abs(ln - ld) / ld;
    const bool gap_ok = !exponential || gap < 1e-4;

    if (csv) {
        const size_t n = pc_eigen1d_size(neumann.get());
        std::vector<double> xs(n), us(n);
        check(pc_eigen1d_samples(neumann.get(), xs.data(), us.data(), n));
        std::vector<std::pair<double, double>> rows(n);
        for (size_t i = 0; i < n; ++i)
            rows[i] = {xs[i], us[i]};
        write_csv(std::cout, "x,u", rows);
    } else {
        Json j{{"weight", weight_arg},
               {"p", num(p)},
               {"length", num(L)},
               {"lambda_neumann", num(ln)},
               {"interior_zero", num(pc_eigen1d_interior_zero(neumann.get()))},
               {"lambda_dirichlet", num(ld)}};
        if (exponential)
            j["relative_gap"] = num(gap);
        j["sharp"] = num(sharp);
        j["log_concave"] = log_concave;
        j["bound_holds"] = bound_holds;
        emit(j);
    }
    return bound_holds && gap_ok ? kOk : kVerificationFailed;
}

int run_rearrange(const std::string& input, double p, const std::string& output, bool csv, double kmin, double kmax,
                  double kstep)
{
    if (!(kstep > 0.0) || kmax < kmin)
        throw CLI::ValidationError("--kappa-step", "needs kappa-min <= kappa-max and a positive step");
    pc_pwl* raw = nullptr;
    check(pc_pwl_read_csv(input.c_str(), &raw));
    Pwl u(raw);
    check(pc_pwl_rearrange(u.get(), &raw));
    Pwl sharp_u(raw);
    const auto points = pwl_points(sharp_u.get());

    std::vector<double> kappas;
    const long steps = std::lround((kmax - kmin) / kstep);
    for (long i = 0; i <= steps; ++i)
        kappas.push_back(kmin + kstep * static_cast<double>(i));
    pc_drift_bound_report rep{};
    check(pc_verify_drift_bound(u.get(), p, kappas.data(), kappas.size(), 1e-12, &rep));

    if (!output.empty()) {
        std::ofstream out(output);
        if (!out)
            throw LibraryError{PC_IO, "cannot write " + output};
        write_csv(out, "x,value", points);
    }
    if (csv) {
        write_csv(std::cout, "x,value", points);
    } else {
        double norm_u = 0.0, norm_r = 0.0;
        check(pc_pwl_lp_norm_p(u.get(), p, &norm_u));
        check(pc_pwl_lp_norm_p(sharp_u.get(), p, &norm_r));
        Json pts = Json::array();
        for (auto [x, v] : points)
            pts.push_back(Json::array({num(x), num(v)}));
        emit(Json{{"input", input},
                  {"p", num(p)},
                  {"lp_norm_p", num(norm_u)},
                  {"lp_norm_p_rearranged", num(norm_r)},
                  {"rearranged", pts},
                  {"drift_bound",
                   {{"sharp", num(rep.sharp)},
                    {"min_margin", num(rep.min_margin)},
                    {"worst_kappa", num(rep.worst_kappa)},
                    {"kappas", rep.n_kappas},
                    {"violations", rep.n_violations},
                    {"holds", rep.holds != 0}}}});
    }
    return rep.holds ? kOk : kVerificationFailed;
}

int run_counterexample(double p, double eps)
{
    pc_drift_counterexample r{};
    check(pc_drift_counterexample_run(p, eps, &r));
    emit(Json{{"p", num(p)},
              {"eps", num(eps)},
              {"lhs", num(r.lhs)},
              {"rhs_rearranged", num(r.rhs_rearranged)},
              {"sharp", num(r.sharp)},
              {"rearranged_inequality_holds", r.rearranged_inequality_holds != 0},
              {"refined_inequality_holds", r.refined_inequality_holds != 0}});
    return r.refined_inequality_holds ? kOk : kVerificationFailed;
}

Json polygon_json(const double* xy, size_t n)
{
    Json v = Json::array();
    for (size_t i = 0; i < n; ++i)
        v.push_back(Json::array({num(xy[2 * i]), num(xy[2 * i + 1])}));
    return v;
}

int run_slice(const std::string& path, const std::string& field_src, double eps, double p, double tol, int max_depth,
              int samples)
{
    pc_polygon* poly_raw = nullptr;
    check(pc_polygon_read(path.c_str(), &poly_raw));
    Polygon poly(poly_raw);
    pc_field* field_raw = nullptr;
    check(pc_field_parse(field_src.c_str(), &field_raw));
    Field field(field_raw);

    size_t needed = 0;
    pc_field_print(field.get(), nullptr, 0, &needed);
    std::string canonical(needed, '\0');
    check(pc_field_print(field.get(), canonical.data(), needed, &needed));
    canonical.pop_back();

    double shift = 0.0;
    check(pc_balance_shift(poly.get(), field.get(), p, 1e-12, &shift));
    pc_decomposition* dec_raw = nullptr;
    check(pc_decompose(poly.get(), field.get(), shift, p, eps, tol, max_depth, &dec_raw));
    Decomposition dec(dec_raw);

    const double total = pc_polygon_area(poly.get());
    const double diam = pc_polygon_diameter(poly.get());
    const double moment_tol = pc_decomposition_moment_tolerance(dec.get());
    bool widths_ok = true, moments_ok = true, lengths_ok = true, concave_ok = true;
    double area_sum = 0.0;
    Json pieces = Json::array();
    for (size_t i = 0; i < pc_decomposition_size(dec.get()); ++i) {
        pc_piece_info info{};
        check(pc_decomposition_piece(dec.get(), i, &info));
        std::vector<double> xy(2 * info.n_vertices);
        check(pc_decomposition_piece_vertices(dec.get(), i, xy.data(), info.n_vertices));
        int concave = 0;
        check(pc_decomposition_piece_log_concave(dec.get(), i, static_cast<size_t>(samples), &concave));
        area_sum += info.area;
        widths_ok = widths_ok && info.width <= eps;
        moments_ok = moments_ok && std::abs(info.p_moment_residual) <= moment_tol;
        lengths_ok = lengths_ok && info.length <= diam * (1.0 + 1e-12);
        concave_ok = concave_ok && concave != 0;
        pieces.push_back(Json{{"vertices", polygon_json(xy.data(), info.n_vertices)},
                              {"area", num(info.area)},
                              {"width", num(info.width)},
                              {"length", num(info.length)},
                              {"axis_theta", num(info.axis_theta)},
                              {"moment_residual", num(info.p_moment_residual)},
                              {"log_concave", concave != 0}});
    }
    const double defect = std::abs(area_sum - total) / total;
    const bool tiling_ok = defect < 1e-9;

    std::vector<double> xy(2 * pc_polygon_size(poly.get()));
    check(pc_polygon_vertices(poly.get(), xy.data(), pc_polygon_size(poly.get())));
    emit(Json{{"polygon", path},
              {"vertices", polygon_json(xy.data(), pc_polygon_size(poly.get()))},
              {"field", canonical},
              {"p", num(p)},
              {"eps", num(eps)},
              {"shift", num(shift)},
              {"area", num(total)},
              {"diameter", num(diam)},
              {"moment_tolerance", num(moment_tol)},
              {"area_defect", num(defect)},
              {"pieces", pieces},
              {"checks",
               {{"tiling", tiling_ok},
                {"widths", widths_ok},
                {"moments", moments_ok},
                {"lengths", lengths_ok},
                {"log_concave", concave_ok}}}});
    return tiling_ok && widths_ok && moments_ok && lengths_ok && concave_ok ? kOk : kVerificationFailed;
}

int run_eigen2d(const std::string& path, double p, double h, bool check_bound, double tol)
{
    pc_polygon* raw = nullptr;
    check(pc_polygon_read(path.c_str(), &raw));
    Polygon poly(raw);
    pc_bound_report r{};
    check(pc_check_bound(poly.get(), p, h, tol, &r));
    Json j{{"polygon", path},         {"p", num(p)},          {"h", num(h)},
           {"mu", num(r.mu_est)},     {"t", num(r.shift_t)},  {"d", num(r.d)},
           {"bound", num(r.bound)},   {"ratio", num(r.ratio)}, {"iterations", r.iterations},
           {"converged", r.converged != 0}};
    if (check_bound)
        j["bound_holds"] = r.holds != 0;
    emit(j);
    return !check_bound || r.holds ? kOk : kVerificationFailed;
}

int run_sharpness(double d, const std::vector<double>& deltas, double p, bool csv)
{
    std::vector<pc_sharpness_row> rows(deltas.size());
    int monotone = 0, converges = 0;
    check(pc_thin_slab_sharpness(d, deltas.data(), deltas.size(), p, rows.data(), &monotone, &converges));
    if (csv) {
        std::cout << "delta,h,mu_est,bound,ratio\n";
        for (const auto& r : rows)
            std::cout << fmt(r.delta) << ',' << fmt(r.h) << ',' << fmt(r.mu_est) << ',' << fmt(r.bound) << ','
                      << fmt(r.ratio) << '\n';
    } else {
        Json table = Json::array();
        for (const auto& r : rows)
            table.push_back(Json{{"delta", num(r.delta)},
                                 {"h", num(r.h)},
                                 {"mu_est", num(r.mu_est)},
                                 {"bound", num(r.bound)},
                                 {"ratio", num(r.ratio)}});
        emit(Json{{"d", num(d)},
                  {"p", num(p)},
                  {"rows", table},
                  {"monotone", monotone != 0},
                  {"converges", converges != 0}});
    }
    return monotone && converges ? kOk : kVerificationFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sharp Poincare constant verifications for convex domains"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    double p = 2.0, eps = 0.0, h = 0.0, length = 1.0, d = 1.0;
    std::string weight, input, output, polygon, field;
    bool csv = false, check_bound = false;
    double kmin = -10.0, kmax = 10.0, kstep = 0.1;
    int max_depth = 40, samples = 64;
    std::vector<double> deltas;
    // Each subcommand gets its own tolerance: default_val writes through immediately.
    double pip_tol = 0.0, wirt_tol = 0.0, slice_tol = 0.0, eig_tol = 0.0;

    auto* pip = app.add_subcommand("pip", "pi_p in closed form and by quadrature");
    pip->add_option("--p", p, "Exponent")->required()->check(exponent_check);
    pip->add_option("--tol", pip_tol, "Quadrature tolerance")->default_val(1e-10)->check(CLI::PositiveNumber);

    auto* wirt = app.add_subcommand("wirtinger", "Weighted 1D Neumann and Dirichlet eigenvalues");
    wirt->add_option("--weight", weight, "exp:<kappa> or spline:<file with x,log_f>")->required();
    wirt->add_option("--p", p, "Exponent")->required()->check(exponent_check);
    wirt->add_option("--length", length, "Interval length for exponential weights")
        ->default_val(1.0)
        ->check(CLI::PositiveNumber);
    wirt->add_option("--tol", wirt_tol, "Relative eigenvalue tolerance")->default_val(1e-11)->check(CLI::PositiveNumber);
    wirt->add_flag("--csv", csv, "Emit the Neumann eigenfunction as x,u CSV");

    auto* rearr = app.add_subcommand("rearrange", "Symmetric decreasing rearrangement and drift-energy bound");
    rearr->add_option("--input", input, "CSV with columns x,value")->required();
    rearr->add_option("--p", p, "Exponent")->default_val(2.0)->check(exponent_check);
    rearr->add_option("--output", output, "Write the rearranged function as CSV");
    rearr->add_flag("--csv", csv, "Print the rearranged function as CSV instead of JSON");
    rearr->add_option("--kappa-min", kmin, "Smallest drift")->default_val(-10.0);
    rearr->add_option("--kappa-max", kmax, "Largest drift")->default_val(10.0);
    rearr->add_option("--kappa-step", kstep, "Drift grid step")->default_val(0.1);

    auto* counter = app.add_subcommand("counterexample", "Drift inequality counterexample record");
    counter->add_option("--p", p, "Exponent")->required()->check(exponent_check);
    counter->add_option("--eps", eps, "Asymmetry parameter in (0, 1)")->required()->check(CLI::Range(0.0, 1.0));

    auto* slice = app.add_subcommand("slice", "Balanced decomposition into thin convex pieces");
    slice->add_option("--polygon", polygon, "Polygon file, one \"x y\" vertex per line")->required();
    slice->add_option("--field", field, "Expression in x and y")->required();
    slice->add_option("--eps", eps, "Target piece width")->required()->check(CLI::PositiveNumber);
    slice->add_option("--p", p, "Exponent")->default_val(2.0)->check(exponent_check);
    slice->add_option("--tol", slice_tol, "Relative moment tolerance")->default_val(1e-10)->check(CLI::PositiveNumber);
    slice->add_option("--max-depth", max_depth, "Recursion limit")->default_val(40)->check(CLI::Range(1, 200));
    slice->add_option("--profile-samples", samples, "Chord samples per piece")
        ->default_val(64)
        ->check(CLI::Range(8, 100000));

    auto* eig = app.add_subcommand("eigen2d", "First nontrivial Neumann eigenvalue on a polygon");
    eig->set_help_flag("--help", "Print this help message and exit"); // -h would collide with --h
    eig->add_option("--polygon", polygon, "Polygon file, one \"x y\" vertex per line")->required();
    eig->add_option("--p", p, "Exponent (>= 2)")->required()->check(CLI::Range(2.0, 1e6));
    eig->add_option("--h", h, "Mesh pitch")->required()->check(CLI::PositiveNumber);
    eig->add_option("--tol", eig_tol, "Relative gradient tolerance")->default_val(1e-6)->check(CLI::PositiveNumber);
    eig->add_flag("--check-bound", check_bound, "Fail when the eigenvalue is below the diameter bound");

    auto* sharp = app.add_subcommand("sharpness", "Thin-slab eigenvalues against the diameter bound");
    sharp->add_option("--d", d, "Slab length")->default_val(1.0)->check(CLI::PositiveNumber);
    sharp->add_option("--deltas", deltas, "Decreasing slab thicknesses, comma separated")
        ->required()
        ->delimiter(',');
    sharp->add_option("--p", p, "Exponent (>= 2)")->required()->check(CLI::Range(2.0, 1e6));
    sharp->add_flag("--csv", csv, "Emit CSV");

    try {
        app.parse(argc, argv);
        if (*pip)
            return run_pip(p, pip_tol);
        if (*wirt)
            return run_wirtinger(weight, p, length, wirt_tol, csv);
        if (*rearr)
            return run_rearrange(input, p, output, csv, kmin, kmax, kstep);
        if (*counter)
            return run_counterexample(p, eps);
        if (*slice)
            return run_slice(polygon, field, eps, p, slice_tol, max_depth, samples);
        if (*eig)
            return run_eigen2d(polygon, p, h, check_bound, eig_tol);
        if (*sharp)
            return run_sharpness(d, deltas, p, csv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    } catch (const LibraryError& e) {
        std::cerr << "error: " << e.message << '\n';
        const bool bad_input = e.status == PC_IO || e.status == PC_PARSE || e.status == PC_INVALID_ARGUMENT ||
                               e.status == PC_DOMAIN;
        return bad_input ? kUsage : kVerificationFailed;
    }
    return kUsage;
}
