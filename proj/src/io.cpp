#include "poincare/io.hpp"

#include "poincare/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace poincare::io {

namespace {

bool parse_number(std::string_view s, double& out)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    if (s.empty())
        return false;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && end == s.data() + s.size() && std::isfinite(out);
}

std::ifstream open(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::Io, "cannot open " + path);
    return in;
}

} // namespace

std::vector<std::pair<double, double>> read_columns(std::istream& in, const std::string& source)
{
    std::vector<std::pair<double, double>> rows;
    std::string line;
    int lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const auto nonblank = line.find_first_not_of(" \t");
        if (nonblank == std::string::npos || line[nonblank] == '#')
            continue;
        std::string_view rest(line);
        rest.remove_prefix(nonblank);
        auto sep = rest.find(',');
        if (sep == std::string_view::npos)
            sep = rest.find_first_of(" \t");
        double a = 0.0, b = 0.0;
        const bool ok = sep != std::string_view::npos && parse_number(rest.substr(0, sep), a) &&
                        parse_number(rest.substr(sep + 1), b);
        if (!ok) {
            if (first) {
                first = false;
                continue; // header
            }
            fail(ErrorCode::Io, source + ":" + std::to_string(lineno) + ": expected two numbers");
        }
        first = false;
        rows.emplace_back(a, b);
    }
    return rows;
}

PiecewiseLinear read_pwl_csv(const std::string& path)
{
    auto in = open(path);
    std::vector<double> xs, vs;
    for (auto [x, v] : read_columns(in, path)) {
        xs.push_back(x);
        vs.push_back(v);
    }
    return PiecewiseLinear(std::move(xs), std::move(vs));
}

Weight1D read_weight_csv(const std::string& path)
{
    auto in = open(path);
    std::vector<double> xs, hs;
    for (auto [x, h] : read_columns(in, path)) {
        xs.push_back(x);
        hs.push_back(h);
    }
    return Weight1D::log_linear_spline(std::move(xs), std::move(hs));
}

ConvexPolygon read_polygon(const std::string& path)
{
    auto in = open(path);
    std::vector<Point> pts;
    for (auto [x, y] : read_columns(in, path))
        pts.push_back({x, y});
    return ConvexPolygon(std::move(pts));
}

void write_pwl_csv(std::ostream& out, const PiecewiseLinear& u)
{
    out << "x,value\n";
    char buf[64];
    const auto& xs = u.breakpoints();
    const auto& vs = u.values();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", xs[i], vs[i]);
        out << buf;
    }
}

} // namespace poincare::io
