#pragma once

// Plain-text input formats: CSV "x,value" functions, CSV "x,log_f" weights and
// polygon files with one "x y" vertex per line. A non-numeric first line is
// taken as a header; blank lines and lines starting with '#' are skipped.

#include "poincare/geom.hpp"
#include "poincare/pwl.hpp"
#include "poincare/wirtinger1d.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace poincare::io {

/// Two numeric columns per row, separated by a comma or whitespace.
std::vector<std::pair<double, double>> read_columns(std::istream& in, const std::string& source);

PiecewiseLinear read_pwl_csv(const std::string& path);
Weight1D read_weight_csv(const std::string& path);
ConvexPolygon read_polygon(const std::string& path);

void write_pwl_csv(std::ostream& out, const PiecewiseLinear& u);

} // namespace poincare::io
