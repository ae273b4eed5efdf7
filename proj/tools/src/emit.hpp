#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace resonance::cli {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Series {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;
  std::vector<double> y;
};

// Header row, then every value as %.17g; non-finite values print as nan/inf.
void write_csv(std::ostream& out, const Table& table);
// Single-series line chart with axis labels and min/max tick values.
void write_svg(std::ostream& out, const Series& series);
// Numbers that JSON cannot carry (nan, inf) become null.
nlohmann::json number(double v);

}  // namespace resonance::cli
