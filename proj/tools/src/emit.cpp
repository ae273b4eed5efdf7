#include "emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace resonance::cli {
namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t j = 0; j < table.columns.size(); ++j) out << (j ? "," : "") << table.columns[j];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << g17(row[j]);
    out << '\n';
  }
}

void write_svg(std::ostream& out, const Series& s) {
  constexpr double W = 720, H = 440, left = 80, right = 20, top = 40, bottom = 60;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  bool any = false;
  for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
    if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
    if (!any) {
      x0 = x1 = s.x[i];
      y0 = y1 = s.y[i];
      any = true;
    }
    x0 = std::min(x0, s.x[i]);
    x1 = std::max(x1, s.x[i]);
    y0 = std::min(y0, s.y[i]);
    y1 = std::max(y1, s.y[i]);
  }
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (W - left - right); };
  auto py = [&](double y) { return H - bottom - (y - y0) / (y1 - y0) * (H - top - bottom); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
      << ' ' << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape_xml(s.title)
      << "</text>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - right << "\" y2=\"" << H - bottom
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << H - bottom
      << "\" stroke=\"black\"/>\n";
  if (y0 < 0.0 && y1 > 0.0) {
    out << "<line x1=\"" << left << "\" y1=\"" << py(0.0) << "\" x2=\"" << W - right << "\" y2=\"" << py(0.0)
        << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }
  out << "<text x=\"" << left << "\" y=\"" << H - bottom + 18 << "\" font-size=\"11\">" << short_num(x0)
      << "</text>\n";
  out << "<text x=\"" << W - right << "\" y=\"" << H - bottom + 18 << "\" font-size=\"11\" text-anchor=\"end\">"
      << short_num(x1) << "</text>\n";
  out << "<text x=\"" << left - 6 << "\" y=\"" << H - bottom << "\" font-size=\"11\" text-anchor=\"end\">"
      << short_num(y0) << "</text>\n";
  out << "<text x=\"" << left - 6 << "\" y=\"" << top + 10 << "\" font-size=\"11\" text-anchor=\"end\">"
      << short_num(y1) << "</text>\n";
  out << "<text x=\"" << (left + W - right) / 2 << "\" y=\"" << H - 18 << "\" text-anchor=\"middle\" font-size=\"13\">"
      << escape_xml(s.x_label) << "</text>\n";
  out << "<text x=\"18\" y=\"" << (top + H - bottom) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << (top + H - bottom) / 2 << ")\">" << escape_xml(s.y_label) << "</text>\n";
  out << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.2\" points=\"";
  bool first = true;
  for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
    if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", first ? "" : " ", px(s.x[i]), py(s.y[i]));
    out << buf;
    first = false;
  }
  out << "\"/>\n</svg>\n";
}

nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace resonance::cli
