#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "topocorr/scan.hpp"

namespace topocorr {

namespace {

std::string fmt_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

template <typename T, typename Name>
std::string join(const std::vector<T>& items, Name name) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += name(items[i]);
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing: " + std::strerror(errno));
  }
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace

std::string format_csv(const std::vector<SweepRow>& rows, const SweepConfig& c) {
  std::ostringstream os;
  os << "# topocorr sweep\n";
  os << "# beta_min=" << fmt_number(c.beta_min) << '\n';
  os << "# beta_max=" << fmt_number(c.beta_max) << '\n';
  os << "# steps=" << c.steps << '\n';
  os << "# L=" << (c.L ? std::to_string(*c.L) : std::string("none")) << '\n';
  os << "# ising_size=" << c.ising_size << '\n';
  os << "# methods=" << join(c.methods, [](IsingMethod m) { return std::string(to_string(m)); })
     << '\n';
  os << "# pair_kinds="
     << join(c.pair_kinds, [](SpinPairKind k) { return std::string(to_string(k)); }) << '\n';
  os << "# output_path=" << c.output_path << '\n';
  os << "# emit_svg=" << (c.emit_svg ? "true" : "false") << '\n';
  os << "# lambda0=" << fmt_number(c.lambda0) << '\n';
  os << "# lambda1=" << fmt_number(c.lambda1) << '\n';

  const auto& cols = numeric_columns();
  for (const auto& name : cols) os << name << ',';
  os << "global_method,local_method,finite_size_flag\n";
  for (const SweepRow& r : rows) {
    for (const auto& name : cols) os << fmt_number(column_value(r, name)) << ',';
    os << to_string(r.global_method) << ',' << to_string(r.local_method) << ','
       << (r.finite_size_flag ? 1 : 0) << '\n';
  }
  return os.str();
}

void write_csv(const std::vector<SweepRow>& rows, const SweepConfig& config,
               const std::string& path) {
  write_file(path, format_csv(rows, config));
}

void render_svg(const std::vector<SweepRow>& rows, const std::vector<std::string>& columns,
                const std::string& path) {
  if (rows.size() < 2) throw std::invalid_argument("plot needs at least 2 rows");
  if (columns.empty()) throw std::invalid_argument("plot needs at least one column");

  constexpr double width = 640, height = 420;
  constexpr double left = 70, right = 20, top = 30, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  const double x0 = rows.front().beta;
  const double x1 = rows.back().beta;
  double y0 = 0.0, y1 = 0.0;
  bool first = true;
  for (const auto& col : columns) {
    for (const auto& r : rows) {
      const double v = column_value(r, col);
      if (!std::isfinite(v)) continue;
      y0 = first ? v : std::min(y0, v);
      y1 = first ? v : std::max(y1, v);
      first = false;
    }
  }
  if (y1 - y0 < 1e-12) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * plot_w; };
  auto sy = [&](double y) { return top + (y1 - y) / (y1 - y0) * plot_h; };

  static const char* dashes[] = {"", "8,5", "2,4", "10,4,2,4"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
     << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int t = 0; t <= 5; ++t) {
    const double bx = x0 + (x1 - x0) * t / 5.0;
    const double vy = y0 + (y1 - y0) * t / 5.0;
    os << "<text x=\"" << fmt_number(sx(bx)) << "\" y=\"" << height - bottom + 18
       << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt_number(std::round(bx * 1e4) / 1e4)
       << "</text>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << fmt_number(sy(vy) + 4)
       << "\" font-size=\"11\" text-anchor=\"end\">" << fmt_number(std::round(vy * 1e4) / 1e4)
       << "</text>\n";
  }
  os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15
     << "\" font-size=\"14\" text-anchor=\"middle\">beta</text>\n";
  os << "<text x=\"18\" y=\"" << top + plot_h / 2 << "\" font-size=\"14\" text-anchor=\"middle\""
     << " transform=\"rotate(-90 18 " << top + plot_h / 2 << ")\">";
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? ", " : "") << columns[i];
  os << "</text>\n";

  const double beta_c = critical_beta();
  if (beta_c >= x0 && beta_c <= x1) {
    os << "<line class=\"beta-c\" x1=\"" << fmt_number(sx(beta_c)) << "\" y1=\"" << top
       << "\" x2=\"" << fmt_number(sx(beta_c)) << "\" y2=\"" << top + plot_h
       << "\" stroke=\"gray\" stroke-dasharray=\"3,3\"/>\n";
    os << "<text x=\"" << fmt_number(sx(beta_c) + 4) << "\" y=\"" << top + 14
       << "\" font-size=\"11\" fill=\"gray\">beta_c=" << fmt_number(std::round(beta_c * 1e4) / 1e4)
       << "</text>\n";
  }

  for (std::size_t i = 0; i < columns.size(); ++i) {
    os << "<polyline class=\"curve\" data-column=\"" << columns[i]
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"";
    if (const char* d = dashes[i % 4]; *d) os << " stroke-dasharray=\"" << d << '"';
    os << " points=\"";
    bool any = false;
    for (const auto& r : rows) {
      const double v = column_value(r, columns[i]);
      if (!std::isfinite(v)) continue;
      os << (any ? " " : "") << fmt_number(sx(r.beta)) << ',' << fmt_number(sy(v));
      any = true;
    }
    os << "\"/>\n";
    const double ly = top + 16 + 16 * static_cast<double>(i);
    os << "<line x1=\"" << left + plot_w - 150 << "\" y1=\"" << ly << "\" x2=\""
       << left + plot_w - 120 << "\" y2=\"" << ly << "\" stroke=\"black\"";
    if (const char* d = dashes[i % 4]; *d) os << " stroke-dasharray=\"" << d << '"';
    os << "/>\n<text x=\"" << left + plot_w - 115 << "\" y=\"" << ly + 4
       << "\" font-size=\"11\">" << columns[i] << "</text>\n";
  }
  os << "</svg>\n";
  write_file(path, os.str());
}

}  // namespace topocorr
