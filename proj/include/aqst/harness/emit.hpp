// Copyright 2026 The AQST Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <locale>
#include <sstream>
#include <string>
#include <vector>

#include "aqst/error.hpp"
#include "aqst/harness/record.hpp"
#include "aqst/harness/sweeps.hpp"

namespace aqst {

enum class Format { kCsv, kJson, kSvg };

inline Format parse_format(const std::string& s) {
  if (s == "csv") return Format::kCsv;
  if (s == "json") return Format::kJson;
  if (s == "svg") return Format::kSvg;
  throw ConfigError("format: expected csv, json or svg, got '" + s + "'");
}

// Writes the whole file or throws IoError naming the path.
inline void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out << content;
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

namespace emit_detail {

inline std::ostringstream stream() {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  return os;
}

inline std::string num(double v, int prec = 17) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(prec);
  os << v;
  return os.str();
}

inline std::string escape_xml(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '&': o += "&amp;"; break;
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '"': o += "&quot;"; break;
      default: o += c;
    }
  }
  return o;
}

}  // namespace emit_detail

// ------------------------------------------------------------------ SVG

namespace svg {

struct Series {
  std::string name;
  std::vector<double> x, y;
};

inline constexpr int kW = 720, kH = 480, kL = 80, kR = 190, kT = 50, kB = 60;

inline const std::array<const char*, 10>& palette() {
  static const std::array<const char*, 10> p{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                             "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return p;
}

struct Axis {
  double lo = 0, hi = 1;
  bool log = false;
  double map(double v, double a, double b) const {
    const double u = log ? (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo)) : (v - lo) / (hi - lo);
    return a + u * (b - a);
  }
  std::vector<double> ticks() const {
    std::vector<double> t;
    if (log) {
      for (double d = std::floor(std::log10(lo)); d <= std::ceil(std::log10(hi)); d += 1.0) {
        const double v = std::pow(10.0, d);
        if (v >= lo * (1 - 1e-9) && v <= hi * (1 + 1e-9)) t.push_back(v);
      }
      if (t.size() < 2) t = {lo, hi};
    } else {
      for (int i = 0; i <= 5; ++i) t.push_back(lo + (hi - lo) * i / 5.0);
    }
    return t;
  }
};

inline Axis fit_axis(const std::vector<Series>& s, bool use_x, bool log) {
  Axis a;
  a.log = log;
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& c : s)
    for (double v : use_x ? c.x : c.y)
      if (std::isfinite(v) && (!log || v > 0)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
  if (!std::isfinite(lo)) lo = log ? 1 : 0, hi = log ? 10 : 1;
  if (hi == lo) {
    hi = log ? lo * 10 : lo + 1;
    if (!log) lo -= 1e-12;
  }
  a.lo = lo;
  a.hi = hi;
  return a;
}

inline std::string frame(const std::string& title, const std::string& xlabel, const std::string& ylabel, const Axis& ax,
                         const Axis& ay) {
  using emit_detail::escape_xml;
  using emit_detail::num;
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW
     << ' ' << kH << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape_xml(title)
     << "</text>\n";
  os << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR << "\" height=\"" << kH - kT - kB
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ax.ticks()) {
    const double px = ax.map(t, kL, kW - kR);
    os << "<line x1=\"" << num(px, 6) << "\" y1=\"" << kH - kB << "\" x2=\"" << num(px, 6) << "\" y2=\"" << kH - kB + 5
       << "\" stroke=\"black\"/><text x=\"" << num(px, 6) << "\" y=\"" << kH - kB + 18 << "\" text-anchor=\"middle\">"
       << num(t, 4) << "</text>\n";
  }
  for (double t : ay.ticks()) {
    const double py = ay.map(t, kH - kB, kT);
    os << "<line x1=\"" << kL - 5 << "\" y1=\"" << num(py, 6) << "\" x2=\"" << kL << "\" y2=\"" << num(py, 6)
       << "\" stroke=\"black\"/><text x=\"" << kL - 8 << "\" y=\"" << num(py + 4, 6) << "\" text-anchor=\"end\">"
       << num(t, 4) << "</text>\n";
  }
  os << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 15 << "\" text-anchor=\"middle\">" << escape_xml(xlabel)
     << "</text>\n";
  os << "<text x=\"18\" y=\"" << (kT + kH - kB) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << (kT + kH - kB) / 2 << ")\">" << escape_xml(ylabel) << "</text>\n";
  return os.str();
}

// At most max_points samples per curve are drawn.
inline std::string line_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                             const std::vector<Series>& series, bool logx = false, bool logy = false,
                             bool markers = false, std::size_t max_points = 400) {
  using emit_detail::escape_xml;
  using emit_detail::num;
  const Axis ax = fit_axis(series, true, logx), ay = fit_axis(series, false, logy);
  std::string out = frame(title, xlabel, ylabel, ax, ay);
  std::ostringstream os;
  os.imbue(std::locale::classic());
  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& c = series[s];
    const char* col = palette()[s % palette().size()];
    const std::size_t stride = std::max<std::size_t>(1, (c.x.size() + max_points - 1) / max_points);
    os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < c.x.size(); i += stride) {
      if ((logx && c.x[i] <= 0) || (logy && c.y[i] <= 0) || !std::isfinite(c.y[i])) continue;
      os << num(ax.map(c.x[i], kL, kW - kR), 5) << ',' << num(ay.map(c.y[i], kH - kB, kT), 5) << ' ';
    }
    os << "\"/>\n";
    if (markers)
      for (std::size_t i = 0; i < c.x.size(); ++i)
        if ((!logx || c.x[i] > 0) && (!logy || c.y[i] > 0))
          os << "<circle cx=\"" << num(ax.map(c.x[i], kL, kW - kR), 5) << "\" cy=\""
             << num(ay.map(c.y[i], kH - kB, kT), 5) << "\" r=\"3\" fill=\"" << col << "\"/>\n";
    if (s < 24) {
      const int ly = kT + 10 + int(s) * 16;
      os << "<line x1=\"" << kW - kR + 10 << "\" y1=\"" << ly << "\" x2=\"" << kW - kR + 30 << "\" y2=\"" << ly
         << "\" stroke=\"" << col << "\" stroke-width=\"2\"/><text x=\"" << kW - kR + 35 << "\" y=\"" << ly + 4
         << "\">" << escape_xml(c.name) << "</text>\n";
    }
  }
  out += os.str();
  out += "</svg>\n";
  return out;
}

// z is row-major with ys outer. Colour scale is linear in z.
inline std::string heatmap(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                           const std::vector<double>& xs, const std::vector<double>& ys, const std::vector<double>& z,
                           const std::string& zlabel) {
  using emit_detail::escape_xml;
  using emit_detail::num;
  const double zmin = *std::min_element(z.begin(), z.end()), zmax = *std::max_element(z.begin(), z.end());
  auto colour = [&](double v) {
    const double u = zmax > zmin ? (v - zmin) / (zmax - zmin) : 0.5;
    // dark blue -> teal -> yellow
    const int r = int(std::lround(255 * std::clamp(1.6 * u - 0.6, 0.0, 1.0)));
    const int g = int(std::lround(255 * std::clamp(0.15 + 0.8 * u, 0.0, 1.0)));
    const int b = int(std::lround(255 * std::clamp(0.55 - 0.45 * u, 0.0, 1.0)));
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return std::string(buf);
  };
  Axis ax, ay;
  ax.lo = 0;
  ax.hi = double(xs.size());
  ay.lo = 0;
  ay.hi = double(ys.size());
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW
     << ' ' << kH << "\" font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape_xml(title)
     << "</text>\n";
  const double cw = double(kW - kL - kR) / double(xs.size()), ch = double(kH - kT - kB) / double(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double v = z[i * xs.size() + j];
      os << "<rect x=\"" << num(kL + j * cw, 6) << "\" y=\"" << num(kH - kB - (i + 1) * ch, 6) << "\" width=\""
         << num(cw + 0.5, 4) << "\" height=\"" << num(ch + 0.5, 4) << "\" fill=\"" << colour(v) << "\"><title>"
         << num(v, 6) << "</title></rect>\n";
    }
  os << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR << "\" height=\"" << kH - kT - kB
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  const std::size_t sx = std::max<std::size_t>(1, xs.size() / 6), sy = std::max<std::size_t>(1, ys.size() / 6);
  for (std::size_t j = 0; j < xs.size(); j += sx)
    os << "<text x=\"" << num(kL + (j + 0.5) * cw, 6) << "\" y=\"" << kH - kB + 18 << "\" text-anchor=\"middle\">"
       << num(xs[j], 3) << "</text>\n";
  for (std::size_t i = 0; i < ys.size(); i += sy)
    os << "<text x=\"" << kL - 8 << "\" y=\"" << num(kH - kB - (i + 0.5) * ch + 4, 6) << "\" text-anchor=\"end\">"
       << num(ys[i], 3) << "</text>\n";
  os << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 15 << "\" text-anchor=\"middle\">" << escape_xml(xlabel)
     << "</text>\n";
  os << "<text x=\"18\" y=\"" << (kT + kH - kB) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << (kT + kH - kB) / 2 << ")\">" << escape_xml(ylabel) << "</text>\n";
  // colour bar
  const int bx = kW - kR + 30, bh = kH - kT - kB;
  for (int k = 0; k < 50; ++k) {
    const double v = zmin + (zmax - zmin) * (k + 0.5) / 50.0;
    os << "<rect x=\"" << bx << "\" y=\"" << num(kT + bh - (k + 1) * bh / 50.0, 6) << "\" width=\"20\" height=\""
       << num(bh / 50.0 + 0.5, 4) << "\" fill=\"" << colour(v) << "\"/>\n";
  }
  os << "<text x=\"" << bx + 26 << "\" y=\"" << kT + 10 << "\">" << num(zmax, 5) << "</text>\n";
  os << "<text x=\"" << bx + 26 << "\" y=\"" << kT + bh << "\">" << num(zmin, 5) << "</text>\n";
  os << "<text x=\"" << bx + 26 << "\" y=\"" << kT + bh / 2 << "\">" << escape_xml(zlabel) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace svg

// ------------------------------------------------------------ records

inline std::string to_csv(const ResultRecord& r) {
  auto os = emit_detail::stream();
  os << "time_us";
  for (const auto& [k, v] : r.series) os << ',' << k;
  os << '\n';
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    os << r.times[i];
    for (const auto& [k, v] : r.series) os << ',' << v[i];
    os << '\n';
  }
  return os.str();
}

inline std::string to_svg(const ResultRecord& r) {
  std::vector<svg::Series> s;
  for (const auto& [k, v] : r.series)
    if (k == "fidelity" || k.rfind("pop_", 0) == 0 || k == "norm_squared") s.push_back({k, r.times, v});
  std::string title = "run: " + r.metadata.value("instance", std::string("?"));
  return svg::line_plot(title, "time (us)", "fidelity / population", s);
}

inline std::string emit_string(const ResultRecord& r, Format f) {
  switch (f) {
    case Format::kCsv: return to_csv(r);
    case Format::kJson: return to_json(r).dump(2) + "\n";
    case Format::kSvg: return to_svg(r);
  }
  return {};
}

inline void emit(const ResultRecord& r, Format f, const std::string& path) { write_text(path, emit_string(r, f)); }

// ------------------------------------------------------- cascaded sweep

inline json to_json(const Fig2cResult& r) {
  json j;
  j["sweep"] = "fig2c";
  j["axes"] = {{"x", "gamma/Omega"}, {"y", "lambda/kappa_b"},
               {"constraints", "kappa_a = kappa_b = 4 Omega^2 / gamma"}};
  j["lambda_over_kappa_b"] = r.options.lambda_over_kappa_b;
  j["gamma_over_omega"] = r.options.gamma_over_omega;
  j["settings"] = {{"kappa_b_rad_per_us", r.options.kappa_b}, {"t_max_factor", r.options.t_max_factor},
                   {"grid_points", r.options.grid_points},    {"plateau_rel", r.options.plateau_rel},
                   {"seed", r.options.seed}};
  json cells = json::array();
  for (const auto& c : r.cells)
    cells.push_back({{"lambda_over_kappa_b", c.lambda_over_kappa_b},
                     {"gamma_over_omega", c.gamma_over_omega},
                     {"gamma_over_kappa_b", c.gamma_over_kappa_b},
                     {"fidelity", c.fidelity},
                     {"t_stop", c.t_stop},
                     {"t_max", c.t_max},
                     {"plateau", c.plateau},
                     {"oracle_infidelity", c.oracle_infidelity},
                     {"regime", c.regime},
                     {"seed", c.seed}});
  j["cells"] = cells;
  return j;
}

inline std::string to_csv(const Fig2cResult& r) {
  auto os = emit_detail::stream();
  os << "lambda_over_kappa_b,gamma_over_omega,gamma_over_kappa_b,fidelity,infidelity,oracle_infidelity,t_stop,t_max,"
        "plateau,regime\n";
  for (const auto& c : r.cells)
    os << c.lambda_over_kappa_b << ',' << c.gamma_over_omega << ',' << c.gamma_over_kappa_b << ',' << c.fidelity << ','
       << 1.0 - c.fidelity << ',' << c.oracle_infidelity << ',' << c.t_stop << ',' << c.t_max << ','
       << (c.plateau ? 1 : 0) << ',' << c.regime << '\n';
  return os.str();
}

inline std::string to_svg(const Fig2cResult& r) {
  std::vector<double> z;
  for (const auto& c : r.cells) z.push_back(std::log10(std::max(1e-16, 1.0 - c.fidelity)));
  return svg::heatmap("cascaded transfer: log10(1 - F) at convergence", "gamma / Omega", "lambda / kappa_b",
                      r.options.gamma_over_omega, r.options.lambda_over_kappa_b, z, "log10(1-F)");
}

// ----------------------------------------------------------- cQED sweep

inline json set_json(const CqedSet& s) {
  json j = {{"label", s.label},
            {"chi_b_MHz_2pi", s.chi_b / kTwoPi},
            {"Omega_MHz_2pi", s.Omega / kTwoPi},
            {"kappa_MHz_2pi", s.kappa / kTwoPi},
            {"chi_AR_MHz_2pi", s.chi_AR / kTwoPi},
            {"chi_AB_MHz_2pi", s.chi_AB / kTwoPi},
            {"T1_A_us", s.T1_A},
            {"T1_B_us", s.T1_B},
            {"gamma_up_MHz_2pi", (s.gamma_up < 0 ? s.kappa / 100.0 : s.gamma_up) / kTwoPi}};
  if (std::isfinite(s.phi_BI)) j["Phi_BI"] = s.phi_BI;
  return j;
}

inline json to_json(const Fig3cResult& r) {
  json j;
  j["sweep"] = "fig3c";
  j["times_us"] = r.times;
  json curves = json::array();
  for (const auto& c : r.curves)
    curves.push_back({{"set", set_json(c.set)},
                      {"best_avg_fidelity", c.result.best_avg_fidelity},
                      {"best_time_us", c.result.best_time},
                      {"kappa_evaluations", c.kappa_evaluations},
                      {"average_fidelity", c.result.average},
                      {"warnings", c.warnings}});
  j["curves"] = curves;
  return j;
}

inline std::string to_csv(const Fig3cResult& r) {
  auto os = emit_detail::stream();
  os << "time_us";
  for (const auto& c : r.curves) os << ",avg_fidelity[" << c.set.label << ']';
  os << '\n';
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    os << r.times[i];
    for (const auto& c : r.curves) os << ',' << c.result.average[i];
    os << '\n';
  }
  return os.str();
}

inline std::string to_svg(const Fig3cResult& r) {
  std::vector<svg::Series> s;
  for (const auto& c : r.curves) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "chi/2pi=%.3f MHz", c.set.chi_b / kTwoPi);
    s.push_back({buf, r.times, c.result.average});
  }
  return svg::line_plot("cQED transfer: cardinal-average fidelity", "time (us)", "average fidelity", s);
}

inline json to_json(const InsetResult& r) {
  json j;
  j["sweep"] = "fig3c_inset";
  json pts = json::array();
  for (const auto& p : r.points)
    pts.push_back({{"chi_over_kappa", p.chi_over_kappa},
                   {"omega_over_kappa", p.omega_over_kappa},
                   {"infidelity", p.infidelity},
                   {"corrected_infidelity", p.corrected_infidelity},
                   {"mean_phase", p.mean_phase},
                   {"oracle_raw", p.oracle_raw},
                   {"oracle_corrected", p.oracle_corrected},
                   {"t_final", p.t_final}});
  j["points"] = pts;
  json fits = json::array();
  for (const auto& f : r.fits)
    fits.push_back({{"omega_over_kappa", f.omega_over_kappa},
                    {"slope", f.fit.slope},
                    {"intercept", f.fit.intercept},
                    {"prefactor", f.prefactor},
                    {"r2", f.fit.r2}});
  j["fits"] = fits;
  return j;
}

inline std::string to_csv(const InsetResult& r) {
  auto os = emit_detail::stream();
  os << "chi_over_kappa,omega_over_kappa,infidelity,corrected_infidelity,oracle_raw,oracle_corrected\n";
  for (const auto& p : r.points)
    os << p.chi_over_kappa << ',' << p.omega_over_kappa << ',' << p.infidelity << ',' << p.corrected_infidelity << ','
       << p.oracle_raw << ',' << p.oracle_corrected << '\n';
  return os.str();
}

inline std::string to_svg(const InsetResult& r) {
  std::vector<svg::Series> s;
  const std::size_t nx = r.options.chi_over_kappa.size();
  for (std::size_t j = 0; j < r.options.omega_over_kappa.size(); ++j) {
    svg::Series c{"Omega/kappa=" + emit_detail::num(r.options.omega_over_kappa[j], 3), {}, {}};
    for (std::size_t i = 0; i < nx; ++i) {
      c.x.push_back(r.points[j * nx + i].chi_over_kappa);
      c.y.push_back(r.points[j * nx + i].infidelity);
    }
    s.push_back(c);
  }
  svg::Series o{"chi^2/2kappa^2", {}, {}};
  for (std::size_t i = 0; i < nx; ++i) {
    o.x.push_back(r.points[i].chi_over_kappa);
    o.y.push_back(r.points[i].oracle_raw);
  }
  s.push_back(o);
  return svg::line_plot("ideal cQED infidelity", "chi_b / kappa", "1 - F", s, true, true, true);
}

template <class Sweep>
std::string emit_string(const Sweep& r, Format f) {
  switch (f) {
    case Format::kCsv: return to_csv(r);
    case Format::kJson: return to_json(r).dump(2) + "\n";
    case Format::kSvg: return to_svg(r);
  }
  return {};
}

template <class Sweep>
void emit(const Sweep& r, Format f, const std::string& path) {
  write_text(path, emit_string(r, f));
}

}  // namespace aqst
