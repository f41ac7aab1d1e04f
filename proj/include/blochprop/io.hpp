#pragma once

// CSV, SVG and JSON serialization of series and extrema reports.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "blochprop/analysis.hpp"
#include "blochprop/propagation.hpp"

namespace blochprop {

inline constexpr int report_schema_version = 1;

// 17 significant digits, '.' decimal separator regardless of locale.
inline std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

inline void write_csv(std::ostream& os, const ErrorSeries& series) {
  os << "t,delta_az,delta_el\n";
  for (const ErrorSample& s : series.samples)
    os << format_double(s.t) << ',' << format_double(s.delta_az) << ',' << format_double(s.delta_el) << '\n';
}

// Two polylines on [t0, t1] x [0, pi]: azimuth blue, elevation orange.
inline void write_svg(std::ostream& os, const ErrorSeries& series, const std::string& title = {}) {
  constexpr double width = 640, height = 400, margin = 48;
  const double plot_w = width - 2 * margin, plot_h = height - 2 * margin;
  double t0 = 0.0, t1 = 1.0;
  if (!series.samples.empty()) {
    t0 = series.samples.front().t;
    t1 = std::max(series.samples.back().t, t0 + 1e-12);
  }
  auto px = [&](double t) { return margin + plot_w * (t - t0) / (t1 - t0); };
  auto py = [&](double d) { return height - margin - plot_h * d / pi; };
  auto polyline = [&](const char* color, auto pick) {
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series.samples.size(); ++i) {
      if (i) os << ' ';
      os << format_double(px(series.samples[i].t)) << ',' << format_double(py(pick(series.samples[i])));
    }
    os << "\"/>\n";
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty())
    os << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
       << title << "</text>\n";
  os << "<g stroke=\"black\" stroke-width=\"1\">\n"
     << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
     << height - margin << "\"/>\n"
     << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
     << "\"/>\n</g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"11\">\n"
     << "<text x=\"" << margin - 6 << "\" y=\"" << py(0) << "\" text-anchor=\"end\">0</text>\n"
     << "<text x=\"" << margin - 6 << "\" y=\"" << py(pi) + 4 << "\" text-anchor=\"end\">pi</text>\n"
     << "<text x=\"" << margin << "\" y=\"" << height - margin + 16 << "\">" << format_double(t0) << "</text>\n"
     << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 16 << "\" text-anchor=\"end\">"
     << format_double(t1) << "</text>\n"
     << "<text x=\"" << width - margin << "\" y=\"" << margin - 8
     << "\" text-anchor=\"end\"><tspan fill=\"#1f77b4\">azimuth</tspan> <tspan fill=\"#ff7f0e\">elevation</tspan></text>\n"
     << "</g>\n";
  polyline("#1f77b4", [](const ErrorSample& s) { return s.delta_az; });
  polyline("#ff7f0e", [](const ErrorSample& s) { return s.delta_el; });
  os << "</svg>\n";
}

inline nlohmann::ordered_json to_json(const ErrorSeries& series) {
  nlohmann::ordered_json j;
  j["schema_version"] = report_schema_version;
  j["columns"] = {"t", "delta_az", "delta_el"};
  auto rows = nlohmann::ordered_json::array();
  for (const ErrorSample& s : series.samples) rows.push_back({s.t, s.delta_az, s.delta_el});
  j["samples"] = std::move(rows);
  return j;
}

inline nlohmann::ordered_json to_json(CartesianVector v) { return {v.x, v.y, v.z}; }
inline nlohmann::ordered_json to_json(const EulerAngles& a) { return {{"phi", a.phi}, {"theta", a.theta}, {"psi", a.psi}}; }

inline std::string extremum_kind(const ExtremumResult& r) {
  return std::string(to_string(r.mode)) + "_" + (r.target == Target::azimuth ? "az" : "el");
}

inline nlohmann::ordered_json to_json(const ExtremumResult& r) {
  nlohmann::ordered_json j;
  j["kind"] = extremum_kind(r);
  j["value"] = r.value;
  j["at"] = {{"eps_x", r.at[0]}, {"eps_y", r.at[1]}, {"eps_z", r.at[2]}, {"t", r.at[3]}};
  return j;
}

inline nlohmann::ordered_json extrema_report_json(const std::vector<ExtremumResult>& results) {
  nlohmann::ordered_json j;
  j["schema_version"] = report_schema_version;
  if (!results.empty()) {
    j["base_vector"] = to_json(results.front().base);
    j["rates"] = to_json(results.front().rates);
    j["seed"] = results.front().seed;
    j["num_starts"] = results.front().num_starts;
  }
  auto arr = nlohmann::ordered_json::array();
  for (const ExtremumResult& r : results) arr.push_back(to_json(r));
  j["extrema"] = std::move(arr);
  return j;
}

inline void write_extrema_csv(std::ostream& os, const std::vector<ExtremumResult>& results) {
  os << "kind,value,eps_x,eps_y,eps_z,t\n";
  for (const ExtremumResult& r : results) {
    os << extremum_kind(r) << ',' << format_double(r.value);
    for (double x : r.at) os << ',' << format_double(x);
    os << '\n';
  }
}

// Human-readable value: anything below 1e-6 prints as "≈0".
inline std::string display_value(double v) {
  if (std::abs(v) < 1e-6) return "≈0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 10);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace blochprop
