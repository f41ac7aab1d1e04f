#pragma once

// blochprop <simulate|extrema|period|cases|average> [flags]
//
// Exit status: 0 success, 1 invalid input or degenerate rotation, 2 I/O failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blochprop/analysis.hpp"
#include "blochprop/expr.hpp"
#include "blochprop/io.hpp"
#include "blochprop/propagation.hpp"
#include "blochprop/rotations.hpp"

namespace blochprop::cli {

class io_failure : public std::runtime_error {
public:
  explicit io_failure(const std::string& what) : std::runtime_error(what) {}
};

enum class Format { csv, svg, json };

struct RunConfig {
  std::string vec = "1,0,0";
  std::string err = "0,0.2,0";
  std::string step = "pi/100,pi/100,pi/100";
  std::string angles = "1,1,1";
  std::int64_t steps = 200;
  std::uint64_t seed = 42;
  int starts = 1000;
  unsigned workers = 1;
  double tol = 1e-8;
  Pipeline pipeline = Pipeline::euler;
  std::string output = "-";
  Format format = Format::csv;
};

namespace detail {

inline CartesianVector parse_vector(const std::string& s) {
  const auto v = parse_triple(s);
  return {v[0], v[1], v[2]};
}

inline EulerAngles parse_euler(const std::string& s) {
  const auto v = parse_triple(s);
  return {v[0], v[1], v[2]};
}

inline ErrorAngles parse_error(const std::string& s) {
  const auto v = parse_triple(s);
  return {v[0], v[1], v[2]};
}

// Writes to stdout for "-" or an empty path, otherwise to the named file.
inline void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(out);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io_failure("cannot open '" + path + "' for writing");
  write(f);
  f.flush();
  if (!f) throw io_failure("write to '" + path + "' failed");
}

}  // namespace detail

inline int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const CartesianVector v = detail::parse_vector(cfg.vec);
  const CartesianVector v_err = rotate_euler(v, euler_matrix(detail::parse_error(cfg.err).as_euler()));
  const ErrorSeries series = simulate(v, v_err, detail::parse_euler(cfg.step), cfg.steps, cfg.pipeline);
  detail::emit(cfg.output, out, [&](std::ostream& os) {
    switch (cfg.format) {
      case Format::csv: write_csv(os, series); break;
      case Format::svg: write_svg(os, series, std::string("pipeline ") + to_string(cfg.pipeline)); break;
      case Format::json: os << to_json(series).dump(2) << '\n'; break;
    }
  });
  return 0;
}

inline int cmd_extrema(const RunConfig& cfg, std::ostream& out) {
  const CartesianVector base = detail::parse_vector(cfg.vec);
  const EulerAngles rates = detail::parse_euler(cfg.angles);
  SearchOptions opts;
  opts.num_starts = cfg.starts;
  opts.seed = cfg.seed;
  opts.workers = cfg.workers;
  std::vector<ExtremumResult> results;
  for (Mode m : {Mode::max, Mode::min})
    for (Target t : {Target::elevation, Target::azimuth}) results.push_back(find_extremum(t, m, base, rates, opts));
  detail::emit(cfg.output, out, [&](std::ostream& os) {
    if (cfg.format == Format::csv)
      write_extrema_csv(os, results);
    else
      os << extrema_report_json(results).dump(2) << '\n';
  });
  return 0;
}

inline int cmd_period(const RunConfig& cfg, std::ostream& out) {
  const EulerAngles rates = detail::parse_euler(cfg.angles);
  const ErrorAngles err = detail::parse_error(cfg.err);
  const CartesianVector base = detail::parse_vector(cfg.vec);
  const double analytic = period(rates);
  out << "analytic " << format_double(analytic) << '\n';
  for (Target t : {Target::elevation, Target::azimuth}) {
    const PeriodEstimate est = estimate_period_numeric(t, err, rates, base);
    out << "numeric_" << (t == Target::azimuth ? "az " : "el ") << format_double(est.value)
        << (est.degenerate ? " (constant signal)" : "") << '\n';
    out << "difference_" << (t == Target::azimuth ? "az " : "el ") << format_double(est.value - analytic) << '\n';
  }
  return 0;
}

inline int cmd_average(const RunConfig& cfg, std::ostream& out) {
  const EulerAngles rates = detail::parse_euler(cfg.angles);
  const ErrorAngles err = detail::parse_error(cfg.err);
  const CartesianVector base = detail::parse_vector(cfg.vec);
  require_unit(base, "average: base vector");
  out << "azimuth " << format_double(time_averaged_error(Target::azimuth, err, rates, base, cfg.tol)) << '\n';
  out << "elevation " << format_double(time_averaged_error(Target::elevation, err, rates, base, cfg.tol)) << '\n';
  return 0;
}

// Per-case series (CSV + SVG) and a summary table in the output directory.
inline int cmd_cases(const RunConfig& cfg, std::ostream& out) {
  namespace fs = std::filesystem;
  const fs::path dir = cfg.output == "-" || cfg.output.empty() ? fs::path("cases") : fs::path(cfg.output);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw io_failure("cannot create output directory '" + dir.string() + "'");

  SearchOptions opts;
  opts.num_starts = cfg.starts;
  opts.seed = cfg.seed;
  opts.workers = cfg.workers;

  std::vector<CaseReport> reports;
  for (const CaseSpec& spec : builtin_cases()) {
    reports.push_back(run_case_study(spec, opts));
    const CaseReport& r = reports.back();
    detail::emit((dir / (spec.label + ".csv")).string(), out, [&](std::ostream& os) { write_csv(os, r.series); });
    detail::emit((dir / (spec.label + ".svg")).string(), out,
                 [&](std::ostream& os) { write_svg(os, r.series, spec.label); });
  }

  auto summary_csv = [&](std::ostream& os) {
    os << "label,phi,theta,psi,literal_assignment,stated_period,analytic_period,numeric_period,max_az,max_el,min_az,"
          "min_el,reference_max_el\n";
    for (const CaseReport& r : reports) {
      const EulerAngles& a = r.spec.rates;
      os << r.spec.label << ',' << format_double(a.phi) << ',' << format_double(a.theta) << ','
         << format_double(a.psi) << ',' << (r.spec.literal_assignment ? "true" : "false") << ','
         << format_double(r.spec.stated_period) << ',' << format_double(r.analytic_period) << ','
         << format_double(r.numeric_period) << ',' << format_double(r.max_az.value) << ','
         << format_double(r.max_el.value) << ',' << format_double(r.min_az.value) << ','
         << format_double(r.min_el.value) << ',' << format_double(r.spec.reference_max_elevation) << '\n';
    }
  };
  auto summary_json = [&](std::ostream& os) {
    nlohmann::ordered_json j;
    j["schema_version"] = report_schema_version;
    j["seed"] = cfg.seed;
    j["num_starts"] = cfg.starts;
    auto arr = nlohmann::ordered_json::array();
    for (const CaseReport& r : reports) {
      nlohmann::ordered_json c;
      c["label"] = r.spec.label;
      c["stated_ratio_psi_theta_phi"] = r.spec.stated;
      c["rates"] = to_json(r.spec.rates);
      c["literal_assignment"] = r.spec.literal_assignment;
      c["stated_period"] = r.spec.stated_period_expr;
      c["analytic_period"] = r.analytic_period;
      c["numeric_period"] = r.numeric_period;
      c["extrema"] = {to_json(r.max_el), to_json(r.max_az), to_json(r.min_el), to_json(r.min_az)};
      arr.push_back(std::move(c));
    }
    j["cases"] = std::move(arr);
    os << j.dump(2) << '\n';
  };
  detail::emit((dir / "summary.csv").string(), out, summary_csv);
  detail::emit((dir / "summary.json").string(), out, summary_json);

  out << "label        rates(phi,theta,psi)      period        max_el        max_az        min_el  min_az\n";
  for (const CaseReport& r : reports) {
    std::ostringstream rates;
    rates << '(' << display_value(r.spec.rates.phi) << ',' << display_value(r.spec.rates.theta) << ','
          << display_value(r.spec.rates.psi) << ')';
    out << r.spec.label << "  " << rates.str() << "  " << display_value(r.analytic_period) << "  "
        << display_value(r.max_el.value) << "  " << display_value(r.max_az.value) << "  "
        << display_value(r.min_el.value) << "  " << display_value(r.min_az.value) << '\n';
  }
  return 0;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Error propagation of perturbed qubits under repeated Bloch-sphere rotations", "blochprop"};
  app.require_subcommand(1);
  RunConfig cfg;

  const std::map<std::string, Pipeline> pipelines{
      {"su2", Pipeline::su2}, {"euler", Pipeline::euler}, {"closed", Pipeline::closed}};
  const std::map<std::string, Format> formats{{"csv", Format::csv}, {"svg", Format::svg}, {"json", Format::json}};

  auto add_vec = [&](CLI::App* c) { c->add_option("--vec", cfg.vec, "base vector x,y,z")->capture_default_str(); };
  auto add_err = [&](CLI::App* c) {
    c->add_option("--err", cfg.err, "error angles eps_x,eps_y,eps_z")->capture_default_str();
  };
  auto add_angles = [&](CLI::App* c) {
    c->add_option("--angles", cfg.angles, "rotation rates phi,theta,psi")->capture_default_str();
  };
  auto add_search = [&](CLI::App* c) {
    c->add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
    c->add_option("--starts", cfg.starts, "multi-start count")->capture_default_str()->check(CLI::PositiveNumber);
    c->add_option("--workers", cfg.workers, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  };
  auto add_output = [&](CLI::App* c) {
    c->add_option("--output", cfg.output, "output path, '-' for stdout")->capture_default_str();
    c->add_option("--format", cfg.format, "csv|svg|json")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };

  CLI::App* sim = app.add_subcommand("simulate", "iterate a finite rotation step and record the discrepancies");
  add_vec(sim);
  add_err(sim);
  sim->add_option("--step", cfg.step, "step angles phi,theta,psi")->capture_default_str();
  sim->add_option("--steps", cfg.steps, "number of steps")->capture_default_str()->check(CLI::NonNegativeNumber);
  sim->add_option("--pipeline", cfg.pipeline, "su2|euler|closed")
      ->transform(CLI::CheckedTransformer(pipelines, CLI::ignore_case));
  add_output(sim);

  CLI::App* ext = app.add_subcommand("extrema", "max/min discrepancies over error angles and time");
  add_vec(ext);
  add_angles(ext);
  add_search(ext);
  add_output(ext);

  CLI::App* per = app.add_subcommand("period", "analytic and numeric period of the discrepancy curves");
  add_vec(per);
  add_err(per);
  per->add_option("--angles", cfg.angles, "rotation rates phi,theta,psi")->required();

  CLI::App* cas = app.add_subcommand("cases", "run the built-in case studies");
  add_search(cas);
  cas->add_option("--output", cfg.output, "output directory")->default_str("cases");

  CLI::App* avg = app.add_subcommand("average", "time-averaged discrepancy over one period");
  add_vec(avg);
  add_err(avg);
  add_angles(avg);
  avg->add_option("--tol", cfg.tol, "absolute quadrature tolerance")->capture_default_str()->check(
      CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "blochprop: " << e.what() << '\n';
    return 1;
  }

  if (ext->parsed() && ext->count("--format") == 0) cfg.format = Format::json;

  try {
    if (sim->parsed()) return cmd_simulate(cfg, out);
    if (ext->parsed()) {
      if (cfg.format == Format::svg) throw std::invalid_argument("extrema: --format must be json or csv");
      return cmd_extrema(cfg, out);
    }
    if (per->parsed()) return cmd_period(cfg, out);
    if (cas->parsed()) return cmd_cases(cfg, out);
    if (avg->parsed()) return cmd_average(cfg, out);
  } catch (const io_failure& e) {
    err << "blochprop: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "blochprop: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace blochprop::cli
