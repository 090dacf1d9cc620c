#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "triphase/checks.hpp"
#include "triphase/constants.hpp"
#include "triphase/errors.hpp"
#include "triphase/experiment.hpp"
#include "triphase/geometry.hpp"
#include "triphase/netlist.hpp"
#include "triphase/optics.hpp"
#include "triphase/records_io.hpp"

namespace {

using namespace triphase;

constexpr double kPi = std::numbers::pi;
constexpr double kDegree = kPi / 180.0;

// ---------------------------------------------------------------- parsing

double parse_double(const std::string& text) {
  size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidParams("not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(x)) {
    throw InvalidParams("not a finite number: '" + text + "'");
  }
  return x;
}

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
};

// Accepts "value" (single point) or "start:stop:count".
Grid parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::string piece;
  std::istringstream in(text);
  while (std::getline(in, piece, ':')) parts.push_back(piece);
  if (parts.size() == 1) {
    const double v = parse_double(parts[0]);
    return Grid{v, v, 1};
  }
  if (parts.size() != 3) {
    throw InvalidParams("grid must be 'value' or 'start:stop:count': '" +
                        text + "'");
  }
  Grid g;
  g.start = parse_double(parts[0]);
  g.stop = parse_double(parts[1]);
  const double c = parse_double(parts[2]);
  g.count = static_cast<int>(c);
  if (g.count < 1 || static_cast<double>(g.count) != c) {
    throw InvalidParams("grid count must be a positive integer: '" + text +
                        "'");
  }
  return g;
}

std::vector<double> grid_points(const Grid& g) {
  std::vector<double> pts;
  pts.reserve(static_cast<size_t>(g.count));
  if (g.count == 1) {
    pts.push_back(g.start);
    return pts;
  }
  for (int i = 0; i < g.count; ++i) {
    pts.push_back(g.start + (g.stop - g.start) * static_cast<double>(i) /
                                static_cast<double>(g.count - 1));
  }
  return pts;
}

std::vector<double> ring_settings(int n) {
  if (n < 1) throw InvalidParams("--settings must be at least 1");
  std::vector<double> d(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    d[static_cast<size_t>(j)] = 2.0 * kPi * static_cast<double>(j) /
                                static_cast<double>(n);
  }
  return d;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidParams("cannot open output file: " + path);
  f << text;
  if (!f.good()) throw InvalidParams("failed writing output file: " + path);
}

// ---------------------------------------------------------------- reports

struct PhaseReport {
  double closed = 0.0;
  double bargmann = 0.0;
  double holonomy = 0.0;
  double interferometer = 0.0;
  double max_discrepancy = 0.0;
};

PhaseReport compute_report(const TriangleParams& p, int holonomy_steps) {
  PhaseReport r;
  r.closed = geometric_phase_closed_form(p);
  const GeodesicTriangle t = triangle_vertices(p);
  r.bargmann = bargmann_phase(t);
  r.holonomy = holonomy_phase_discrete(t, holonomy_steps);

  const ElementSequence seq = triangle_sequence(t);
  const Complex f = forward_amplitude(seq, {});
  const Complex b = backward_amplitude(seq, {});
  r.interferometer = 0.5 * (std::arg(f) - std::arg(b));

  const double phases[4] = {r.closed, r.bargmann, r.holonomy,
                            r.interferometer};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      r.max_discrepancy =
          std::max(r.max_discrepancy, phase_distance(phases[i], phases[j]));
    }
  }
  return r;
}

void print_params(std::ostream& out, const TriangleParams& p) {
  out << "s1_0_rad=" << format_sig12(p.s1_0) << '\n'
      << "s2_0_rad=" << format_sig12(p.s2_0) << '\n'
      << "alpha_rad=" << format_sig12(p.alpha) << '\n'
      << "beta_rad=" << format_sig12(p.beta) << '\n';
}

// ----------------------------------------------------------------- phase

struct ParamFlags {
  double s1 = 0.0, s2 = 0.0, alpha = 0.0, beta = 0.0;
  bool degrees = false;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
  cmd->add_option("--s1", f.s1, "arc length of side 1")->required();
  cmd->add_option("--s2", f.s2, "arc length of side 2")->required();
  cmd->add_option("--alpha", f.alpha, "relative phase of the second tangent")
      ->required();
  cmd->add_option("--beta", f.beta, "mixing angle into the third channel")
      ->required();
  cmd->add_flag("--degrees", f.degrees, "interpret angle inputs as degrees");
}

TriangleParams to_params(const ParamFlags& f) {
  const double k = f.degrees ? kDegree : 1.0;
  return TriangleParams{f.s1 * k, f.s2 * k, f.alpha * k, f.beta * k};
}

int run_phase(const TriangleParams& p, int holonomy_steps) {
  const PhaseReport r = compute_report(p, holonomy_steps);
  print_params(std::cout, p);
  std::cout << "phi_closed_form=" << format_sig12(r.closed) << '\n'
            << "phi_bargmann=" << format_sig12(r.bargmann) << '\n'
            << "phi_holonomy=" << format_sig12(r.holonomy) << '\n'
            << "phi_interferometer=" << format_sig12(r.interferometer) << '\n'
            << "max_abs_discrepancy=" << format_sig12(r.max_discrepancy)
            << '\n';
  if (r.max_discrepancy > tol::cli_consistency) {
    std::cerr << "internal consistency failure: phase computations disagree "
                 "by "
              << format_sig12(r.max_discrepancy) << '\n';
    return 3;
  }
  return 0;
}

// ----------------------------------------------------------------- sweep

struct SweepSpec {
  Grid s1, s2, alpha, beta;
  std::string output;        // empty means stdout
  std::string format = "csv";
  std::uint64_t seed = 1;
  std::uint64_t photons = 0;  // 0 disables the Monte Carlo columns
  int holonomy_steps = 20000;
};

Grid grid_from_json(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key)) {
    throw InvalidParams("sweep config: missing grid '" + key + "'");
  }
  const nlohmann::json& g = j[key];
  if (!g.is_object() || !g.contains("start") || !g.contains("stop") ||
      !g.contains("count")) {
    throw InvalidParams("sweep config: grid '" + key +
                        "' needs start, stop, count");
  }
  Grid out;
  out.start = g["start"].get<double>();
  out.stop = g["stop"].get<double>();
  out.count = g["count"].get<int>();
  if (out.count < 1) {
    throw InvalidParams("sweep config: grid '" + key + "' count must be >= 1");
  }
  return out;
}

SweepSpec load_sweep_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidParams("cannot open config file: " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidParams(std::string("sweep config: parse error: ") +
                        ex.what());
  }
  SweepSpec spec;
  spec.s1 = grid_from_json(j, "s1_0");
  spec.s2 = grid_from_json(j, "s2_0");
  spec.alpha = grid_from_json(j, "alpha");
  spec.beta = grid_from_json(j, "beta");
  if (j.contains("output")) spec.output = j["output"].get<std::string>();
  if (j.contains("format")) spec.format = j["format"].get<std::string>();
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("photons_per_setting")) {
    spec.photons = j["photons_per_setting"].get<std::uint64_t>();
  }
  if (j.contains("holonomy_steps")) {
    spec.holonomy_steps = j["holonomy_steps"].get<int>();
  }
  return spec;
}

struct SweepRow {
  size_t index = 0;
  TriangleParams p;
  std::string status = "ok";
  PhaseReport rep;
  double fit_2phi = 0.0;
  double fit_err = 0.0;
};

std::string status_for(const Error& e) {
  if (dynamic_cast<const DegenerateTriangle*>(&e)) return "degenerate";
  if (dynamic_cast<const UndefinedPhase*>(&e)) return "undefined_phase";
  if (dynamic_cast<const UndefinedDecomposition*>(&e)) {
    return "undefined_decomposition";
  }
  if (dynamic_cast<const NotCyclic*>(&e)) return "not_cyclic";
  if (dynamic_cast<const IllConditionedFit*>(&e)) return "ill_conditioned_fit";
  return "invalid";
}

int run_sweep(const SweepSpec& spec) {
  if (spec.format != "csv" && spec.format != "json") {
    throw InvalidParams("sweep format must be csv or json");
  }
  if (spec.holonomy_steps < 2) {
    throw InvalidParams("holonomy steps must be at least 2");
  }

  const std::vector<double> g1 = grid_points(spec.s1);
  const std::vector<double> g2 = grid_points(spec.s2);
  const std::vector<double> ga = grid_points(spec.alpha);
  const std::vector<double> gb = grid_points(spec.beta);
  const std::vector<double> mc_settings = ring_settings(24);

  std::vector<SweepRow> rows;
  rows.reserve(g1.size() * g2.size() * ga.size() * gb.size());
  size_t ok_count = 0;
  double worst = 0.0;

  for (double a1 : g1) {
    for (double a2 : g2) {
      for (double aa : ga) {
        for (double ab : gb) {
          SweepRow row;
          row.index = rows.size();
          row.p = TriangleParams{a1, a2, aa, ab};
          try {
            row.rep = compute_report(row.p, spec.holonomy_steps);
            if (spec.photons > 0) {
              const GeodesicTriangle t = triangle_vertices(row.p);
              const std::vector<CountRecord> counts = low_light_counts(
                  triangle_sequence(t), {}, mc_settings, spec.photons,
                  spec.seed + static_cast<std::uint64_t>(row.index));
              const PhaseFit fit = estimate_phase(counts);
              row.fit_2phi = fit.phase;
              row.fit_err = fit.std_error;
            }
            ++ok_count;
            worst = std::max(worst, row.rep.max_discrepancy);
          } catch (const ConsistencyError&) {
            throw;
          } catch (const Error& e) {
            row.status = status_for(e);
          }
          rows.push_back(row);
        }
      }
    }
  }

  std::ostringstream body;
  const bool with_mc = spec.photons > 0;
  if (spec.format == "csv") {
    body << "index,s1_0_rad,s2_0_rad,alpha_rad,beta_rad,status,"
            "phi_closed_form,phi_bargmann,phi_holonomy,phi_interferometer,"
            "max_abs_discrepancy";
    if (with_mc) body << ",fit_2phi_rad,fit_std_error_rad";
    body << '\n';
    for (const SweepRow& r : rows) {
      body << r.index << ',' << format_sig12(r.p.s1_0) << ','
           << format_sig12(r.p.s2_0) << ',' << format_sig12(r.p.alpha) << ','
           << format_sig12(r.p.beta) << ',' << r.status;
      if (r.status == "ok") {
        body << ',' << format_sig12(r.rep.closed) << ','
             << format_sig12(r.rep.bargmann) << ','
             << format_sig12(r.rep.holonomy) << ','
             << format_sig12(r.rep.interferometer) << ','
             << format_sig12(r.rep.max_discrepancy);
        if (with_mc) {
          body << ',' << format_sig12(r.fit_2phi) << ','
               << format_sig12(r.fit_err);
        }
      } else {
        body << ",,,,,";
        if (with_mc) body << ",,";
      }
      body << '\n';
    }
  } else {
    body << "[\n";
    for (size_t i = 0; i < rows.size(); ++i) {
      const SweepRow& r = rows[i];
      body << "  {\"index\": " << r.index
           << ", \"s1_0_rad\": " << format_sig12(r.p.s1_0)
           << ", \"s2_0_rad\": " << format_sig12(r.p.s2_0)
           << ", \"alpha_rad\": " << format_sig12(r.p.alpha)
           << ", \"beta_rad\": " << format_sig12(r.p.beta) << ", \"status\": \""
           << r.status << '"';
      if (r.status == "ok") {
        body << ", \"phi_closed_form\": " << format_sig12(r.rep.closed)
             << ", \"phi_bargmann\": " << format_sig12(r.rep.bargmann)
             << ", \"phi_holonomy\": " << format_sig12(r.rep.holonomy)
             << ", \"phi_interferometer\": "
             << format_sig12(r.rep.interferometer)
             << ", \"max_abs_discrepancy\": "
             << format_sig12(r.rep.max_discrepancy);
        if (with_mc) {
          body << ", \"fit_2phi_rad\": " << format_sig12(r.fit_2phi)
               << ", \"fit_std_error_rad\": " << format_sig12(r.fit_err);
        }
      }
      body << '}' << (i + 1 < rows.size() ? ",\n" : "\n");
    }
    body << "]\n";
  }

  if (spec.output.empty()) {
    std::cout << body.str();
  } else {
    write_text(spec.output, body.str());
    std::cout << "output=" << spec.output << '\n';
  }
  std::cout << "rows=" << rows.size() << '\n'
            << "ok=" << ok_count << '\n'
            << "worst_discrepancy=" << format_sig12(worst) << '\n';

  if (worst > tol::cli_consistency) {
    std::cerr << "internal consistency failure: sweep discrepancy "
              << format_sig12(worst) << '\n';
    return 3;
  }
  return 0;
}

// ---------------------------------------------------------------- netlist

int run_netlist(const TriangleParams& p, const std::string& out_path,
                bool verify) {
  const GeodesicTriangle t = triangle_vertices(p);
  const ElementSequence seq = triangle_sequence(t);
  const std::string text = netlist_to_json(seq);

  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text(out_path, text);
    std::cout << "output=" << out_path << '\n';
  }

  if (verify) {
    // Verify what was emitted: parse the serialized text back.
    const ElementSequence parsed = netlist_from_json(text);
    const StateVector out =
        interferometer_matrix(parsed) * StateVector::basis(0);
    const double closure =
        phase_distance(std::arg(out[0]), geometric_phase_closed_form(p));
    const std::array<double, 3> ports =
        port_probabilities(parsed, 1);
    std::cout << "elements=" << parsed.elements.size() << '\n'
              << "closure_phase_error_rad=" << format_sig12(closure) << '\n'
              << "port2_probability=" << format_sig12(ports[1]) << '\n'
              << "port3_probability=" << format_sig12(ports[2]) << '\n';
    if (closure > tol::cli_consistency) {
      std::cerr << "internal consistency failure: netlist closure error "
                << format_sig12(closure) << '\n';
      return 3;
    }
  }
  return 0;
}

// ----------------------------------------------------------------- fringe

int run_fringe(const TriangleParams& p, const std::vector<double>& deltas,
               std::uint64_t photons, std::uint64_t seed,
               const std::string& format, const std::string& out_path) {
  if (format != "csv" && format != "json") {
    throw InvalidParams("fringe format must be csv or json");
  }
  const GeodesicTriangle t = triangle_vertices(p);
  const ElementSequence seq = triangle_sequence(t);

  std::string records_csv, records_json;
  PhaseFit fit;
  if (photons == 0) {
    const std::vector<FringeRecord> recs = fringe(seq, {}, deltas);
    fit = estimate_phase(recs);
    records_csv = records_to_csv(recs);
    records_json = records_to_json(recs);
  } else {
    const std::vector<CountRecord> counts =
        low_light_counts(seq, {}, deltas, photons, seed);
    fit = estimate_phase(counts);
    records_csv = records_to_csv(counts);
    records_json = records_to_json(counts);
  }

  std::ostringstream body;
  if (format == "csv") {
    body << records_csv << "# fit_2phi_rad=" << format_sig12(fit.phase)
         << "\n# fit_std_error_rad=" << format_sig12(fit.std_error)
         << "\n# fit_visibility=" << format_sig12(fit.visibility) << '\n';
  } else {
    std::string rj = records_json;
    while (!rj.empty() && rj.back() == '\n') rj.pop_back();
    body << "{\n\"records\": " << rj << ",\n\"fit\": {\"fit_2phi_rad\": "
         << format_sig12(fit.phase)
         << ", \"fit_std_error_rad\": " << format_sig12(fit.std_error)
         << ", \"fit_visibility\": " << format_sig12(fit.visibility)
         << "}\n}\n";
  }

  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    write_text(out_path, body.str());
    std::cout << "output=" << out_path << '\n'
              << "fit_2phi_rad=" << format_sig12(fit.phase) << '\n'
              << "fit_std_error_rad=" << format_sig12(fit.std_error) << '\n'
              << "fit_visibility=" << format_sig12(fit.visibility) << '\n';
  }
  return 0;
}

// --------------------------------------------------------------- selftest

int run_selftest(bool full) {
  std::vector<CheckResult> results = run_core_checks();
  if (full) results.push_back(check_statistical_recovery());
  int passed = 0;
  for (const CheckResult& r : results) {
    std::cout << "check " << r.id << ' ' << (r.pass ? "PASS" : "FAIL") << ' '
              << r.name << " (" << r.detail << ")\n";
    if (r.pass) ++passed;
  }
  std::cout << "selftest " << (passed == static_cast<int>(results.size())
                                   ? "PASS "
                                   : "FAIL ")
            << passed << '/' << results.size() << '\n';
  return passed == static_cast<int>(results.size()) ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Geodesic-triangle geometric phase toolkit for three-channel "
      "interferometers"};
  app.require_subcommand(1);

  // phase
  auto* phase_cmd = app.add_subcommand(
      "phase", "compute one triangle's phase by four independent routes");
  ParamFlags phase_flags;
  int phase_steps = 20000;
  add_param_flags(phase_cmd, phase_flags);
  phase_cmd->add_option("--holonomy-steps", phase_steps,
                        "discrete holonomy samples per side");

  // sweep
  auto* sweep_cmd =
      app.add_subcommand("sweep", "evaluate a parameter grid into a file");
  std::string sg1, sg2, sga, sgb, sweep_config, sweep_out;
  std::string sweep_format = "csv";
  std::uint64_t sweep_seed = 1, sweep_photons = 0;
  int sweep_steps = 20000;
  bool sweep_degrees = false;
  sweep_cmd->add_option("--s1", sg1, "grid: value or start:stop:count");
  sweep_cmd->add_option("--s2", sg2, "grid: value or start:stop:count");
  sweep_cmd->add_option("--alpha", sga, "grid: value or start:stop:count");
  sweep_cmd->add_option("--beta", sgb, "grid: value or start:stop:count");
  sweep_cmd->add_option("--config", sweep_config,
                        "JSON file providing the sweep specification");
  sweep_cmd->add_option("--out", sweep_out, "output file (default stdout)");
  sweep_cmd->add_option("--format", sweep_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--seed", sweep_seed, "Monte Carlo base seed");
  sweep_cmd->add_option("--photons", sweep_photons,
                        "photons per setting for the Monte Carlo columns");
  sweep_cmd->add_option("--holonomy-steps", sweep_steps,
                        "discrete holonomy samples per side");
  sweep_cmd->add_flag("--degrees", sweep_degrees,
                      "interpret angle inputs as degrees");

  // netlist
  auto* netlist_cmd = app.add_subcommand(
      "netlist", "emit the nine-element circuit as a JSON netlist");
  ParamFlags netlist_flags;
  std::string netlist_out;
  bool netlist_verify = false;
  add_param_flags(netlist_cmd, netlist_flags);
  netlist_cmd->add_option("--out", netlist_out, "output file (default stdout)");
  netlist_cmd->add_flag("--verify", netlist_verify,
                        "recompose the netlist and report the closure error");

  // fringe
  auto* fringe_cmd = app.add_subcommand(
      "fringe", "simulate the counter-propagating fringe scan");
  ParamFlags fringe_flags;
  int fringe_settings = 24;
  std::string fringe_deltas, fringe_out;
  std::string fringe_format = "csv";
  std::uint64_t fringe_photons = 0, fringe_seed = 1;
  add_param_flags(fringe_cmd, fringe_flags);
  fringe_cmd->add_option(
      "--settings", fringe_settings,
      "number of reference settings spaced uniformly over the circle");
  fringe_cmd->add_option("--deltas", fringe_deltas,
                         "explicit setting grid start:stop:count (overrides "
                         "--settings)");
  fringe_cmd->add_option("--photons", fringe_photons,
                         "photons per setting (0 = noiseless probabilities)");
  fringe_cmd->add_option("--seed", fringe_seed, "Monte Carlo seed");
  fringe_cmd->add_option("--format", fringe_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  fringe_cmd->add_option("--out", fringe_out, "output file (default stdout)");

  // selftest
  auto* selftest_cmd = app.add_subcommand(
      "selftest", "run the built-in oracle cross-check suite");
  bool selftest_full = false;
  selftest_cmd->add_flag(
      "--full", selftest_full,
      "include the statistical fringe-recovery check (slower)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (phase_cmd->parsed()) {
      return run_phase(to_params(phase_flags), phase_steps);
    }
    if (sweep_cmd->parsed()) {
      SweepSpec spec;
      if (!sweep_config.empty()) {
        spec = load_sweep_config(sweep_config);
      } else if (sg1.empty() || sg2.empty() || sga.empty() || sgb.empty()) {
        throw InvalidParams(
            "sweep needs --config or all of --s1 --s2 --alpha --beta");
      }
      if (!sg1.empty()) spec.s1 = parse_grid(sg1);
      if (!sg2.empty()) spec.s2 = parse_grid(sg2);
      if (!sga.empty()) spec.alpha = parse_grid(sga);
      if (!sgb.empty()) spec.beta = parse_grid(sgb);
      if (sweep_cmd->count("--out") > 0) spec.output = sweep_out;
      if (sweep_cmd->count("--format") > 0) spec.format = sweep_format;
      if (sweep_cmd->count("--seed") > 0) spec.seed = sweep_seed;
      if (sweep_cmd->count("--photons") > 0) spec.photons = sweep_photons;
      if (sweep_cmd->count("--holonomy-steps") > 0) {
        spec.holonomy_steps = sweep_steps;
      }
      if (sweep_degrees) {
        for (Grid* g : {&spec.s1, &spec.s2, &spec.alpha, &spec.beta}) {
          g->start *= kDegree;
          g->stop *= kDegree;
        }
      }
      return run_sweep(spec);
    }
    if (netlist_cmd->parsed()) {
      return run_netlist(to_params(netlist_flags), netlist_out,
                         netlist_verify);
    }
    if (fringe_cmd->parsed()) {
      std::vector<double> deltas;
      if (!fringe_deltas.empty()) {
        Grid g = parse_grid(fringe_deltas);
        if (fringe_flags.degrees) {
          g.start *= kDegree;
          g.stop *= kDegree;
        }
        deltas = grid_points(g);
      } else {
        deltas = ring_settings(fringe_settings);
      }
      return run_fringe(to_params(fringe_flags), deltas, fringe_photons,
                        fringe_seed, fringe_format, fringe_out);
    }
    if (selftest_cmd->parsed()) {
      return run_selftest(selftest_full);
    }
  } catch (const ConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
