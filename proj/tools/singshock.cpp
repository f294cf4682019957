// Command-line front end: region lookup, Riemann solutions, scenario runs,
// finite-volume cross-checks and diagrams.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "singshock/curves.hpp"
#include "singshock/error.hpp"
#include "singshock/fvoracle.hpp"
#include "singshock/interact.hpp"
#include "singshock/io.hpp"
#include "singshock/riemann.hpp"

namespace fs = std::filesystem;
using namespace singshock;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitRiemann = 3;
constexpr int kExitEngine = 4;
constexpr int kExitOracle = 5;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

State parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Usage("expected u,v but got '" + text + "'");
  try {
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    const double u = std::stod(a, &n1);
    const double v = std::stod(b, &n2);
    if (n1 != a.size() || n2 != b.size() || !std::isfinite(u) || !std::isfinite(v)) throw Usage("");
    return {u, v};
  } catch (const std::exception&) {
    throw Usage("expected u,v but got '" + text + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Usage("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string error_json(const Error& e) {
  nlohmann::json j{{"error", std::string(error_kind_name(e.kind()))}, {"message", e.what()}};
  return j.dump() + "\n";
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

int cmd_classify(State base, State point) {
  const Region r = classify(base, point);
  std::cout << region_name(r) << "\n";
  const double u = point.u;
  const double d = curve_D_v(base, u);
  const double e = curve_E_v(base, u);
  std::cout << "D(u)=" << num(d) << " E(u)=" << num(e);
  if (std::abs(u - base.u) <= kHugoniotHalfWidth) {
    std::cout << " S1(u)=" << num(hugoniot_v(base, u, Branch::Plus))
              << " S2(u)=" << num(hugoniot_v(base, u, Branch::Minus));
  }
  std::cout << " R1(u)=" << num(rarefaction_v(base, u, Family::One))
            << " R2(u)=" << num(rarefaction_v(base, u, Family::Two)) << "\n";
  const double tol = kRegionTol * std::max({1.0, std::abs(point.v), std::abs(d), std::abs(e)});
  const bool on_d = std::abs(point.v - d) <= tol;
  const bool on_e = std::abs(point.v - e) <= tol;
  if (on_d && on_e) {
    const State c = locus_points(base).de_corner;
    std::cout << "boundary: D/E corner at (" << num(c.u) << ", " << num(c.v) << ")\n";
  } else if (on_d) {
    std::cout << "boundary: on D\n";
  } else if (on_e) {
    std::cout << "boundary: on E\n";
  }
  return 0;
}

int cmd_riemann(State left, State right, double zeta, const std::string& out) {
  try {
    const WaveFan fan = zeta > 0.0 ? solve_with_delta(left, {right, zeta}) : solve(left, right);
    const std::string text = emit_wave_fan(fan);
    if (out.empty()) {
      std::cout << text;
    } else {
      write_file(out, text);
    }
    return 0;
  } catch (const Error& e) {
    std::cout << error_json(e);
    std::cerr << e.what() << "\n";
    return kExitRiemann;
  }
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_dir, const EngineOptions& opts) {
  const Scenario s = parse_scenario(read_file(scenario_path));
  Timeline tl;
  try {
    tl = run_scenario(s, opts);
  } catch (const Error& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return kExitEngine;
  }
  fs::create_directories(out_dir);
  write_file(fs::path(out_dir) / "solution.json", emit_timeline(tl));
  write_file(fs::path(out_dir) / "trajectories.csv", trajectories_csv(tl));
  write_file(fs::path(out_dir) / "diagram.svg", render_svg(tl));
  std::cout << "events: " << tl.events.size() << "\n"
            << "trajectories: " << tl.trajectories.size() << "\n";
  for (const Event& e : tl.events) {
    std::cout << "  " << event_kind_name(e.kind) << " x=" << num(e.x) << " t=" << num(e.t)
              << " zeta=" << num(e.zeta);
    if (!e.regime.empty()) std::cout << " regime=" << e.regime;
    if (e.approximate) std::cout << " (approximate)";
    std::cout << "\n";
  }
  return 0;
}

struct Reference {
  double speed = 0.0;
  double k = 0.0;
  double zeta = 0.0;
};

// Analytic front for single-jump scenarios: the singular shock if there is
// one, otherwise the classical shock with the largest jump in u.
std::optional<Reference> reference_front(const Scenario& s) {
  if (s.breakpoints.size() != 1) return std::nullopt;
  const WaveFan fan = resolve(s.states[0], {s.states[1], s.delta_at(0)}, {s.breakpoints[0], 0.0});
  std::optional<Reference> best;
  double jump = 0.0;
  for (const Wave& w : fan.waves) {
    if (const auto* ss = std::get_if<SingularShock>(&w)) return Reference{ss->speed, ss->k, ss->zeta0};
    if (const auto* sh = std::get_if<ShockWave>(&w)) {
      const double d = std::abs(sh->right.u - sh->left.u);
      if (d > jump) {
        jump = d;
        best = Reference{sh->speed, 0.0, 0.0};
      }
    }
  }
  return best;
}

std::string rel(double measured, double exact) {
  if (exact == 0.0) return "abs error " + num(measured);
  return "rel error " + num((measured - exact) / std::abs(exact));
}

int cmd_oracle(const std::string& scenario_path, std::size_t cells, double t_end, double x_min, double x_max,
               const std::string& out_dir) {
  const Scenario s = parse_scenario(read_file(scenario_path));
  try {
    const Grid grid{x_min, x_max, cells, 0.45};
    std::vector<double> times;
    for (int i = 1; i < 20; ++i) times.push_back(t_end * i / 20.0);
    const std::vector<FieldSnapshot> snaps = run(s, grid, t_end, times);
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "oracle.csv", snapshot_csv(snaps.back()));

    std::cout << "cells: " << cells << "\n"
              << "t_end: " << num(t_end) << "\n"
              << "conservation defect: " << num(conservation_defect(snaps)) << "\n";
    std::vector<double> ts;
    std::vector<double> xs;
    std::vector<double> bs;
    for (const FieldSnapshot& f : snaps) {
      if (f.t < 0.2 * t_end - 1e-12) continue;
      try {
        const double x = measure_shock_position(f);
        ts.push_back(f.t);
        xs.push_back(x);
        bs.push_back(measure_delta_mass(f, default_window(f)));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoFront) throw;
      }
    }
    if (ts.size() < 2) {
      std::cout << "front: none\n";
      return 0;
    }
    const LinearFit fx = fit_line(ts, xs);
    const LinearFit fb = fit_line(ts, bs);
    const auto ref = reference_front(s);
    std::cout << "front speed: " << num(fx.slope);
    if (ref) std::cout << " (analytic " << num(ref->speed) << ", " << rel(fx.slope, ref->speed) << ")";
    std::cout << "\nmass slope: " << num(fb.slope);
    if (ref) std::cout << " (analytic " << num(ref->k) << ", " << rel(fb.slope, ref->k) << ")";
    std::cout << "\nmass at t_end: " << num(bs.back()) << "\n";
    return 0;
  } catch (const Error& e) {
    std::cerr << "oracle error: " << e.what() << "\n";
    return kExitOracle;
  }
}

int cmd_plot(const std::string& solution_path, const std::string& out) {
  const Timeline tl = parse_timeline(read_file(solution_path));
  write_file(out, render_svg(tl));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemann problems, singular shocks and wave interactions for u_t+(u^2-v)_x=0, "
               "v_t+(u^3/3-u)_x=0"};
  app.require_subcommand(1);

  std::string base_s;
  std::string point_s;
  auto* classify_cmd = app.add_subcommand("classify", "Region of a right state relative to a base state");
  classify_cmd->add_option("--base", base_s, "base state u,v")->required();
  classify_cmd->add_option("--point", point_s, "right state u,v")->required();

  std::string left_s;
  std::string right_s;
  double zeta = 0.0;
  std::string riemann_out;
  auto* riemann_cmd = app.add_subcommand("riemann", "Solve a Riemann problem and print its descriptor");
  riemann_cmd->add_option("--left", left_s, "left state u,v")->required();
  riemann_cmd->add_option("--right", right_s, "right state u,v")->required();
  riemann_cmd->add_option("--zeta", zeta, "initial point mass in v")->check(CLI::NonNegativeNumber);
  riemann_cmd->add_option("--out", riemann_out, "write the descriptor to this file");

  std::string scenario_path;
  std::string out_dir = ".";
  auto* simulate_cmd = app.add_subcommand("simulate", "Run the wave-interaction engine on a scenario");
  simulate_cmd->add_option("scenario", scenario_path, "scenario JSON")->required();
  simulate_cmd->add_option("--out", out_dir, "output directory");
  EngineOptions engine;
  simulate_cmd->add_option("--max-events", engine.max_events, "event budget");
  simulate_cmd->add_flag("--strict", engine.strict_congestion, "fail on simultaneous events");

  std::size_t cells = 4000;
  double t_end = 1.0;
  double x_min = -5.0;
  double x_max = 5.0;
  auto* oracle_cmd = app.add_subcommand("oracle", "Cross-check with the Lax-Friedrichs solver");
  oracle_cmd->add_option("scenario", scenario_path, "scenario JSON")->required();
  oracle_cmd->add_option("--cells", cells, "number of cells")->check(CLI::Range(16, 10000000));
  oracle_cmd->add_option("--t-end", t_end, "final time")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--x-min", x_min, "left end of the domain");
  oracle_cmd->add_option("--x-max", x_max, "right end of the domain");
  oracle_cmd->add_option("--out", out_dir, "output directory");

  std::string solution_path;
  std::string svg_out = "diagram.svg";
  auto* plot_cmd = app.add_subcommand("plot", "Render a solution descriptor as an SVG x-t diagram");
  plot_cmd->add_option("solution", solution_path, "solution JSON")->required();
  plot_cmd->add_option("--out", svg_out, "SVG file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(parse_pair(base_s), parse_pair(point_s));
    if (riemann_cmd->parsed()) return cmd_riemann(parse_pair(left_s), parse_pair(right_s), zeta, riemann_out);
    if (simulate_cmd->parsed()) return cmd_simulate(scenario_path, out_dir, engine);
    if (oracle_cmd->parsed()) return cmd_oracle(scenario_path, cells, t_end, x_min, x_max, out_dir);
    if (plot_cmd->parsed()) return cmd_plot(solution_path, svg_out);
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::InvalidInput ? kExitParse : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
