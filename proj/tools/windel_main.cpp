#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "windel/engine.hpp"
#include "windel/plots.hpp"
#include "windel/scenario.hpp"
#include "windel/trace.hpp"

namespace fs = std::filesystem;
using namespace windel;

namespace {

constexpr int kOk = 0;
constexpr int kOperationalError = 1;
constexpr int kValidationFailure = 2;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// name of a builtin, or a path to a scenario file
int load_scenario(const std::string& ref, Scenario& out) {
  std::string text;
  if (is_builtin_scenario(ref)) {
    text = builtin_scenario_text(ref);
  } else {
    auto body = read_file(ref);
    if (!body) {
      std::cerr << "error: no builtin scenario and no readable file named '" << ref
                << "'\n";
      std::cerr << "builtin scenarios:";
      for (const auto& n : builtin_scenario_names()) std::cerr << " " << n;
      std::cerr << "\n";
      return kOperationalError;
    }
    text = *body;
  }
  auto parsed = parse_scenario(text);
  for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
  if (!parsed.ok()) {
    for (const auto& e : parsed.errors) std::cerr << "error: " << e << "\n";
    return kValidationFailure;
  }
  out = parsed.scenario;
  return kOk;
}

void print_audit(const AuditReport& rep) {
  for (const auto& c : rep.checks) {
    const char* tag = c.skipped ? "skip" : (c.pass ? " ok " : "FAIL");
    std::printf("[%s] %-16s", tag, c.name.c_str());
    if (!c.detail.empty()) std::printf(" %s", c.detail.c_str());
    if (!c.pass && c.t_first_fail >= 0.0)
      std::printf(" (first at t=%.3f s)", c.t_first_fail);
    std::printf("\n");
  }
}

int cmd_run(const std::string& ref, std::string out_dir,
            std::optional<std::uint64_t> seed, std::optional<double> dt) {
  Scenario s;
  if (int rc = load_scenario(ref, s); rc != kOk) return rc;
  if (seed) s.wind.seed = *seed;
  if (dt) s.run.dt = *dt;
  if (auto errors = finalize_scenario(s); !errors.empty()) {
    for (const auto& e : errors) std::cerr << "error: " << e << "\n";
    return kValidationFailure;
  }

  if (out_dir.empty()) out_dir = (fs::path("out") / s.run.name).string();
  fs::create_directories(out_dir);

  const auto t0 = std::chrono::steady_clock::now();
  Engine engine(s);
  const Trace trace = engine.run();
  const auto t1 = std::chrono::steady_clock::now();
  const double wall = std::chrono::duration<double>(t1 - t0).count();

  const std::string trace_path = (fs::path(out_dir) / "trace.csv").string();
  write_trace(trace, trace_path);
  const auto plot_names = emit_plots(trace, out_dir, s.run.name);

  RunManifest m;
  m.scenario_name = s.run.name;
  m.scenario_digest = scenario_digest(s);
  m.config_digest = config_digest(s);
  m.seed = s.wind.seed;
  m.dt = s.run.dt;
  m.duration = s.run.duration;
  m.trace_file = "trace.csv";
  m.plot_files = plot_names;
  m.scenario_text = serialize_scenario(s);
  write_manifest(m, (fs::path(out_dir) / "manifest.json").string());

  size_t events = 0;
  for (const auto& r : trace) events += r.events.size();
  std::printf("scenario %s: %zu records over %.3f s simulated in %.3f s wall\n",
              s.run.name.c_str(), trace.size(), s.run.duration, wall);
  if (!trace.empty()) {
    const auto& r = trace.back();
    std::printf(
        "final state: mode %s, P_W %.4f pu, P_AEL %.4f pu, U %.4f pu, f %.3f Hz\n",
        mode_name(r.mode), r.p_w_pu, r.p_ael_pu, r.u_ac_pu, r.f_hz);
  }
  std::printf("events: %zu; output in %s\n", events, out_dir.c_str());
  return kOk;
}

int cmd_equilibrium(const std::string& ref, double wind, const std::string& mode_s,
                    std::optional<double> duty) {
  Scenario s;
  if (int rc = load_scenario(ref, s); rc != kOk) return rc;
  const Mode mode = (mode_s == "e" || mode_s == "E") ? Mode::E : Mode::N;
  const Equilibrium eq = find_equilibrium(mode, wind, s.params, duty);
  const char* cls = eq.cls == EquilibriumClass::Stable
                        ? "stable"
                        : (eq.cls == EquilibriumClass::Boundary ? "boundary" : "none");
  std::printf("mode %s at %.3f m/s: %s\n", mode_name(mode), wind, cls);
  std::printf("  U      %.6f pu\n", eq.u_ac_pu);
  std::printf("  P_W    %.6f pu (%.1f kW)\n", eq.p_w / s.params.electrical.rated_power,
              eq.p_w / 1e3);
  std::printf("  P_AEL  %.6f pu (%.1f kW)\n",
              eq.p_ael / s.params.electrical.rated_power, eq.p_ael / 1e3);
  std::printf("  duty   %.6f\n", eq.duty);
  return kOk;
}

int cmd_schedule(double mppt, double prev, double dt, double ratio, bool no_rate) {
  Scenario s;
  s.run.capacity_ratio = ratio;
  if (auto errors = finalize_scenario(s); !errors.empty()) {
    for (const auto& e : errors) std::cerr << "error: " << e << "\n";
    return kValidationFailure;
  }
  const Params& p = s.params;
  const double base = p.electrical.rated_power;
  OperatingEnvelope env;
  env.p_min = p.ael.min_power;
  env.p_rated = p.ael.rated_power;
  env.rate_limit = no_rate ? std::numeric_limits<double>::infinity()
                           : effective_rate_limit(p);
  env.reentry_factor = p.electrical.conversion_efficiency;
  const ScheduleResult r = schedule_steady_state(mppt * base, prev * base, dt, env);
  std::printf("granted %.6f pu, binding %s\n", r.p_ael / base, binding_name(r.binding));
  return kOk;
}

int cmd_validate(const std::string& ref) {
  Scenario s;
  if (int rc = load_scenario(ref, s); rc != kOk) return rc;
  std::printf("ok: scenario %s\n", s.run.name.c_str());
  std::printf("  scenario digest %s\n", scenario_digest(s).c_str());
  std::printf("  config digest   %s\n", config_digest(s).c_str());
  return kOk;
}

int cmd_verify(const std::string& trace_path, std::string manifest_path) {
  if (manifest_path.empty()) {
    manifest_path = (fs::path(trace_path).parent_path() / "manifest.json").string();
  }
  if (!fs::exists(trace_path)) {
    std::cerr << "error: no trace file '" << trace_path << "'\n";
    return kOperationalError;
  }
  if (!fs::exists(manifest_path)) {
    std::cerr << "error: no manifest '" << manifest_path
              << "' (pass --manifest to point at one)\n";
    return kOperationalError;
  }

  Trace trace;
  RunManifest m;
  try {
    trace = read_trace(trace_path);
    m = read_manifest(manifest_path);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kOperationalError;
  }
  auto parsed = parse_scenario(m.scenario_text);
  if (!parsed.ok()) {
    for (const auto& e : parsed.errors)
      std::cerr << "error: manifest scenario: " << e << "\n";
    return kValidationFailure;
  }
  const AuditReport rep = verify_trace(trace, parsed.scenario);
  print_audit(rep);
  if (!rep.pass()) {
    std::printf("audit FAILED\n");
    return kValidationFailure;
  }
  std::printf("audit passed\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wind-to-hydrogen islanded microgrid simulator"};
  app.require_subcommand(1);

  std::string scenario_ref;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> dt_override;
  auto* run = app.add_subcommand("run", "Simulate a scenario and write trace, "
                                        "manifest and plots");
  run->add_option("scenario", scenario_ref, "builtin name or scenario file")
      ->required();
  run->add_option("--out", out_dir, "output directory (default out/<name>)");
  run->add_option("--seed", seed, "override the wind seed");
  run->add_option("--dt", dt_override, "override the time step in seconds");

  std::string eq_ref, eq_mode = "n";
  double eq_wind = 0.0;
  std::optional<double> eq_duty;
  auto* eq = app.add_subcommand("equilibrium",
                                "Static operating point at a given wind speed");
  eq->add_option("scenario", eq_ref, "builtin name or scenario file")->required();
  eq->add_option("--wind", eq_wind, "wind speed in m/s")->required();
  eq->add_option("--mode", eq_mode, "n or e")
      ->check(CLI::IsMember({"n", "N", "e", "E"}));
  eq->add_option("--duty", eq_duty, "fix the buck duty instead of the voltage target");

  double sch_mppt = 0.0, sch_prev = 0.0, sch_dt = 1e-3, sch_ratio = 1.0;
  bool sch_no_rate = false;
  auto* sch = app.add_subcommand("schedule",
                                 "One steady-state load assignment (pu inputs)");
  sch->add_option("--mppt", sch_mppt, "deliverable power, pu")->required();
  sch->add_option("--prev", sch_prev, "previous stack power, pu");
  sch->add_option("--dt", sch_dt, "step in seconds");
  sch->add_option("--ratio", sch_ratio, "electrolyzer capacity ratio");
  sch->add_flag("--no-rate", sch_no_rate, "disable the ramp bound");

  std::string val_ref;
  auto* val = app.add_subcommand("validate", "Parse and range-check a scenario");
  val->add_option("scenario", val_ref, "builtin name or scenario file")->required();

  std::string ver_trace, ver_manifest;
  auto* ver = app.add_subcommand("verify", "Audit a recorded trace");
  ver->add_option("trace", ver_trace, "trace.csv from a run")->required();
  ver->add_option("--manifest", ver_manifest,
                  "manifest.json (default: next to the trace)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(scenario_ref, out_dir, seed, dt_override);
    if (eq->parsed()) return cmd_equilibrium(eq_ref, eq_wind, eq_mode, eq_duty);
    if (sch->parsed())
      return cmd_schedule(sch_mppt, sch_prev, sch_dt, sch_ratio, sch_no_rate);
    if (val->parsed()) return cmd_validate(val_ref);
    if (ver->parsed()) return cmd_verify(ver_trace, ver_manifest);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kOperationalError;
  }
  return kOperationalError;
}
