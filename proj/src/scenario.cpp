#include "windel/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace windel {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct KeyDef {
  std::string section;
  std::string key;
  std::function<bool(Scenario&, const std::string&, std::string&)> set;
  std::function<std::string(const Scenario&)> get;
};

bool to_double(const std::string& v, double& out) {
  try {
    size_t pos = 0;
    out = std::stod(v, &pos);
    return pos == v.size();
  } catch (...) {
    return false;
  }
}

bool to_bool(const std::string& v, bool& out) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") { out = true; return true; }
  if (v == "false" || v == "0" || v == "no" || v == "off") { out = false; return true; }
  return false;
}

bool to_u64(const std::string& v, std::uint64_t& out) {
  try {
    size_t pos = 0;
    out = std::stoull(v, &pos);
    return pos == v.size();
  } catch (...) {
    return false;
  }
}

KeyDef num_key(const std::string& sec, const std::string& key,
               std::function<double*(Scenario&)> field) {
  return KeyDef{
      sec, key,
      [field](Scenario& s, const std::string& v, std::string& err) {
        double d;
        if (!to_double(v, d)) { err = "not a number: '" + v + "'"; return false; }
        *field(s) = d;
        return true;
      },
      [field](const Scenario& s) {
        return fmt_double(*field(const_cast<Scenario&>(s)));
      }};
}

KeyDef bool_key(const std::string& sec, const std::string& key,
                std::function<bool*(Scenario&)> field) {
  return KeyDef{
      sec, key,
      [field](Scenario& s, const std::string& v, std::string& err) {
        bool b;
        if (!to_bool(v, b)) { err = "not a boolean: '" + v + "'"; return false; }
        *field(s) = b;
        return true;
      },
      [field](const Scenario& s) {
        return *field(const_cast<Scenario&>(s)) ? "true" : "false";
      }};
}

const std::vector<KeyDef>& schema() {
  static const std::vector<KeyDef> defs = [] {
    std::vector<KeyDef> d;
    auto S = [](Scenario& s) -> Scenario& { return s; };
    (void)S;

    d.push_back(KeyDef{
        "scenario", "name",
        [](Scenario& s, const std::string& v, std::string&) {
          s.run.name = v;
          return true;
        },
        [](const Scenario& s) { return s.run.name; }});
    d.push_back(num_key("scenario", "duration",
                        [](Scenario& s) { return &s.run.duration; }));
    d.push_back(num_key("scenario", "dt", [](Scenario& s) { return &s.run.dt; }));
    d.push_back(num_key("scenario", "output_period",
                        [](Scenario& s) { return &s.run.output_period; }));
    d.push_back(num_key("scenario", "capacity_ratio",
                        [](Scenario& s) { return &s.run.capacity_ratio; }));
    d.push_back(KeyDef{
        "scenario", "init",
        [](Scenario& s, const std::string& v, std::string& err) {
          if (v == "steady") s.run.init = InitKind::Steady;
          else if (v == "cold") s.run.init = InitKind::Cold;
          else { err = "init must be steady or cold"; return false; }
          return true;
        },
        [](const Scenario& s) {
          return std::string(s.run.init == InitKind::Steady ? "steady" : "cold");
        }});

    d.push_back(bool_key("toggles", "ramp_limits",
                         [](Scenario& s) { return &s.toggles.ramp_limits; }));
    d.push_back(bool_key("toggles", "switching_block",
                         [](Scenario& s) { return &s.toggles.switching_block; }));

    d.push_back(KeyDef{
        "wind", "profile",
        [](Scenario& s, const std::string& v, std::string& err) {
          if (v == "constant") s.wind.kind = WindKind::Constant;
          else if (v == "steps") s.wind.kind = WindKind::Steps;
          else if (v == "weibull") s.wind.kind = WindKind::Weibull;
          else { err = "profile must be constant, steps or weibull"; return false; }
          return true;
        },
        [](const Scenario& s) {
          switch (s.wind.kind) {
            case WindKind::Constant: return std::string("constant");
            case WindKind::Steps: return std::string("steps");
            case WindKind::Weibull: return std::string("weibull");
          }
          return std::string("constant");
        }});
    d.push_back(num_key("wind", "speed", [](Scenario& s) { return &s.wind.speed; }));
    d.push_back(KeyDef{
        "wind", "steps",
        [](Scenario& s, const std::string& v, std::string& err) {
          std::vector<std::pair<double, double>> pts;
          std::stringstream ss(v);
          std::string item;
          while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            const size_t colon = item.find(':');
            if (colon == std::string::npos) {
              err = "steps entries are time:speed pairs, got '" + item + "'";
              return false;
            }
            double ts, vs;
            if (!to_double(trim(item.substr(0, colon)), ts) ||
                !to_double(trim(item.substr(colon + 1)), vs)) {
              err = "bad steps entry '" + item + "'";
              return false;
            }
            pts.emplace_back(ts, vs);
          }
          s.wind.steps = std::move(pts);
          return true;
        },
        [](const Scenario& s) {
          std::string out;
          for (size_t i = 0; i < s.wind.steps.size(); ++i) {
            if (i) out += ", ";
            out += fmt_double(s.wind.steps[i].first) + ":" +
                   fmt_double(s.wind.steps[i].second);
          }
          return out;
        }});
    d.push_back(num_key("wind", "shape", [](Scenario& s) { return &s.wind.shape; }));
    d.push_back(num_key("wind", "mean", [](Scenario& s) { return &s.wind.mean; }));
    d.push_back(num_key("wind", "sample_period",
                        [](Scenario& s) { return &s.wind.sample_period; }));
    d.push_back(num_key("wind", "filter_tau",
                        [](Scenario& s) { return &s.wind.filter_tau; }));
    d.push_back(KeyDef{
        "wind", "seed",
        [](Scenario& s, const std::string& v, std::string& err) {
          std::uint64_t u;
          if (!to_u64(v, u)) { err = "not an unsigned integer: '" + v + "'"; return false; }
          s.wind.seed = u;
          return true;
        },
        [](const Scenario& s) { return std::to_string(s.wind.seed); }});

    d.push_back(num_key("turbine", "air_density",
                        [](Scenario& s) { return &s.params.turbine.air_density; }));
    d.push_back(num_key("turbine", "blade_radius",
                        [](Scenario& s) { return &s.params.turbine.blade_radius; }));
    d.push_back(num_key("turbine", "rated_mech_power",
                        [](Scenario& s) { return &s.params.turbine.rated_mech_power; }));
    for (int i = 0; i < 6; ++i) {
      d.push_back(num_key("turbine", "cp_c" + std::to_string(i + 1),
                          [i](Scenario& s) { return &s.params.turbine.cp_coeff[i]; }));
    }
    d.push_back(num_key("turbine", "inertia_constant",
                        [](Scenario& s) { return &s.params.turbine.inertia_constant; }));
    d.push_back(num_key("turbine", "speed_upper_limit",
                        [](Scenario& s) { return &s.params.turbine.speed_upper_limit; }));
    d.push_back(num_key("turbine", "cut_in_speed",
                        [](Scenario& s) { return &s.params.turbine.cut_in_speed; }));

    d.push_back(num_key("electrical", "rated_power",
                        [](Scenario& s) { return &s.params.electrical.rated_power; }));
    d.push_back(num_key("electrical", "rated_voltage",
                        [](Scenario& s) { return &s.params.electrical.rated_voltage; }));
    d.push_back(num_key("electrical", "rated_frequency",
                        [](Scenario& s) { return &s.params.electrical.rated_frequency; }));
    d.push_back(
        num_key("electrical", "conversion_efficiency",
                [](Scenario& s) { return &s.params.electrical.conversion_efficiency; }));

    d.push_back(num_key("ael", "rated_voltage",
                        [](Scenario& s) { return &s.params.ael.rated_voltage; }));
    d.push_back(num_key("ael", "reversible_voltage",
                        [](Scenario& s) { return &s.params.ael.reversible_voltage; }));
    d.push_back(num_key("ael", "min_load_fraction",
                        [](Scenario& s) { return &s.params.ael.min_load_fraction; }));
    d.push_back(num_key("ael", "ramp_rate",
                        [](Scenario& s) { return &s.params.ael.ramp_rate; }));

    d.push_back(num_key("bus", "capacitance",
                        [](Scenario& s) { return &s.params.bus.capacitance; }));
    d.push_back(num_key("bus", "dclink_capacitance",
                        [](Scenario& s) { return &s.params.bus.dclink_capacitance; }));
    d.push_back(num_key("bus", "dclink_voltage",
                        [](Scenario& s) { return &s.params.bus.dclink_voltage; }));

    d.push_back(num_key("control", "msc_tau",
                        [](Scenario& s) { return &s.params.control.msc_tau; }));
    d.push_back(num_key("control", "wind_ramp_rate",
                        [](Scenario& s) { return &s.params.control.wind_ramp_rate; }));
    d.push_back(num_key("control", "pitch_kp",
                        [](Scenario& s) { return &s.params.control.pitch_kp; }));
    d.push_back(num_key("control", "pitch_ki",
                        [](Scenario& s) { return &s.params.control.pitch_ki; }));
    d.push_back(num_key("control", "pitch_max",
                        [](Scenario& s) { return &s.params.control.pitch_max; }));
    d.push_back(num_key("control", "pitch_rate",
                        [](Scenario& s) { return &s.params.control.pitch_rate; }));
    d.push_back(num_key("control", "pitch_setpoint",
                        [](Scenario& s) { return &s.params.control.pitch_setpoint; }));
    d.push_back(num_key("control", "volt_kp",
                        [](Scenario& s) { return &s.params.control.volt_kp; }));
    d.push_back(num_key("control", "volt_ki",
                        [](Scenario& s) { return &s.params.control.volt_ki; }));
    d.push_back(num_key("control", "power_kp",
                        [](Scenario& s) { return &s.params.control.power_kp; }));
    d.push_back(num_key("control", "power_ki",
                        [](Scenario& s) { return &s.params.control.power_ki; }));
    d.push_back(num_key("control", "current_kp",
                        [](Scenario& s) { return &s.params.control.current_kp; }));
    d.push_back(num_key("control", "current_ki",
                        [](Scenario& s) { return &s.params.control.current_ki; }));
    d.push_back(num_key("control", "lsc_kp",
                        [](Scenario& s) { return &s.params.control.lsc_kp; }));
    d.push_back(num_key("control", "lsc_ki",
                        [](Scenario& s) { return &s.params.control.lsc_ki; }));
    d.push_back(num_key("control", "droop_x",
                        [](Scenario& s) { return &s.params.control.droop_x; }));
    d.push_back(num_key("control", "u_ac_max",
                        [](Scenario& s) { return &s.params.control.u_ac_max; }));
    d.push_back(num_key("control", "droop_filter_tau",
                        [](Scenario& s) { return &s.params.control.droop_filter_tau; }));

    d.push_back(num_key("supervisor", "mode_dwell",
                        [](Scenario& s) { return &s.params.supervisor.mode_dwell; }));
    d.push_back(num_key("supervisor", "trip_level",
                        [](Scenario& s) { return &s.params.supervisor.trip_level; }));
    d.push_back(num_key("supervisor", "trip_dwell",
                        [](Scenario& s) { return &s.params.supervisor.trip_dwell; }));
    d.push_back(num_key("supervisor", "rate_window",
                        [](Scenario& s) { return &s.params.supervisor.rate_window; }));
    d.push_back(num_key("supervisor", "rate_margin",
                        [](Scenario& s) { return &s.params.supervisor.rate_margin; }));
    return d;
  }();
  return defs;
}

const KeyDef* find_key(const std::string& sec, const std::string& key) {
  for (const auto& k : schema()) {
    if (k.section == sec && k.key == key) return &k;
  }
  return nullptr;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string serialize_sections(const Scenario& s, const std::vector<std::string>& wanted) {
  std::string out;
  std::string cur;
  for (const auto& k : schema()) {
    if (std::find(wanted.begin(), wanted.end(), k.section) == wanted.end()) continue;
    if (k.section != cur) {
      if (!out.empty()) out += "\n";
      out += "[" + k.section + "]\n";
      cur = k.section;
    }
    out += k.key + " = " + k.get(s) + "\n";
  }
  return out;
}

}  // namespace

ParseOutcome parse_scenario(const std::string& text, bool lenient) {
  ParseOutcome out;
  Scenario& s = out.scenario;

  std::string section;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    const size_t hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        out.errors.push_back("line " + std::to_string(lineno) + ": unterminated section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        out.errors.push_back("line " + std::to_string(lineno) + ": empty section name");
      }
      continue;
    }

    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      out.errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      out.errors.push_back("line " + std::to_string(lineno) + ": key '" + key +
                           "' outside any section");
      continue;
    }
    const KeyDef* def = find_key(section, key);
    if (!def) {
      const std::string msg = section + "." + key + ": unknown key";
      if (lenient)
        out.warnings.push_back(msg);
      else
        out.errors.push_back(msg);
      continue;
    }
    std::string err;
    if (!def->set(s, value, err)) {
      out.errors.push_back(section + "." + key + ": " + err);
    }
  }

  if (out.errors.empty()) {
    auto verr = finalize_scenario(s);
    out.errors.insert(out.errors.end(), verr.begin(), verr.end());
  }
  return out;
}

std::string serialize_scenario(const Scenario& s) {
  return serialize_sections(
      s, {"scenario", "toggles", "wind", "turbine", "electrical", "ael", "bus",
          "control", "supervisor"});
}

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> e;
  auto need = [&](bool ok, const std::string& msg) {
    if (!ok) e.push_back(msg);
  };

  need(s.run.duration > 0.0 && s.run.duration <= 3600.0,
       "scenario.duration: must be in (0, 3600] s");
  need(s.run.dt >= 1e-5 && s.run.dt <= 0.1, "scenario.dt: must be in [1e-5, 0.1] s");
  if (s.run.output_period > 0.0) {
    need(s.run.output_period + 1e-15 >= s.run.dt,
         "scenario.output_period: must be at least dt");
    const double ratio = s.run.output_period / s.run.dt;
    need(std::fabs(ratio - std::round(ratio)) < 1e-6,
         "scenario.output_period: must be an integer multiple of dt");
  }
  need(s.run.capacity_ratio > 0.0 && s.run.capacity_ratio <= 2.0,
       "scenario.capacity_ratio: must be in (0, 2]");

  switch (s.wind.kind) {
    case WindKind::Constant:
      need(s.wind.speed >= 0.0 && s.wind.speed <= 40.0,
           "wind.speed: must be in [0, 40] m/s");
      break;
    case WindKind::Steps: {
      need(!s.wind.steps.empty(), "wind.steps: steps profile needs at least one entry");
      double prev = -1.0;
      bool first = true;
      for (const auto& [t, v] : s.wind.steps) {
        if (first) {
          need(t == 0.0, "wind.steps: first entry must be at time 0");
          first = false;
        } else {
          need(t > prev, "wind.steps: times must be strictly increasing");
        }
        prev = t;
        need(v >= 0.0 && v <= 40.0, "wind.steps: speeds must be in [0, 40] m/s");
      }
      break;
    }
    case WindKind::Weibull:
      need(s.wind.shape >= 0.5 && s.wind.shape <= 10.0,
           "wind.shape: must be in [0.5, 10]");
      need(s.wind.mean > 0.0 && s.wind.mean <= 40.0, "wind.mean: must be in (0, 40] m/s");
      need(s.wind.sample_period >= 0.01 && s.wind.sample_period <= 10.0,
           "wind.sample_period: must be in [0.01, 10] s");
      need(s.wind.filter_tau >= 0.0, "wind.filter_tau: must be non-negative");
      break;
  }

  const auto& t = s.params.turbine;
  need(t.air_density > 0.0, "turbine.air_density: must be positive");
  need(t.blade_radius > 0.0, "turbine.blade_radius: must be positive");
  need(t.rated_mech_power > 0.0, "turbine.rated_mech_power: must be positive");
  need(t.inertia_constant > 0.0 && t.inertia_constant <= 20.0,
       "turbine.inertia_constant: must be in (0, 20] s");
  need(t.speed_upper_limit > 1.0 && t.speed_upper_limit <= 2.0,
       "turbine.speed_upper_limit: must be in (1, 2] pu");
  need(t.cut_in_speed > 0.0 && t.cut_in_speed < 0.5,
       "turbine.cut_in_speed: must be in (0, 0.5) pu");

  const auto& el = s.params.electrical;
  need(el.rated_power > 0.0, "electrical.rated_power: must be positive");
  need(el.rated_voltage > 0.0, "electrical.rated_voltage: must be positive");
  need(el.rated_frequency >= 10.0 && el.rated_frequency <= 400.0,
       "electrical.rated_frequency: must be in [10, 400] Hz");
  need(el.conversion_efficiency > 0.5 && el.conversion_efficiency <= 1.0,
       "electrical.conversion_efficiency: must be in (0.5, 1]");

  const auto& a = s.params.ael;
  need(a.rated_voltage > 0.0, "ael.rated_voltage: must be positive");
  need(a.reversible_voltage >= 0.0 && a.reversible_voltage < a.rated_voltage,
       "ael.reversible_voltage: must be in [0, rated_voltage)");
  need(a.min_load_fraction >= 0.0 && a.min_load_fraction <= 0.5,
       "ael.min_load_fraction: must be in [0, 0.5]");
  need(a.ramp_rate > 0.0 && a.ramp_rate <= 10.0, "ael.ramp_rate: must be in (0, 10] /s");

  const auto& b = s.params.bus;
  need(b.capacitance > 0.0, "bus.capacitance: must be positive");
  need(b.dclink_capacitance > 0.0, "bus.dclink_capacitance: must be positive");
  need(b.dclink_voltage > 0.0, "bus.dclink_voltage: must be positive");

  const auto& c = s.params.control;
  need(c.msc_tau > 0.0, "control.msc_tau: must be positive");
  need(c.wind_ramp_rate > 0.0 && c.wind_ramp_rate <= 10.0,
       "control.wind_ramp_rate: must be in (0, 10] /s");
  need(c.pitch_kp >= 0.0 && c.pitch_ki >= 0.0, "control.pitch gains: must be non-negative");
  need(c.pitch_max > 0.0 && c.pitch_max <= 90.0, "control.pitch_max: must be in (0, 90] deg");
  need(c.pitch_rate > 0.0, "control.pitch_rate: must be positive");
  need(c.pitch_setpoint > 1.0 && c.pitch_setpoint <= t.speed_upper_limit,
       "control.pitch_setpoint: must be in (1, speed_upper_limit] pu");
  need(c.volt_kp >= 0.0 && c.volt_ki >= 0.0, "control.volt gains: must be non-negative");
  need(c.power_kp >= 0.0 && c.power_ki >= 0.0, "control.power gains: must be non-negative");
  need(c.current_kp >= 0.0 && c.current_ki >= 0.0,
       "control.current gains: must be non-negative");
  need(c.lsc_kp >= 0.0 && c.lsc_ki >= 0.0, "control.lsc gains: must be non-negative");
  need(c.droop_x >= 0.0 && c.droop_x < 1.0, "control.droop_x: must be in [0, 1)");
  need(c.u_ac_max > 1.0 && c.u_ac_max <= 1.5, "control.u_ac_max: must be in (1, 1.5] pu");
  need(c.droop_filter_tau > 0.0, "control.droop_filter_tau: must be positive");

  const auto& sp = s.params.supervisor;
  need(sp.mode_dwell >= 0.0 && sp.mode_dwell <= 10.0,
       "supervisor.mode_dwell: must be in [0, 10] s");
  need(sp.trip_level > 1.0 && sp.trip_level <= 2.0,
       "supervisor.trip_level: must be in (1, 2] pu");
  need(sp.trip_dwell >= 0.0 && sp.trip_dwell <= 10.0,
       "supervisor.trip_dwell: must be in [0, 10] s");
  need(sp.rate_window > 0.0 && sp.rate_window <= 10.0,
       "supervisor.rate_window: must be in (0, 10] s");
  need(sp.rate_margin >= 1.0 && sp.rate_margin <= 2.0,
       "supervisor.rate_margin: must be in [1, 2]");
  return e;
}

std::vector<std::string> finalize_scenario(Scenario& s) {
  auto errors = validate_scenario(s);
  if (!errors.empty()) return errors;
  try {
    finalize_params(s.params, s.run.capacity_ratio);
  } catch (const std::exception& ex) {
    errors.push_back(std::string("params: ") + ex.what());
  }
  return errors;
}

std::string scenario_digest(const Scenario& s) {
  return hex64(fnv1a(serialize_scenario(s)));
}

std::string config_digest(const Scenario& s) {
  return hex64(fnv1a(serialize_sections(
      s, {"turbine", "electrical", "ael", "bus", "control", "supervisor"})));
}

namespace {

const std::map<std::string, std::string>& builtin_texts() {
  static const std::map<std::string, std::string> cases = {
      {"case1", R"(# Step changes in wind under matched converter and stack ratings.
[scenario]
name = case1
duration = 10
capacity_ratio = 1.0
init = steady

[toggles]
ramp_limits = false

[wind]
profile = steps
steps = 0:9, 3:11, 7:9
)"},
      {"case2", R"(# Same wind steps with the loading-rate limits enforced, from a
# low-power start; the rotor runs into the speed clamp and the blades pitch.
[scenario]
name = case2
duration = 10
capacity_ratio = 1.0
init = cold

[toggles]
ramp_limits = true

[wind]
profile = steps
steps = 0:9, 3:11, 7:9
)"},
      {"case3", R"(# Undersized stack and blocked mode switching: the surplus has nowhere
# to go, the bus voltage runs away and the overvoltage protection trips.
[scenario]
name = case3
duration = 6
capacity_ratio = 0.6
init = steady

[toggles]
ramp_limits = false
switching_block = true

[wind]
profile = steps
steps = 0:9, 3:12
)"},
      {"case4", R"(# Undersized stack with switching enabled: voltage-support mode picks up
# when the stack saturates and hands back once the wind recedes.
[scenario]
name = case4
duration = 10
capacity_ratio = 0.6
init = steady

[toggles]
ramp_limits = false

[wind]
profile = steps
steps = 0:9, 2:11, 5:9
)"},
      {"case5", R"(# Thirty seconds of smoothed Weibull wind around the mode boundary.
[scenario]
name = case5
duration = 30
capacity_ratio = 0.6
init = steady

[toggles]
ramp_limits = false

[wind]
profile = weibull
shape = 2.0
mean = 10.5
sample_period = 0.5
filter_tau = 1.5
seed = 7
)"},
  };
  return cases;
}

}  // namespace

const std::vector<std::string>& builtin_scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : builtin_texts()) n.push_back(k);
    return n;
  }();
  return names;
}

bool is_builtin_scenario(const std::string& name) {
  return builtin_texts().count(name) > 0;
}

std::string builtin_scenario_text(const std::string& name) {
  auto it = builtin_texts().find(name);
  if (it == builtin_texts().end())
    throw std::invalid_argument("no builtin scenario named '" + name + "'");
  return it->second;
}

Scenario builtin_scenario(const std::string& name) {
  auto out = parse_scenario(builtin_scenario_text(name));
  if (!out.ok())
    throw std::logic_error("builtin scenario '" + name + "' failed to parse");
  return out.scenario;
}

}  // namespace windel
