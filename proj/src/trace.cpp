#include "windel/trace.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace windel {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Mode mode_from_name(const std::string& s) {
  if (s == "N") return Mode::N;
  if (s == "E") return Mode::E;
  if (s == "TRIPPED") return Mode::Tripped;
  throw std::invalid_argument("unknown mode label '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

}  // namespace

std::string format_trace(const Trace& trace) {
  std::string out(kTraceHeaderV1);
  out += "\n";
  for (const auto& r : trace) {
    out += fmt(r.t);
    out += ",";
    out += fmt(r.v_wind);
    out += ",";
    out += fmt(r.omega_pu);
    out += ",";
    out += fmt(r.beta_deg);
    out += ",";
    out += fmt(r.p_w_pu);
    out += ",";
    out += fmt(r.p_ael_pu);
    out += ",";
    out += fmt(r.u_ac_pu);
    out += ",";
    out += fmt(r.f_hz);
    out += ",";
    out += fmt(r.u_dc2_pu);
    out += ",";
    out += fmt(r.duty);
    out += ",";
    out += mode_name(r.mode);
    out += ",";
    for (size_t i = 0; i < r.events.size(); ++i) {
      if (i) out += ";";
      out += r.events[i];
    }
    out += "\n";
  }
  return out;
}

void write_trace(const Trace& trace, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << format_trace(trace);
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

Trace parse_trace(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("trace is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceHeaderV1)
    throw std::runtime_error("unrecognized trace header: '" + line + "'");

  Trace trace;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cols = split(line, ',');
    if (cols.size() != 12)
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected 12 columns, got " +
                               std::to_string(cols.size()));
    TraceRecord r;
    try {
      r.t = std::stod(cols[0]);
      r.v_wind = std::stod(cols[1]);
      r.omega_pu = std::stod(cols[2]);
      r.beta_deg = std::stod(cols[3]);
      r.p_w_pu = std::stod(cols[4]);
      r.p_ael_pu = std::stod(cols[5]);
      r.u_ac_pu = std::stod(cols[6]);
      r.f_hz = std::stod(cols[7]);
      r.u_dc2_pu = std::stod(cols[8]);
      r.duty = std::stod(cols[9]);
    } catch (const std::exception&) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": bad numeric field");
    }
    r.mode = mode_from_name(cols[10]);
    if (!cols[11].empty()) {
      for (auto& ev : split(cols[11], ';'))
        if (!ev.empty()) r.events.push_back(ev);
    }
    trace.push_back(std::move(r));
  }
  return trace;
}

Trace read_trace(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_trace(ss.str());
}

std::string format_manifest(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["tool_version"] = kToolVersion;
  j["scenario_name"] = m.scenario_name;
  j["scenario_digest"] = m.scenario_digest;
  j["config_digest"] = m.config_digest;
  j["seed"] = m.seed;
  j["dt"] = m.dt;
  j["duration"] = m.duration;
  j["trace_file"] = m.trace_file;
  j["plot_files"] = m.plot_files;
  j["scenario_text"] = m.scenario_text;
  return j.dump(2) + "\n";
}

void write_manifest(const RunManifest& m, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << format_manifest(m);
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

RunManifest read_manifest(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    f >> j;
  } catch (const std::exception& ex) {
    throw std::runtime_error("manifest parse error in '" + path + "': " + ex.what());
  }
  RunManifest m;
  m.scenario_name = j.value("scenario_name", "");
  m.scenario_digest = j.value("scenario_digest", "");
  m.config_digest = j.value("config_digest", "");
  m.seed = j.value("seed", std::uint64_t{0});
  m.dt = j.value("dt", 0.0);
  m.duration = j.value("duration", 0.0);
  m.trace_file = j.value("trace_file", "");
  if (j.contains("plot_files"))
    m.plot_files = j["plot_files"].get<std::vector<std::string>>();
  m.scenario_text = j.value("scenario_text", "");
  return m;
}

}  // namespace windel
