#pragma once

#include <string>
#include <vector>

#include "windel/scenario.hpp"
#include "windel/supervisor.hpp"

namespace windel {

// Column layout is versioned; readers reject anything else.
inline constexpr char kTraceHeaderV1[] =
    "t,v_wind,omega_pu,beta_deg,p_w_pu,p_ael_pu,u_ac_pu,f_hz,u_dc2_pu,duty,mode,events";

struct TraceRecord {
  double t = 0.0;
  double v_wind = 0.0;
  double omega_pu = 0.0;
  double beta_deg = 0.0;
  double p_w_pu = 0.0;
  double p_ael_pu = 0.0;
  double u_ac_pu = 0.0;
  double f_hz = 0.0;
  double u_dc2_pu = 0.0;
  double duty = 0.0;
  Mode mode = Mode::N;
  std::vector<std::string> events;
};

using Trace = std::vector<TraceRecord>;

// 17 significant digits, '.' decimal point, LF endings; numeric fields
// survive a write/read round trip bit-exactly.
void write_trace(const Trace& trace, const std::string& path);
std::string format_trace(const Trace& trace);
Trace read_trace(const std::string& path);
Trace parse_trace(const std::string& text);

struct RunManifest {
  std::string scenario_name;
  std::string scenario_digest;
  std::string config_digest;
  std::uint64_t seed = 0;
  double dt = 0.0;
  double duration = 0.0;
  std::string trace_file;
  std::vector<std::string> plot_files;
  std::string scenario_text;  // resolved canonical form
};

std::string format_manifest(const RunManifest& m);
void write_manifest(const RunManifest& m, const std::string& path);
RunManifest read_manifest(const std::string& path);

}  // namespace windel
