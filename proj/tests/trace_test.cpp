#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "windel/trace.hpp"

using namespace windel;

namespace {

TraceRecord rec(double t, double x) {
  TraceRecord r;
  r.t = t;
  r.v_wind = x;
  r.omega_pu = x / 3.0;
  r.beta_deg = x * 1e-17;
  r.p_w_pu = 0.1 + 0.2;  // deliberately not 0.3
  r.p_ael_pu = M_PI;
  r.u_ac_pu = 1.0 - x * 1e-9;
  r.f_hz = 50.0 + std::sin(x);
  r.u_dc2_pu = std::sqrt(2.0) / std::sqrt(3.0);
  r.duty = 1.0 / 3.0;
  return r;
}

}  // namespace

TEST_CASE("numeric fields survive a text round trip bit-exactly") {
  Trace tr;
  tr.push_back(rec(0.0, 1.0));
  tr.push_back(rec(1e-3, 7.123456789012345));
  tr.back().mode = Mode::E;
  tr.back().events = {"mode:n_to_e", "trip:overvoltage"};
  TraceRecord tiny = rec(2e-3, 3.0);
  tiny.duty = 1e-300;
  tiny.p_w_pu = 0.0;
  tiny.mode = Mode::Tripped;
  tr.push_back(tiny);

  const std::string text = format_trace(tr);
  const Trace back = parse_trace(text);
  REQUIRE(back.size() == tr.size());
  for (size_t i = 0; i < tr.size(); ++i) {
    CAPTURE(i);
    CHECK(back[i].t == tr[i].t);
    CHECK(back[i].v_wind == tr[i].v_wind);
    CHECK(back[i].omega_pu == tr[i].omega_pu);
    CHECK(back[i].beta_deg == tr[i].beta_deg);
    CHECK(back[i].p_w_pu == tr[i].p_w_pu);
    CHECK(back[i].p_ael_pu == tr[i].p_ael_pu);
    CHECK(back[i].u_ac_pu == tr[i].u_ac_pu);
    CHECK(back[i].f_hz == tr[i].f_hz);
    CHECK(back[i].u_dc2_pu == tr[i].u_dc2_pu);
    CHECK(back[i].duty == tr[i].duty);
    CHECK(back[i].mode == tr[i].mode);
    CHECK(back[i].events == tr[i].events);
  }
  // canonical text is itself a fixed point
  CHECK(format_trace(back) == text);
}

TEST_CASE("formatted text uses the versioned header and LF endings") {
  Trace tr{rec(0.0, 9.0)};
  const std::string text = format_trace(tr);
  CHECK(text.rfind(kTraceHeaderV1, 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.back() == '\n');
  CHECK(text.find(",N,") != std::string::npos);
}

TEST_CASE("reader rejects foreign layouts") {
  CHECK_THROWS(parse_trace("time,speed\n0,1\n"));
  CHECK_THROWS(parse_trace(""));
  // right header, short row
  CHECK_THROWS(parse_trace(std::string(kTraceHeaderV1) + "\n0,1,2\n"));
  // unknown mode tag
  std::string row = std::string(kTraceHeaderV1) +
                    "\n0,9,0.7,0,0.4,0.4,1,50,1,0.5,X,\n";
  CHECK_THROWS(parse_trace(row));
}

TEST_CASE("reader tolerates CRLF headers from other tools") {
  Trace tr{rec(0.0, 9.0)};
  std::string text = format_trace(tr);
  text.insert(text.find('\n'), "\r");
  const Trace back = parse_trace(text);
  CHECK(back.size() == 1);
}

TEST_CASE("file round trip") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "windel_trace_test";
  fs::create_directories(dir);
  const std::string path = (dir / "t.csv").string();
  Trace tr{rec(0.0, 9.0), rec(1e-3, 9.5)};
  write_trace(tr, path);
  const Trace back = read_trace(path);
  REQUIRE(back.size() == 2);
  CHECK(back[1].v_wind == 9.5);
  fs::remove_all(dir);
}

TEST_CASE("manifest round trip keeps every field") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "windel_manifest_test";
  fs::create_directories(dir);
  const std::string path = (dir / "manifest.json").string();

  RunManifest m;
  m.scenario_name = "case4";
  m.scenario_digest = "0123456789abcdef";
  m.config_digest = "fedcba9876543210";
  m.seed = 7;
  m.dt = 1e-3;
  m.duration = 10.0;
  m.trace_file = "trace.csv";
  m.plot_files = {"case4_speed.svg", "case4_power.svg"};
  m.scenario_text = "[scenario]\nname = case4\n";
  write_manifest(m, path);

  const RunManifest back = read_manifest(path);
  CHECK(back.scenario_name == m.scenario_name);
  CHECK(back.scenario_digest == m.scenario_digest);
  CHECK(back.config_digest == m.config_digest);
  CHECK(back.seed == m.seed);
  CHECK(back.dt == m.dt);
  CHECK(back.duration == m.duration);
  CHECK(back.trace_file == m.trace_file);
  CHECK(back.plot_files == m.plot_files);
  CHECK(back.scenario_text == m.scenario_text);
  fs::remove_all(dir);
}

TEST_CASE("event field round trips multiple events") {
  Trace tr{rec(0.0, 9.0)};
  tr[0].events = {"switch_blocked", "trip:overvoltage"};
  const Trace back = parse_trace(format_trace(tr));
  REQUIRE(back[0].events.size() == 2);
  CHECK(back[0].events[0] == "switch_blocked");
  CHECK(back[0].events[1] == "trip:overvoltage");
}
