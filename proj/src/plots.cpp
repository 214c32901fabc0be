#include "windel/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace windel {

namespace {

struct Series {
  std::string label;
  std::string color;
  const double TraceRecord::* field;
  bool right_axis = false;
};

struct Extent {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void take(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(hi > lo)) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double m = 0.08 * (hi - lo);
    lo -= m;
    hi += m;
  }
};

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

constexpr double kW = 900.0;
constexpr double kH = 360.0;
constexpr double kL = 64.0;
constexpr double kR = 64.0;
constexpr double kT = 40.0;
constexpr double kB = 44.0;

double xpix(double t, const Extent& xe) {
  return kL + (t - xe.lo) / (xe.hi - xe.lo) * (kW - kL - kR);
}

double ypix(double v, const Extent& ye) {
  return kH - kB - (v - ye.lo) / (ye.hi - ye.lo) * (kH - kT - kB);
}

void axis_ticks(std::string& svg, const Extent& e, bool vertical, bool right,
                const Extent& xe) {
  for (int i = 0; i <= 4; ++i) {
    const double v = e.lo + (e.hi - e.lo) * i / 4.0;
    if (vertical) {
      const double y = ypix(v, e);
      const double x = right ? kW - kR : kL;
      const double x2 = right ? x + 5 : x - 5;
      svg += "<line x1='" + num(x) + "' y1='" + num(y) + "' x2='" + num(x2) +
             "' y2='" + num(y) + "' stroke='#444'/>\n";
      svg += "<text x='" + num(right ? x + 8 : x - 8) + "' y='" + num(y + 4) +
             "' font-size='11' fill='#444' text-anchor='" +
             (right ? "start" : "end") + "'>" + num(v) + "</text>\n";
      if (!right) {
        svg += "<line x1='" + num(kL) + "' y1='" + num(y) + "' x2='" +
               num(kW - kR) + "' y2='" + num(y) +
               "' stroke='#ddd' stroke-dasharray='3,4'/>\n";
      }
    } else {
      const double x = xpix(v, xe);
      svg += "<line x1='" + num(x) + "' y1='" + num(kH - kB) + "' x2='" + num(x) +
             "' y2='" + num(kH - kB + 5) + "' stroke='#444'/>\n";
      svg += "<text x='" + num(x) + "' y='" + num(kH - kB + 20) +
             "' font-size='11' fill='#444' text-anchor='middle'>" + num(v) +
             "</text>\n";
    }
  }
}

std::string render_panel(const Trace& trace, const std::string& title,
                         const std::string& left_label,
                         const std::string& right_label,
                         const std::vector<Series>& series) {
  Extent xe, yl, yr;
  for (const auto& r : trace) xe.take(r.t);
  for (const auto& s : series) {
    Extent& e = s.right_axis ? yr : yl;
    for (const auto& r : trace) e.take(r.*(s.field));
  }
  if (!(xe.hi > xe.lo)) {
    xe.lo = 0.0;
    xe.hi = 1.0;
  }
  yl.pad();
  const bool has_right = !right_label.empty();
  if (has_right) yr.pad();

  const size_t stride = std::max<size_t>(1, trace.size() / 2000);

  std::string svg;
  svg += "<svg xmlns='http://www.w3.org/2000/svg' width='" + num(kW) +
         "' height='" + num(kH) + "' viewBox='0 0 " + num(kW) + " " + num(kH) +
         "'>\n";
  svg += "<rect width='100%' height='100%' fill='white'/>\n";
  svg += "<text x='" + num(kW / 2) +
         "' y='20' font-size='14' fill='#222' text-anchor='middle'>" + title +
         "</text>\n";

  axis_ticks(svg, yl, true, false, xe);
  if (has_right) axis_ticks(svg, yr, true, true, xe);
  axis_ticks(svg, xe, false, false, xe);

  svg += "<line x1='" + num(kL) + "' y1='" + num(kT) + "' x2='" + num(kL) +
         "' y2='" + num(kH - kB) + "' stroke='#444'/>\n";
  svg += "<line x1='" + num(kW - kR) + "' y1='" + num(kT) + "' x2='" +
         num(kW - kR) + "' y2='" + num(kH - kB) + "' stroke='#444'/>\n";
  svg += "<line x1='" + num(kL) + "' y1='" + num(kH - kB) + "' x2='" +
         num(kW - kR) + "' y2='" + num(kH - kB) + "' stroke='#444'/>\n";

  svg += "<text x='14' y='" + num(kH / 2) +
         "' font-size='12' fill='#444' text-anchor='middle' transform='rotate(-90 14 " +
         num(kH / 2) + ")'>" + left_label + "</text>\n";
  if (has_right) {
    svg += "<text x='" + num(kW - 14) + "' y='" + num(kH / 2) +
           "' font-size='12' fill='#444' text-anchor='middle' transform='rotate(90 " +
           num(kW - 14) + " " + num(kH / 2) + ")'>" + right_label + "</text>\n";
  }
  svg += "<text x='" + num(kW / 2) + "' y='" + num(kH - 8) +
         "' font-size='12' fill='#444' text-anchor='middle'>time (s)</text>\n";

  // event markers, labels staggered to stay readable
  int stagger = 0;
  for (const auto& r : trace) {
    for (const auto& ev : r.events) {
      const double x = xpix(r.t, xe);
      svg += "<line x1='" + num(x) + "' y1='" + num(kT) + "' x2='" + num(x) +
             "' y2='" + num(kH - kB) +
             "' stroke='#888' stroke-dasharray='5,4'/>\n";
      std::string label = ev.size() > 22 ? ev.substr(0, 22) : ev;
      svg += "<text x='" + num(x + 4) + "' y='" + num(kT + 12 + 13 * (stagger % 3)) +
             "' font-size='10' fill='#666'>" + label + "</text>\n";
      ++stagger;
    }
  }

  double lx = kL + 10;
  for (const auto& s : series) {
    const Extent& e = s.right_axis ? yr : yl;
    std::string pts;
    size_t count = 0;
    for (size_t i = 0; i < trace.size(); i += stride) {
      pts += num(xpix(trace[i].t, xe)) + "," + num(ypix(trace[i].*(s.field), e)) + " ";
      ++count;
    }
    if (!trace.empty() && (trace.size() - 1) % stride != 0) {
      const auto& r = trace.back();
      pts += num(xpix(r.t, xe)) + "," + num(ypix(r.*(s.field), e));
    }
    if (count > 0) {
      svg += "<polyline fill='none' stroke='" + s.color +
             "' stroke-width='1.4' points='" + pts + "'/>\n";
    }
    svg += "<rect x='" + num(lx) + "' y='" + num(kT + 4) +
           "' width='12' height='4' fill='" + s.color + "'/>\n";
    svg += "<text x='" + num(lx + 16) + "' y='" + num(kT + 9) +
           "' font-size='11' fill='#333'>" + s.label + "</text>\n";
    lx += 16 + 7.0 * s.label.size() + 18;
  }

  svg += "</svg>\n";
  return svg;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << body;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace

std::vector<std::string> emit_plots(const Trace& trace, const std::string& out_dir,
                                    const std::string& scenario_name) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  std::vector<std::string> names;
  const std::string base = scenario_name.empty() ? "run" : scenario_name;

  {
    const std::string name = base + "_speed.svg";
    write_file((fs::path(out_dir) / name).string(),
               render_panel(trace, base + ": wind and rotor speed",
                            "wind (m/s) / pitch (deg)", "rotor speed (pu)",
                            {{"wind", "#1f77b4", &TraceRecord::v_wind, false},
                             {"rotor speed", "#d62728", &TraceRecord::omega_pu, true},
                             {"pitch", "#2ca02c", &TraceRecord::beta_deg, false}}));
    names.push_back(name);
  }
  {
    const std::string name = base + "_power.svg";
    write_file((fs::path(out_dir) / name).string(),
               render_panel(trace, base + ": generator and stack power",
                            "power (pu)", "",
                            {{"generator", "#1f77b4", &TraceRecord::p_w_pu, false},
                             {"electrolyzer", "#d62728", &TraceRecord::p_ael_pu,
                              false}}));
    names.push_back(name);
  }
  {
    const std::string name = base + "_voltage.svg";
    write_file((fs::path(out_dir) / name).string(),
               render_panel(trace, base + ": bus voltage and frequency",
                            "voltage (pu)", "frequency (Hz)",
                            {{"AC voltage", "#1f77b4", &TraceRecord::u_ac_pu, false},
                             {"frequency", "#d62728", &TraceRecord::f_hz, true}}));
    names.push_back(name);
  }
  return names;
}

}  // namespace windel
