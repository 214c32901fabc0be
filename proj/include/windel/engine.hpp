#pragma once

#include <optional>
#include <string>
#include <vector>

#include "windel/control.hpp"
#include "windel/plant.hpp"
#include "windel/scenario.hpp"
#include "windel/supervisor.hpp"
#include "windel/trace.hpp"
#include "windel/wind.hpp"

namespace windel {

// Full dynamic state of one run.  Plain value type: independent runs never
// share anything, so concurrent simulations are safe by construction.
struct SystemState {
  double t = 0.0;
  DrivetrainState drivetrain;
  DcBusState bus;
  double u_dc1 = 0.0;   // V back-to-back link
  double beta = 0.0;    // deg
  MscLoop msc;
  PiController pitch_pi;
  PiController lsc_pi;
  IpbcController ipbc;
  FrequencyChannel freq;
  double u_ac_filt = 0.0;  // V, droop measurement filter state
  Mode mode = Mode::N;
};

class Engine {
 public:
  explicit Engine(const Scenario& s);

  // Advances one control period and appends a record; returns the record.
  const TraceRecord& step();
  // Runs the whole scenario from the configured initial state.
  Trace run();

  const SystemState& state() const { return x_; }
  const Scenario& scenario() const { return scn_; }

 private:
  void init_state();

  Scenario scn_;
  Params p_;  // finalized copy of scn_.params
  WindGenerator wind_;
  Supervisor sup_;
  DroopParams droop_;
  SystemState x_;
  Trace trace_;
  std::vector<std::string> pending_events_;
  TraceRecord last_rec_;
  long output_stride_ = 1;
  long step_index_ = 0;
};

Trace run_scenario(const Scenario& s);

enum class EquilibriumClass { Stable, None, Boundary };

struct Equilibrium {
  double u_ac_pu = 0.0;
  double p_w = 0.0;    // W
  double p_ael = 0.0;  // W
  double duty = 0.0;
  Mode mode = Mode::N;
  EquilibriumClass cls = EquilibriumClass::None;
};

// Static operating point at a given wind speed.  N-mode: intersection of
// the deliverable maximum-power line with the duty-parameterized load
// curve (capped at stack rating); with no duty given the regulation
// target at rated bus voltage is solved.  E-mode: droop line against the
// saturated stack, bisected to 1e-9 pu.
Equilibrium find_equilibrium(Mode mode, double v_wind, const Params& p,
                             std::optional<double> duty = std::nullopt);

struct CheckResult {
  std::string name;
  bool pass = true;
  bool skipped = false;
  std::string detail;
  double t_first_fail = -1.0;
};

struct AuditReport {
  std::vector<CheckResult> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Post-hoc invariant audit of a recorded trace: per-step power balance,
// ramp compliance, frequency band, per-mode voltage band, mode soundness
// against the envelope, switch spacing, trip behaviour.
AuditReport verify_trace(const Trace& trace, const Scenario& s);

}  // namespace windel
