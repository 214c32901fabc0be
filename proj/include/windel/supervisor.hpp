#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "windel/control.hpp"
#include "windel/params.hpp"

namespace windel {

enum class Mode { N, E, Tripped };

const char* mode_name(Mode m);

// Absolute power envelope the scheduler and mode logic work against.
// rate_limit is the effective bound in W/s (min of stack and turbine
// limits); infinity disables rate logic.  reentry_factor scales the upper
// bound for leaving E back to N, forming the hysteresis deadband.
struct OperatingEnvelope {
  double p_min = 0.0;          // W
  double p_rated = 0.0;        // W
  double rate_limit = 0.0;     // W/s
  double reentry_factor = 1.0;
};

enum class Binding { Mppt, Rated, RampCap, Disconnected };

const char* binding_name(Binding b);

struct ScheduleResult {
  double p_ael = 0.0;  // W, 0 or within [p_min, p_rated]
  Binding binding = Binding::Disconnected;
};

// Steady-state electrolyzer power assignment: largest feasible load under
// the availability, rating and ramp constraints; below minimum availability
// the stack disconnects.  The ramp cap is floored at minimum load so a
// reconnect block-loads instead of dwelling in the forbidden band.
ScheduleResult schedule_steady_state(double p_mppt, double p_prev, double dt,
                                     const OperatingEnvelope& env);

struct ModeState {
  Mode mode = Mode::N;
  double entered_at = 0.0;
  Mode pending = Mode::N;
  double pending_since = 0.0;
};

// Hysteretic mode predicate with time dwell.  p_avail is the power the
// caller considers deliverable to the stack; rate is the observed output
// power slope.  Tripped is absorbing.
ModeState mode_decision(double p_avail, double p_w_rate, const OperatingEnvelope& env,
                        ModeState cur, double t, double dwell);

struct TripEvent {
  double t = 0.0;
  double u_ac_pu = 0.0;
};

struct ProtectionState {
  double above_since = -1.0;
  bool tripped = false;
};

// Overvoltage watchdog: fires once the AC voltage stays above the trip
// level for the configured dwell.
std::optional<TripEvent> protection_check(ProtectionState& s, const SupervisorParams& sp,
                                          double u_ac_pu, double t);

struct SupervisorCommands {
  Mode mode = Mode::N;
  MscRefSelector msc_ref = MscRefSelector::Mppt;
  IpbcBranch ipbc_branch = IpbcBranch::VoltageLoop;
  double p_ael_ref = 0.0;   // W
  bool ael_connected = true;
  Binding binding = Binding::Mppt;
  std::vector<std::string> events;
};

struct SupervisorInputs {
  double t = 0.0;
  double p_mppt = 0.0;   // W, capped availability curve at current speed
  double p_w = 0.0;      // W, measured generator output
  double p_ael = 0.0;    // W, measured stack power
  double u_ac_pu = 0.0;
};

// Central coordinator: rate estimation, mode decision, scheduling and
// protection composed at the control cadence.  switching_block freezes
// mode transitions (protection still runs).
class Supervisor {
 public:
  Supervisor(const Params& p, bool ramp_limits, bool switching_block);

  SupervisorCommands step(const SupervisorInputs& in, double dt);

  Mode mode() const { return state_.mode; }
  const OperatingEnvelope& envelope() const { return env_; }
  double rate_estimate() const { return rate_est_; }

 private:
  Params params_;
  OperatingEnvelope env_;
  bool ramp_limits_;
  bool switching_block_;
  ModeState state_;
  ProtectionState prot_;
  std::deque<std::pair<double, double>> p_w_hist_;  // (t, p_w)
  double rate_est_ = 0.0;
  double p_prev_ = 0.0;
  bool have_prev_ = false;
  bool block_latched_ = false;
};

// Effective ramp bound in W/s shared by the scheduler and the turbine
// slew limiter.
double effective_rate_limit(const Params& p);

}  // namespace windel
