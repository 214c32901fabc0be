#include "windel/supervisor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace windel {

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::N: return "N";
    case Mode::E: return "E";
    case Mode::Tripped: return "TRIPPED";
  }
  return "?";
}

const char* binding_name(Binding b) {
  switch (b) {
    case Binding::Mppt: return "mppt";
    case Binding::Rated: return "rated";
    case Binding::RampCap: return "ramp_cap";
    case Binding::Disconnected: return "disconnected";
  }
  return "?";
}

ScheduleResult schedule_steady_state(double p_mppt, double p_prev, double dt,
                                     const OperatingEnvelope& env) {
  if (p_mppt < env.p_min) return {0.0, Binding::Disconnected};
  double ramp_cap = std::numeric_limits<double>::infinity();
  if (std::isfinite(env.rate_limit)) {
    ramp_cap = std::max(p_prev + env.rate_limit * dt, env.p_min);
  }
  const double granted = std::min({p_mppt, env.p_rated, ramp_cap});
  Binding b = Binding::RampCap;
  if (granted == p_mppt)
    b = Binding::Mppt;
  else if (granted == env.p_rated)
    b = Binding::Rated;
  return {granted, b};
}

namespace {

// Instantaneous fitness for N given the deliverable power; the upper
// bound is relaxed by reentry_factor when arguing for a return from E,
// which is where the hysteresis deadband lives.
bool n_conditions(double p_avail, double rate, const OperatingEnvelope& env,
                  bool reentry) {
  const double upper = reentry ? env.reentry_factor * env.p_rated : env.p_rated;
  if (!(p_avail > env.p_min)) return false;
  if (!(p_avail < upper)) return false;
  if (std::isfinite(env.rate_limit) && std::fabs(rate) >= env.rate_limit) return false;
  return true;
}

}  // namespace

ModeState mode_decision(double p_avail, double p_w_rate, const OperatingEnvelope& env,
                        ModeState cur, double t, double dwell) {
  if (cur.mode == Mode::Tripped) return cur;

  Mode want;
  if (cur.mode == Mode::N) {
    want = n_conditions(p_avail, p_w_rate, env, false) ? Mode::N : Mode::E;
  } else {
    want = n_conditions(p_avail, p_w_rate, env, true) ? Mode::N : Mode::E;
  }

  if (want == cur.mode) {
    cur.pending = cur.mode;
    cur.pending_since = t;
    return cur;
  }
  if (cur.pending != want) {
    cur.pending = want;
    cur.pending_since = t;
    return cur;
  }
  if (t - cur.pending_since + 1e-12 >= dwell) {
    cur.mode = want;
    cur.entered_at = t;
    cur.pending = want;
    cur.pending_since = t;
  }
  return cur;
}

std::optional<TripEvent> protection_check(ProtectionState& s, const SupervisorParams& sp,
                                          double u_ac_pu, double t) {
  if (s.tripped) return std::nullopt;
  if (u_ac_pu > sp.trip_level) {
    if (s.above_since < 0.0) s.above_since = t;
    if (t - s.above_since + 1e-12 >= sp.trip_dwell) {
      s.tripped = true;
      return TripEvent{t, u_ac_pu};
    }
  } else {
    s.above_since = -1.0;
  }
  return std::nullopt;
}

double effective_rate_limit(const Params& p) {
  return std::min(p.ael.ramp_rate * p.ael.rated_power,
                  p.control.wind_ramp_rate * p.turbine.rated_mech_power);
}

Supervisor::Supervisor(const Params& p, bool ramp_limits, bool switching_block)
    : params_(p), ramp_limits_(ramp_limits), switching_block_(switching_block) {
  env_.p_min = p.ael.min_power;
  env_.p_rated = p.ael.rated_power;
  env_.reentry_factor = p.electrical.conversion_efficiency;
  env_.rate_limit = ramp_limits ? effective_rate_limit(p)
                                : std::numeric_limits<double>::infinity();
}

SupervisorCommands Supervisor::step(const SupervisorInputs& in, double dt) {
  SupervisorCommands cmd;

  // realized output-power slope over the configured window
  p_w_hist_.emplace_back(in.t, in.p_w);
  const double horizon = in.t - params_.supervisor.rate_window;
  while (p_w_hist_.size() > 1 && p_w_hist_[1].first <= horizon) p_w_hist_.pop_front();
  if (p_w_hist_.size() > 1 && in.t > p_w_hist_.front().first) {
    rate_est_ = (in.p_w - p_w_hist_.front().second) / (in.t - p_w_hist_.front().first);
  } else {
    rate_est_ = 0.0;
  }

  if (auto trip = protection_check(prot_, params_.supervisor, in.u_ac_pu, in.t)) {
    state_.mode = Mode::Tripped;
    state_.entered_at = in.t;
    cmd.events.push_back("trip:overvoltage");
  }

  if (state_.mode != Mode::Tripped) {
    const double eta = params_.electrical.conversion_efficiency;
    const double p_avail = eta * in.p_mppt;
    OperatingEnvelope dec = env_;
    dec.rate_limit = ramp_limits_
                         ? env_.rate_limit * params_.supervisor.rate_margin
                         : std::numeric_limits<double>::infinity();
    const ModeState next = mode_decision(p_avail, rate_est_, dec, state_, in.t,
                                         params_.supervisor.mode_dwell);
    if (next.mode != state_.mode) {
      if (switching_block_) {
        if (!block_latched_) {
          cmd.events.push_back("switch_blocked");
          block_latched_ = true;
        }
      } else {
        cmd.events.push_back(std::string("mode:") + mode_name(state_.mode) + "->" +
                             mode_name(next.mode));
        state_ = next;
      }
    } else {
      state_ = next;
      block_latched_ = false;
    }
  }

  const double eta = params_.electrical.conversion_efficiency;
  const double prev = have_prev_ ? p_prev_ : in.p_ael;
  const ScheduleResult sched =
      schedule_steady_state(eta * in.p_mppt, prev, dt, env_);
  cmd.binding = sched.binding;

  cmd.mode = state_.mode;
  switch (state_.mode) {
    case Mode::N:
      if (sched.binding == Binding::Disconnected) {
        cmd.msc_ref = MscRefSelector::Zero;
        cmd.ipbc_branch = IpbcBranch::Off;
        cmd.ael_connected = false;
        cmd.p_ael_ref = 0.0;
      } else {
        cmd.msc_ref = MscRefSelector::Mppt;
        cmd.ipbc_branch = IpbcBranch::VoltageLoop;
        cmd.ael_connected = true;
        cmd.p_ael_ref = sched.p_ael;
      }
      break;
    case Mode::E:
      if (sched.binding == Binding::Disconnected) {
        cmd.msc_ref = MscRefSelector::Zero;
        cmd.ipbc_branch = IpbcBranch::Off;
        cmd.ael_connected = false;
        cmd.p_ael_ref = 0.0;
      } else {
        cmd.msc_ref = MscRefSelector::Droop;
        cmd.ipbc_branch = IpbcBranch::PowerCurrentLoop;
        cmd.ael_connected = true;
        cmd.p_ael_ref = sched.p_ael;
      }
      break;
    case Mode::Tripped:
      cmd.msc_ref = MscRefSelector::Zero;
      cmd.ipbc_branch = IpbcBranch::Off;
      cmd.ael_connected = false;
      cmd.p_ael_ref = 0.0;
      break;
  }

  p_prev_ = in.p_ael;
  have_prev_ = true;
  return cmd;
}

}  // namespace windel
