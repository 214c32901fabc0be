#include "windel/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace windel {

namespace {

Params finalized_params(const Scenario& s) {
  Params p = s.params;
  finalize_params(p, s.run.capacity_ratio);
  return p;
}

long stride_for(const RunSettings& r) {
  if (r.output_period <= 0.0) return 1;
  const long n = std::lround(r.output_period / r.dt);
  return std::max(n, 1L);
}

double stack_terminal_voltage(const ElectrolyzerParams& a, double power) {
  if (power <= 0.0) return 0.0;
  const double ur = a.reversible_voltage;
  return 0.5 * (ur + std::sqrt(ur * ur + 4.0 * power * a.resistance));
}

double stack_power_at(const Params& p, double duty, double u_dc2) {
  return ael_power(p.ael, buck_output(duty, u_dc2));
}

double rotor_accel(const TurbineParams& t, double v, double omega, double beta,
                   double p_elec) {
  const double w_floor = t.cut_in_speed * t.rated_speed;
  const double t_mech = aero_torque(t, v, omega, beta);
  const double t_elec = p_elec / std::max(omega, w_floor);
  return (t_mech - t_elec) / t.inertia;
}

}  // namespace

Engine::Engine(const Scenario& s)
    : scn_(s),
      p_(finalized_params(s)),
      wind_(s.wind),
      sup_(p_, s.toggles.ramp_limits, s.toggles.switching_block),
      droop_(make_droop(p_)) {
  scn_.params = p_;
  output_stride_ = stride_for(scn_.run);
  init_state();
}

void Engine::init_state() {
  x_ = SystemState{};
  const double v0 = wind_.value(0.0);
  const double u_rdc = p_.bus.rated_voltage_dc;

  double omega = p_.turbine.lambda_opt * v0 / p_.turbine.blade_radius;
  const double w_max = p_.turbine.speed_upper_limit * p_.turbine.rated_speed;
  const double w_min = p_.turbine.cut_in_speed * p_.turbine.rated_speed;
  omega = std::clamp(omega, w_min, w_max);
  x_.drivetrain.omega = omega;

  x_.bus.energy = 0.5 * p_.bus.capacitance * u_rdc * u_rdc;
  x_.u_dc1 = p_.bus.dclink_voltage;
  x_.beta = 0.0;

  x_.pitch_pi = PiController{p_.control.pitch_kp, p_.control.pitch_ki, 0.0,
                             p_.control.pitch_max, true};
  x_.lsc_pi = PiController{p_.control.lsc_kp, p_.control.lsc_ki, -2.0, 2.0, true};
  x_.ipbc = make_ipbc(p_);
  x_.freq.omega_s_ref = 2.0 * M_PI * p_.electrical.rated_frequency;
  x_.u_ac_filt = p_.electrical.rated_voltage;
  x_.mode = Mode::N;

  if (scn_.run.init == InitKind::Steady) {
    const double p_e =
        std::min(mppt_power(p_.turbine, omega), p_.electrical.rated_power);
    x_.msc.p_ref = p_e;
    x_.msc.p = p_e;
    const double p_stack =
        std::min(p_.electrical.conversion_efficiency * p_e, p_.ael.rated_power);
    const double u_ael = stack_terminal_voltage(p_.ael, p_stack);
    const double duty = std::clamp(u_ael / u_rdc, 0.0, 1.0);
    x_.ipbc.branch = IpbcBranch::VoltageLoop;
    x_.ipbc.duty = duty;
    x_.ipbc.volt.preload(duty, 0.0);
    const double slip = 1.0 - omega / p_.turbine.rated_speed;
    x_.lsc_pi.preload(slip * p_e / p_.electrical.rated_power, 0.0);
  }

  trace_.clear();
  pending_events_.clear();
  last_rec_ = TraceRecord{};
  step_index_ = 0;
}

const TraceRecord& Engine::step() {
  const double dt = scn_.run.dt;
  const double t = static_cast<double>(step_index_) * dt;
  x_.t = t;

  const double v_wind = wind_.value(t);

  const double u_dc2 = bus_voltage(p_.bus, x_.bus);
  const double u_dc2_pu = u_dc2 / p_.bus.rated_voltage_dc;
  const double u_ac = rectifier_ac_voltage(u_dc2);
  const double u_ac_pu = u_ac / p_.electrical.rated_voltage;
  const double omega = x_.drivetrain.omega;
  const double omega_pu = omega / p_.turbine.rated_speed;
  const double p_mppt =
      std::min(mppt_power(p_.turbine, omega), p_.electrical.rated_power);
  const double p_ael_meas = stack_power_at(p_, x_.ipbc.duty, u_dc2);

  {
    const double a = 1.0 - std::exp(-dt / p_.control.droop_filter_tau);
    x_.u_ac_filt += a * (u_ac - x_.u_ac_filt);
  }

  SupervisorInputs sin;
  sin.t = t;
  sin.p_mppt = p_mppt;
  sin.p_w = x_.msc.p;
  sin.p_ael = p_ael_meas;
  sin.u_ac_pu = u_ac_pu;
  const SupervisorCommands cmd = sup_.step(sin, dt);
  x_.mode = cmd.mode;

  x_.beta = pitch_step(x_.pitch_pi, p_.control, omega_pu, x_.beta, dt);

  x_.msc.p_ref = msc_power_reference(cmd.msc_ref, p_, droop_, p_mppt, x_.u_ac_filt);
  const double rate_limit =
      scn_.toggles.ramp_limits ? effective_rate_limit(p_) : 0.0;
  msc_loop_step(x_.msc, p_.control, rate_limit, dt);

  const double omega_r_el = omega_pu * 2.0 * M_PI * p_.electrical.rated_frequency;
  const double f_hz = frequency_step(x_.freq, omega_r_el, dt);

  IpbcInputs iin;
  iin.branch = cmd.ipbc_branch;
  iin.u_dc2 = u_dc2;
  iin.p_ael = p_ael_meas;
  iin.p_ael_ref = cmd.p_ael_ref;
  iin.load_rate = rate_limit;
  iin.p_ael_prev = step_index_ == 0
                       ? p_ael_meas
                       : last_rec_.p_ael_pu * p_.electrical.rated_power;
  const double duty = ipbc_step(x_.ipbc, p_, iin, dt);
  const double p_ael = stack_power_at(p_, duty, u_dc2);

  // back-to-back link housekeeping, slip power balanced by the line side
  const double p_link = (1.0 - omega_pu) * x_.msc.p;
  const double p_lsc =
      lsc_step(x_.lsc_pi, p_, x_.u_dc1, dt) * p_.electrical.rated_power;
  {
    const double c1 = p_.bus.dclink_capacitance;
    const double u_ref = p_.bus.dclink_voltage;
    double e1 = 0.5 * c1 * x_.u_dc1 * x_.u_dc1;
    e1 += (p_link - p_lsc) * dt;
    e1 = std::max(e1, 0.5 * c1 * 0.04 * u_ref * u_ref);
    x_.u_dc1 = std::sqrt(2.0 * e1 / c1);
  }

  TraceRecord rec;
  rec.t = t;
  rec.v_wind = v_wind;
  rec.omega_pu = omega_pu;
  rec.beta_deg = x_.beta;
  rec.p_w_pu = x_.msc.p / p_.electrical.rated_power;
  rec.p_ael_pu = p_ael / p_.electrical.rated_power;
  rec.u_ac_pu = u_ac_pu;
  rec.f_hz = f_hz;
  rec.u_dc2_pu = u_dc2_pu;
  rec.duty = duty;
  rec.mode = x_.mode;

  for (const auto& ev : cmd.events) pending_events_.push_back(ev);
  if (step_index_ % output_stride_ == 0) {
    rec.events = pending_events_;
    pending_events_.clear();
    trace_.push_back(rec);
  }
  last_rec_ = rec;

  // the row above freezes the powers applied on [t, t+dt); advance the stores
  dc_bus_step(x_.bus, p_.electrical.conversion_efficiency * x_.msc.p, p_ael, dt);

  {
    const double w0 = x_.drivetrain.omega;
    const double p_e = x_.msc.p;
    auto f = [&](double w) {
      return rotor_accel(p_.turbine, v_wind, w, x_.beta, p_e);
    };
    const double k1 = f(w0);
    const double k2 = f(w0 + 0.5 * dt * k1);
    const double k3 = f(w0 + 0.5 * dt * k2);
    const double k4 = f(w0 + dt * k3);
    double w = w0 + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double w_max = p_.turbine.speed_upper_limit * p_.turbine.rated_speed;
    x_.drivetrain.clamped = w > w_max;
    w = std::clamp(w, 0.0, w_max);
    x_.drivetrain.omega = w;
  }

  ++step_index_;
  return last_rec_;
}

Trace Engine::run() {
  const long n = std::lround(scn_.run.duration / scn_.run.dt);
  for (long i = 0; i < n; ++i) step();
  return trace_;
}

Trace run_scenario(const Scenario& s) {
  Engine e(s);
  return e.run();
}

Equilibrium find_equilibrium(Mode mode, double v_wind, const Params& p,
                             std::optional<double> duty) {
  Equilibrium eq;
  eq.mode = mode;
  const double eta = p.electrical.conversion_efficiency;
  const double u_rdc = p.bus.rated_voltage_dc;

  double omega = p.turbine.lambda_opt * v_wind / p.turbine.blade_radius;
  omega = std::min(omega, p.turbine.speed_upper_limit * p.turbine.rated_speed);
  const double p_track =
      std::min(mppt_power(p.turbine, omega), p.electrical.rated_power);

  if (mode == Mode::Tripped) {
    eq.cls = EquilibriumClass::None;
    return eq;
  }

  if (mode == Mode::N) {
    const double p_stack = eta * p_track;
    eq.p_w = p_track;
    eq.p_ael = p_stack;
    const double tol = 1e-9 * p.ael.rated_power;
    if (p_stack > p.ael.rated_power + tol || p_stack < p.ael.min_power - tol) {
      eq.cls = EquilibriumClass::None;
    } else if (p_stack > p.ael.rated_power - tol || p_stack < p.ael.min_power + tol) {
      eq.cls = EquilibriumClass::Boundary;
    } else {
      eq.cls = EquilibriumClass::Stable;
    }
    const double u_ael = stack_terminal_voltage(p.ael, p_stack);
    if (duty) {
      eq.duty = *duty;
      if (*duty > 1e-9) {
        eq.u_ac_pu = u_ael / (*duty * u_rdc);
      } else {
        eq.u_ac_pu = 0.0;
        if (p_stack > 0.0) eq.cls = EquilibriumClass::None;
      }
    } else {
      eq.u_ac_pu = 1.0;
      eq.duty = std::clamp(u_ael / u_rdc, 0.0, 1.0);
    }
    return eq;
  }

  // saturated stack against the droop line
  const DroopParams d = make_droop(p);
  const double target = p.ael.rated_power;
  auto balance = [&](double u_pu) {
    return eta * droop_power_reference(d, u_pu * p.electrical.rated_voltage) - target;
  };
  double lo = 0.5;
  double hi = p.control.u_ac_max + 0.5;
  if (balance(lo) < 0.0 || balance(hi) > 0.0) {
    eq.cls = EquilibriumClass::None;
    return eq;
  }
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (balance(mid) >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double u_star = 0.5 * (lo + hi);
  eq.u_ac_pu = u_star;
  eq.p_ael = target;
  eq.p_w = droop_power_reference(d, u_star * p.electrical.rated_voltage);
  const double u_ael = stack_terminal_voltage(p.ael, target);
  eq.duty = std::clamp(u_ael / (u_star * u_rdc), 0.0, 1.0);
  const double tol = 1e-6 * p.electrical.rated_power;
  if (p_track + tol < eq.p_w) {
    eq.cls = EquilibriumClass::None;
  } else if (p_track - tol <= eq.p_w) {
    eq.cls = EquilibriumClass::Boundary;
  } else {
    eq.cls = EquilibriumClass::Stable;
  }
  return eq;
}

namespace {

bool has_event_prefix(const TraceRecord& r, const std::string& prefix) {
  for (const auto& ev : r.events)
    if (ev.rfind(prefix, 0) == 0) return true;
  return false;
}

}  // namespace

AuditReport verify_trace(const Trace& trace, const Scenario& s) {
  AuditReport rep;
  Params p = s.params;
  finalize_params(p, s.run.capacity_ratio);
  const double dt = s.run.dt;
  const double pbase = p.electrical.rated_power;
  const double eta = p.electrical.conversion_efficiency;

  auto add = [&](CheckResult c) { rep.checks.push_back(std::move(c)); };

  if (trace.empty()) {
    add({"non_empty", false, false, "trace has no records", -1.0});
    return rep;
  }
  add({"non_empty", true, false, "", -1.0});

  const bool per_step =
      trace.size() >= 2 && std::fabs((trace[1].t - trace[0].t) - dt) < 1e-9;

  auto exempt = [&](const TraceRecord& r) {
    return r.mode == Mode::Tripped || r.duty <= 1e-12;
  };

  {
    CheckResult c{"power_balance", true, false, "", -1.0};
    if (!per_step) {
      c.skipped = true;
      c.detail = "records are thinned; per-step identity not recoverable";
    } else {
      const double cap = p.bus.capacitance;
      const double urdc = p.bus.rated_voltage_dc;
      for (size_t k = 0; k + 1 < trace.size(); ++k) {
        const double hdt = trace[k + 1].t - trace[k].t;
        const double u0 = trace[k].u_dc2_pu * urdc;
        const double u1 = trace[k + 1].u_dc2_pu * urdc;
        const double lhs = (0.5 * cap * u1 * u1 - 0.5 * cap * u0 * u0) / hdt;
        const double rhs = eta * trace[k].p_w_pu * pbase - trace[k].p_ael_pu * pbase;
        if (std::fabs(lhs - rhs) / pbase > 1e-6) {
          c.pass = false;
          c.t_first_fail = trace[k].t;
          c.detail = "stored energy change does not match the recorded powers";
          break;
        }
      }
    }
    add(c);
  }

  {
    CheckResult c{"ramp_compliance", true, false, "", -1.0};
    if (!s.toggles.ramp_limits) {
      c.skipped = true;
      c.detail = "ramp limits disabled for this run";
    } else {
      const double bound = effective_rate_limit(p) / pbase + 1e-9;
      for (size_t k = 0; k + 1 < trace.size(); ++k) {
        const auto& a = trace[k];
        const auto& b = trace[k + 1];
        if (a.mode == Mode::Tripped || b.mode == Mode::Tripped) continue;
        if (a.p_ael_pu <= 1e-12 || b.p_ael_pu <= 1e-12) continue;
        const double hdt = b.t - a.t;
        const double r_ael = std::fabs(b.p_ael_pu - a.p_ael_pu) / hdt;
        const double r_w = std::fabs(b.p_w_pu - a.p_w_pu) / hdt;
        if (r_ael > bound || r_w > bound) {
          c.pass = false;
          c.t_first_fail = a.t;
          c.detail = "loading rate exceeds the configured bound";
          break;
        }
      }
    }
    add(c);
  }

  {
    CheckResult c{"frequency_band", true, false, "", -1.0};
    const double f0 = p.electrical.rated_frequency;
    for (size_t k = 0; k < trace.size(); ++k) {
      double bound = 0.5;
      if (per_step && k > 0) {
        bound = std::min(
            0.5, std::fabs(trace[k].omega_pu - trace[k - 1].omega_pu) * f0 + 1e-9);
      }
      if (std::fabs(trace[k].f_hz - f0) > bound) {
        c.pass = false;
        c.t_first_fail = trace[k].t;
        c.detail = "synthesized frequency outside the slip-decoupling band";
        break;
      }
    }
    add(c);
  }

  {
    CheckResult c{"voltage_band", true, false, "", -1.0};
    double excursion_since = -1.0;
    Mode prev_mode = trace.front().mode;
    for (const auto& r : trace) {
      if (r.mode != prev_mode) {
        excursion_since = -1.0;
        prev_mode = r.mode;
      }
      if (exempt(r)) {
        excursion_since = -1.0;
        continue;
      }
      if (r.mode == Mode::N) {
        if (std::fabs(r.u_ac_pu - 1.0) > 0.10) {
          c.pass = false;
          c.t_first_fail = r.t;
          c.detail = "regulated voltage left the hard band";
          break;
        }
        if (std::fabs(r.u_ac_pu - 1.0) > 0.02) {
          if (excursion_since < 0.0) excursion_since = r.t;
          if (r.t - excursion_since > 1.0 + 1e-9) {
            c.pass = false;
            c.t_first_fail = r.t;
            c.detail = "voltage excursion persisted beyond one second";
            break;
          }
        } else {
          excursion_since = -1.0;
        }
      } else if (r.mode == Mode::E) {
        if (r.u_ac_pu < 0.90 || r.u_ac_pu > p.control.u_ac_max + 0.01) {
          c.pass = false;
          c.t_first_fail = r.t;
          c.detail = "droop-mode voltage left its band";
          break;
        }
      }
    }
    add(c);
  }

  {
    CheckResult c{"mode_soundness", true, false, "", -1.0};
    if (s.toggles.switching_block) {
      c.skipped = true;
      c.detail = "mode switching blocked by scenario toggle";
    } else {
      const double slack = p.supervisor.mode_dwell + 0.3;
      double bad_since = -1.0;
      for (const auto& r : trace) {
        if (r.mode == Mode::Tripped) {
          bad_since = -1.0;
          continue;
        }
        const double omega = r.omega_pu * p.turbine.rated_speed;
        const double avail =
            eta * std::min(mppt_power(p.turbine, omega), p.electrical.rated_power);
        bool bad = false;
        if (r.mode == Mode::N) {
          bad = avail > p.ael.rated_power;
        } else {
          bad = avail < eta * p.ael.rated_power;
        }
        if (!bad) {
          bad_since = -1.0;
          continue;
        }
        if (bad_since < 0.0) bad_since = r.t;
        if (r.t - bad_since > slack) {
          c.pass = false;
          c.t_first_fail = r.t;
          c.detail = "mode stayed unfit for the available power past the dwell";
          break;
        }
      }
    }
    add(c);
  }

  {
    CheckResult c{"switch_spacing", true, false, "", -1.0};
    if (!per_step) {
      c.skipped = true;
      c.detail = "records are thinned; event timing coarsened";
    } else {
      double last_switch = -1e18;
      for (const auto& r : trace) {
        if (!has_event_prefix(r, "mode:")) continue;
        if (r.t - last_switch < p.supervisor.mode_dwell - 1e-9) {
          c.pass = false;
          c.t_first_fail = r.t;
          c.detail = "mode switches closer than the dwell";
          break;
        }
        last_switch = r.t;
      }
    }
    add(c);
  }

  {
    CheckResult c{"trip_absorbing", true, false, "", -1.0};
    bool tripped_seen = false;
    bool event_seen = false;
    for (const auto& r : trace) {
      if (has_event_prefix(r, "trip:")) event_seen = true;
      if (!tripped_seen && r.mode == Mode::Tripped) {
        tripped_seen = true;
        if (!event_seen) {
          c.pass = false;
          c.t_first_fail = r.t;
          c.detail = "tripped state appeared without a trip event";
          break;
        }
      }
      if (tripped_seen) {
        if (r.mode != Mode::Tripped || r.duty > 1e-12 || r.p_ael_pu > 1e-12) {
          c.pass = false;
          c.t_first_fail = r.t;
          c.detail = "trip state is not absorbing";
          break;
        }
      }
    }
    add(c);
  }

  return rep;
}

}  // namespace windel
