#include "windel/control.hpp"

#include <algorithm>
#include <cmath>

#include "windel/plant.hpp"

namespace windel {

double msc_loop_step(MscLoop& m, const ControlParams& c, double rate_limit, double dt) {
  const double alpha = 1.0 - std::exp(-dt / c.msc_tau);
  double p_next = m.p + alpha * (m.p_ref - m.p);
  m.limited = false;
  if (rate_limit > 0.0) {
    const double max_step = rate_limit * dt;
    const double delta = p_next - m.p;
    if (delta > max_step) {
      p_next = m.p + max_step;
      m.limited = true;
    } else if (delta < -max_step) {
      p_next = m.p - max_step;
      m.limited = true;
    }
  }
  m.p = p_next;
  m.q += alpha * (m.q_ref - m.q);
  return m.p;
}

DroopParams make_droop(const Params& p) {
  DroopParams d;
  d.p_rated = p.ael.rated_power;
  d.u_rated = p.electrical.rated_voltage;
  d.u_max = p.control.u_ac_max * p.electrical.rated_voltage;
  const double sqrt2 = std::sqrt(2.0);
  d.slope = (d.p_rated - p.control.droop_x * d.p_rated) /
            (sqrt2 * d.u_rated - sqrt2 * d.u_max);
  return d;
}

double droop_power_reference(const DroopParams& d, double u_ac_rms) {
  const double sqrt2 = std::sqrt(2.0);
  return d.p_rated + d.slope * (sqrt2 * u_ac_rms - sqrt2 * d.u_rated);
}

double msc_power_reference(MscRefSelector sel, const Params& p, const DroopParams& d,
                           double p_mppt, double u_ac_filtered) {
  switch (sel) {
    case MscRefSelector::Mppt:
      return std::min(p_mppt, p.electrical.rated_power);
    case MscRefSelector::Droop: {
      const double ref = droop_power_reference(d, u_ac_filtered);
      return std::clamp(ref, 0.0, p.electrical.rated_power);
    }
    case MscRefSelector::Zero:
      return 0.0;
  }
  return 0.0;
}

namespace {

double wrap_angle(double theta) {
  const double two_pi = 2.0 * M_PI;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  return theta;
}

}  // namespace

double frequency_step(FrequencyChannel& f, double omega_r, double dt) {
  if (!f.primed) {
    f.omega_r_prev = omega_r;
    f.primed = true;
  }
  f.omega_sl = f.omega_s_ref - f.omega_r_prev;
  f.theta_sl = wrap_angle(f.theta_sl + f.omega_sl * dt);
  f.omega_s = omega_r + f.omega_sl;
  f.theta_s = wrap_angle(f.theta_s + f.omega_s * dt);
  f.omega_r_prev = omega_r;
  return f.omega_s / (2.0 * M_PI);
}

double pitch_step(PiController& pi, const ControlParams& c, double omega_pu,
                  double beta_prev, double dt) {
  const double error = omega_pu - c.pitch_setpoint;
  // the PI issues a blade command; the actuator slews toward it
  const double cmd = pi.step(error, dt);
  const double max_delta = c.pitch_rate * dt;
  const double beta = std::clamp(cmd, beta_prev - max_delta, beta_prev + max_delta);
  return std::clamp(beta, 0.0, c.pitch_max);
}

double lsc_step(PiController& pi, const Params& p, double u_dc1, double dt) {
  const double error = (u_dc1 - p.bus.dclink_voltage) / p.bus.dclink_voltage;
  return pi.step(error, dt);
}

IpbcController make_ipbc(const Params& p) {
  IpbcController c;
  c.volt = PiController{p.control.volt_kp, p.control.volt_ki, 0.0, 1.0, true};
  c.power = PiController{p.control.power_kp, p.control.power_ki, 0.0, 1.2, true};
  c.current = PiController{p.control.current_kp, p.control.current_ki, 0.0, 1.0, true};
  c.branch = IpbcBranch::Off;
  return c;
}

double ipbc_step(IpbcController& c, const Params& p, const IpbcInputs& in, double dt) {
  const double u_rated_dc = p.bus.rated_voltage_dc;
  const double u_ael = c.duty * in.u_dc2;
  const double i_base =
      (p.ael.rated_voltage - p.ael.reversible_voltage) / p.ael.resistance;
  const double i_meas_pu =
      std::max(u_ael - p.ael.reversible_voltage, 0.0) / p.ael.resistance / i_base;

  if (in.branch == IpbcBranch::Off) {
    c.branch = IpbcBranch::Off;
    c.duty = 0.0;
    return c.duty;
  }

  // Stack overload guard: the voltage loop may never push the stack past
  // its rating, whatever the bus does.
  double d_cap = 1.0;
  if (in.u_dc2 > 1e-6) {
    d_cap = std::min(1.0, std::sqrt(p.ael.rated_power * p.ael.resistance) / in.u_dc2);
  }

  if (in.branch != c.branch) {
    // bumpless transfer: incoming branch starts at the outgoing duty
    if (in.branch == IpbcBranch::VoltageLoop) {
      const double e = (in.u_dc2 - u_rated_dc) / u_rated_dc;
      c.volt.preload(c.duty, e);
    } else {
      const double e_p = (in.p_ael_ref - in.p_ael) / p.ael.rated_power;
      c.power.preload(i_meas_pu, e_p);
      c.i_ref = i_meas_pu;
      const double e_i = c.i_ref - i_meas_pu;
      c.current.preload(c.duty, e_i);
    }
    c.branch = in.branch;
  }

  if (c.branch == IpbcBranch::VoltageLoop) {
    const double e = (in.u_dc2 - u_rated_dc) / u_rated_dc;
    c.volt.out_min = 0.0;
    c.volt.out_max = d_cap;
    c.duty = c.volt.step(e, dt);
  } else {
    const double e_p = (in.p_ael_ref - in.p_ael) / p.ael.rated_power;
    c.i_ref = c.power.step(e_p, dt);
    const double e_i = c.i_ref - i_meas_pu;
    c.duty = c.current.step(e_i, dt);
  }

  if (in.load_rate > 0.0 && in.u_dc2 > 1e-6) {
    // loading governor: the stack draw may only walk away from the last
    // applied power at the configured rate
    const double dp = in.load_rate * dt;
    const double hi = in.p_ael_prev + dp;
    const double lo = std::max(in.p_ael_prev - dp, 0.0);
    const double p_new = ael_power(p.ael, c.duty * in.u_dc2);
    double target = p_new;
    if (p_new > hi)
      target = hi;
    else if (p_new < lo)
      target = lo;
    if (target != p_new) {
      c.duty = std::clamp(ael_voltage_for_power(p.ael, target) / in.u_dc2,
                          0.0, 1.0);
      if (c.branch == IpbcBranch::VoltageLoop) {
        const double e = (in.u_dc2 - u_rated_dc) / u_rated_dc;
        c.volt.preload(c.duty, e);
      } else {
        const double e_i = c.i_ref - i_meas_pu;
        c.current.preload(c.duty, e_i);
      }
    }
  }
  return c.duty;
}

}  // namespace windel
