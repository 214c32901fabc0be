#include "windel/plant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace windel {

double cp_value(const TurbineParams& t, double lambda, double beta_deg) {
  if (lambda <= 1e-9) return 0.0;
  const auto& c = t.cp_coeff;
  const double li_inv =
      1.0 / (lambda + 0.08 * beta_deg) - 0.035 / (1.0 + beta_deg * beta_deg * beta_deg);
  const double v =
      c[0] * (c[1] * li_inv - c[2] * beta_deg - c[3]) * std::exp(-c[4] * li_inv) +
      c[5] * lambda;
  return std::max(v, 0.0);
}

double mppt_power(const TurbineParams& t, double omega) {
  if (omega <= 0.0) return 0.0;
  const double tip = omega * t.blade_radius / t.lambda_opt;
  return 0.5 * t.cp_max * t.air_density * M_PI * t.blade_radius * t.blade_radius *
         tip * tip * tip;
}

double aero_torque(const TurbineParams& t, double v, double omega, double beta_deg) {
  if (v <= 0.0) return 0.0;
  const double lambda = omega * t.blade_radius / v;
  const double cp = cp_value(t, lambda, beta_deg);
  const double power =
      0.5 * cp * t.air_density * M_PI * t.blade_radius * t.blade_radius * v * v * v;
  const double omega_floor = t.cut_in_speed * t.rated_speed;
  return power / std::max(omega, omega_floor);
}

void drivetrain_step(DrivetrainState& s, const TurbineParams& t,
                     double torque_mech, double torque_elec, double dt) {
  s.omega += dt * (torque_mech - torque_elec) / t.inertia;
  const double ceiling = t.speed_upper_limit * t.rated_speed;
  s.clamped = false;
  if (s.omega > ceiling) {
    s.omega = ceiling;
    s.clamped = true;
  }
  if (s.omega < 0.0) s.omega = 0.0;
}

double rectifier_dc_current(double i_ac_rms) { return kRectCurrentRatio * i_ac_rms; }

double rectifier_ac_voltage(double u_dc) { return kAcFromDcVoltage * u_dc; }

double rectifier_fundamental_voltage(double u_dc) { return kFundamentalFromDc * u_dc; }

double buck_output(double duty, double u_in) {
  if (duty < 0.0 || duty > 1.0) throw std::invalid_argument("duty outside [0,1]");
  return duty * u_in;
}

double ael_voltage_from_duty(double duty, double u_ac_rms) {
  if (duty < 0.0 || duty > 1.0) throw std::invalid_argument("duty outside [0,1]");
  return kBuckChainGain * duty * u_ac_rms;
}

double equivalent_resistance(double r_ael, double duty) {
  if (duty < 0.0 || duty > 1.0) throw std::invalid_argument("duty outside [0,1]");
  if (duty == 0.0) return std::numeric_limits<double>::infinity();
  const double g = kBuckChainGain * duty;
  return r_ael / (g * g);
}

double ael_power(const ElectrolyzerParams& a, double u_terminal) {
  if (u_terminal <= a.reversible_voltage) return 0.0;
  return u_terminal * (u_terminal - a.reversible_voltage) / a.resistance;
}

double ael_voltage_for_power(const ElectrolyzerParams& a, double power) {
  if (power <= 0.0) return a.reversible_voltage;
  const double e = a.reversible_voltage;
  return 0.5 * (e + std::sqrt(e * e + 4.0 * a.resistance * power));
}

double bus_voltage(const BusParams& b, const DcBusState& s) {
  return std::sqrt(std::max(2.0 * s.energy / b.capacitance, 0.0));
}

void dc_bus_step(DcBusState& s, double p_in, double p_out, double dt) {
  s.energy += (p_in - p_out) * dt;
  s.undervoltage = false;
  if (s.energy < 0.0) {
    s.energy = 0.0;
    s.undervoltage = true;
  }
}

}  // namespace windel
