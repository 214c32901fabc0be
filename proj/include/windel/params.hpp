#pragma once

#include <array>
#include <string>
#include <vector>

namespace windel {

inline constexpr char kToolVersion[] = "0.1.0";

// Wind turbine aerodynamics and drivetrain.  cp_max, lambda_opt and the
// rated operating point are derived from the coefficient set at finalize
// time so the peak of the Cp curve and the rated point coincide exactly.
struct TurbineParams {
  double air_density = 1.225;       // kg/m^3
  double blade_radius = 37.0;       // m
  double rated_mech_power = 2.0e6;  // W
  std::array<double, 6> cp_coeff{0.5176, 116.0, 0.4, 5.0, 21.0, 0.0068};
  double inertia_constant = 0.75;   // s, on rated power and rated speed
  double speed_upper_limit = 1.2;   // pu, hard clamp
  double cut_in_speed = 0.05;       // pu, torque capped below this

  // derived
  double cp_max = 0.0;
  double lambda_opt = 0.0;
  double rated_wind_speed = 0.0;    // m/s
  double rated_speed = 0.0;         // rad/s, mechanical
  double inertia = 0.0;             // kg m^2
};

// Stator-side electrical ratings and the lumped conversion loss between
// generator output and the rectifier DC bus.
struct ElectricalParams {
  double rated_power = 2.0e6;            // W, power base for pu traces
  double rated_voltage = 690.0;          // V, line RMS at the AC bus
  double rated_frequency = 50.0;         // Hz
  double conversion_efficiency = 5.0 / 6.0;
};

// Alkaline electrolyzer stack, linear U-I model.  rated_power is set from
// the scenario capacity ratio at finalize time; resistance follows from
// the rated point.
struct ElectrolyzerParams {
  double rated_voltage = 600.0;      // V
  double reversible_voltage = 0.0;   // V
  double min_load_fraction = 0.10;   // of rated power
  double ramp_rate = 0.05;           // fraction of rated power per second

  // derived
  double rated_power = 2.0e6;        // W
  double resistance = 0.0;           // ohm
  double min_power = 0.0;            // W
};

struct BusParams {
  double capacitance = 0.15;         // F, at the rectifier output
  double dclink_capacitance = 0.02;  // F, back-to-back converter link
  double dclink_voltage = 1200.0;    // V

  // derived
  double rated_voltage_dc = 0.0;     // V, rectifier output at rated AC
};

struct ControlParams {
  double msc_tau = 0.02;             // s, closed-loop power tracking
  double wind_ramp_rate = 0.05;      // fraction of turbine rated per second
  double pitch_kp = 300.0;           // deg per pu speed error
  double pitch_ki = 120.0;           // deg per pu speed error second
  double pitch_max = 30.0;           // deg
  double pitch_rate = 10.0;          // deg/s
  double pitch_setpoint = 1.195;     // pu, just below the hard speed clamp
  double volt_kp = 2.0;              // duty per pu voltage error
  double volt_ki = 40.0;
  double power_kp = 0.2;             // pu current per pu power error
  double power_ki = 10.0;
  double current_kp = 0.2;           // duty per pu current error
  double current_ki = 20.0;
  double lsc_kp = 2.0;               // pu power per pu voltage error
  double lsc_ki = 100.0;
  double droop_x = 0.4;              // fraction of AEL rated at U_max
  double u_ac_max = 1.1;             // pu, droop endpoint
  double droop_filter_tau = 0.01;    // s, voltage measurement filter
};

struct SupervisorParams {
  double mode_dwell = 0.1;           // s, condition must hold before a switch
  double trip_level = 1.15;          // pu AC voltage
  double trip_dwell = 0.05;          // s sustained before trip
  double rate_window = 0.1;          // s, backward difference for dP/dt
  double rate_margin = 1.05;         // tolerance factor on the rate bound
};

struct Params {
  TurbineParams turbine;
  ElectricalParams electrical;
  ElectrolyzerParams ael;
  BusParams bus;
  ControlParams control;
  SupervisorParams supervisor;
};

// Fills every derived field.  capacity_ratio sizes the electrolyzer
// against the turbine rating.  Throws std::invalid_argument on
// non-physical inputs; range validation with collected messages lives in
// scenario.cpp.
void finalize_params(Params& p, double capacity_ratio);

}  // namespace windel
