#pragma once

#include "windel/params.hpp"

namespace windel {

// Three-phase rectifier averaged relations for the square-wave conduction
// pattern: each constant is exact, the rounded values 1.35 / 0.816 / 0.78
// are the conventional shorthand.
inline constexpr double kRectCurrentRatio = 1.3504744742356593;   // 3*sqrt(2)/pi, I_dc/I_ac
inline constexpr double kAcFromDcVoltage = 0.81649658092772603;   // sqrt(2/3), U_ac(rms)/U_dc
inline constexpr double kFundamentalFromDc = 0.77969680123367603; // sqrt(6)/pi, U_ac1(rms)/U_dc
// Conventional composed gain from AC bus RMS to electrolyzer terminals at
// unity duty; kept at the rounded value used by the droop and equivalent
// resistance relations.
inline constexpr double kBuckChainGain = 1.225;

// Power coefficient surface, exponential approximation.  Clamped at zero
// from below; feathered blades produce no torque rather than braking.
double cp_value(const TurbineParams& t, double lambda, double beta_deg);

// Maximum-power-tracking curve: cubic in rotor speed through the optimal
// tip-speed ratio.  omega in rad/s mechanical, result in W.
double mppt_power(const TurbineParams& t, double omega);

// Aerodynamic torque at wind speed v (m/s), rotor speed omega (rad/s),
// pitch beta (deg).  Torque is capped below cut-in speed to keep the
// stall region bounded.
double aero_torque(const TurbineParams& t, double v, double omega, double beta_deg);

struct DrivetrainState {
  double omega = 0.0;        // rad/s mechanical
  bool clamped = false;      // hit the upper speed limit this step
};

// Single-mass explicit step with the upper speed clamp.  With constant
// torques the advance is exact.
void drivetrain_step(DrivetrainState& s, const TurbineParams& t,
                     double torque_mech, double torque_elec, double dt);

// Averaged rectifier maps.
double rectifier_dc_current(double i_ac_rms);
double rectifier_ac_voltage(double u_dc);          // RMS of the conduction waveform
double rectifier_fundamental_voltage(double u_dc); // RMS of its fundamental

// Buck converter averaged output, duty in [0,1].
double buck_output(double duty, double u_in);

// Electrolyzer terminal voltage through the conventional chain gain.
double ael_voltage_from_duty(double duty, double u_ac_rms);

// Load seen from the AC bus at a given duty; duty 0 disconnects (infinite
// resistance sentinel).
double equivalent_resistance(double r_ael, double duty);

// Stack power at terminal voltage u (V) for the linear U-I model.  Zero
// below the reversible voltage.
double ael_power(const ElectrolyzerParams& a, double u_terminal);

// Inverse of ael_power: the terminal voltage drawing the given power.
double ael_voltage_for_power(const ElectrolyzerParams& a, double power);

struct DcBusState {
  double energy = 0.0;       // J
  bool undervoltage = false; // clamped at zero energy this step
};

double bus_voltage(const BusParams& b, const DcBusState& s); // V, rectifier output

// Exact energy bookkeeping over one step with the given constant powers.
void dc_bus_step(DcBusState& s, double p_in, double p_out, double dt);

}  // namespace windel
