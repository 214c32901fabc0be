#pragma once

#include <optional>

#include "windel/params.hpp"
#include "windel/pi.hpp"

namespace windel {

// Machine-side converter power tracking, reduced to its closed-loop
// behaviour: exact first-order response toward the reference with an
// optional slew limit on the delivered power.
struct MscLoop {
  double p_ref = 0.0;   // W
  double q_ref = 0.0;   // var, carried for completeness
  double p = 0.0;       // W delivered
  double q = 0.0;
  bool limited = false; // slew limit active last step
};

// rate_limit in W/s; <=0 disables the limit.
double msc_loop_step(MscLoop& m, const ControlParams& c, double rate_limit, double dt);

// Droop line for grid-forming power sharing: anchored at AEL rated power
// and rated voltage, hits x * rated at the voltage ceiling.  Slope is
// negative.  Voltages in volts (RMS line).
struct DroopParams {
  double p_rated = 0.0;   // W
  double u_rated = 0.0;   // V
  double u_max = 0.0;     // V
  double slope = 0.0;     // W per V of peak voltage, negative
};

DroopParams make_droop(const Params& p);
double droop_power_reference(const DroopParams& d, double u_ac_rms);

enum class MscRefSelector { Mppt, Droop, Zero };

// Chooses the tracking target: capped maximum-power curve when following
// the wind, the droop line when the electrolyzer saturates, zero when
// shut down.
double msc_power_reference(MscRefSelector sel, const Params& p, const DroopParams& d,
                           double p_mppt, double u_ac_filtered);

// Virtual-slip synthesis: the stator-side frequency is assembled from the
// current rotor speed and a slip reference built on the previous sample,
// so the synthesized frequency deviates from nominal by at most one
// sample of rotor acceleration regardless of power imbalance.
struct FrequencyChannel {
  double omega_s_ref = 0.0;    // rad/s electrical
  double omega_r_prev = 0.0;
  double omega_sl = 0.0;
  double theta_sl = 0.0;       // rad, wrapped to [0, 2pi)
  double theta_s = 0.0;        // rad, wrapped
  double omega_s = 0.0;        // rad/s synthesized
  bool primed = false;
};

// omega_r electrical rad/s; returns synthesized stator frequency in Hz.
double frequency_step(FrequencyChannel& f, double omega_r, double dt);

// Pitch loop: holds rotor speed at the setpoint fraction of the clamp,
// blades stay flat below it.  Returns beta in degrees.
double pitch_step(PiController& pi, const ControlParams& c, double omega_pu,
                  double beta_prev, double dt);

// Line-side converter: PI on the back-to-back link voltage commands the
// power transferred to the AC bus.  Voltages in volts, returns W.
double lsc_step(PiController& pi, const Params& p, double u_dc1, double dt);

// Interface power-balance controller (buck stage).  One PI pair per
// branch; transfers between branches preload the incoming integrators so
// the duty step at a switch stays within one percent.
enum class IpbcBranch { VoltageLoop, PowerCurrentLoop, Off };

struct IpbcController {
  PiController volt;     // pu voltage error -> duty
  PiController power;    // pu power error -> pu current reference
  PiController current;  // pu current error -> duty
  IpbcBranch branch = IpbcBranch::Off;
  double i_ref = 0.0;    // pu
  double duty = 0.0;
};

IpbcController make_ipbc(const Params& p);

struct IpbcInputs {
  IpbcBranch branch = IpbcBranch::VoltageLoop;
  double u_dc2 = 0.0;       // V measured
  double p_ael = 0.0;       // W measured
  double p_ael_ref = 0.0;   // W
  double load_rate = 0.0;   // W/s cap on stack loading changes, 0 disables
  double p_ael_prev = 0.0;  // W drain applied over the previous step
};

double ipbc_step(IpbcController& c, const Params& p, const IpbcInputs& in, double dt);

}  // namespace windel
