#include "windel/params.hpp"

#include <cmath>
#include <stdexcept>

#include "windel/plant.hpp"

namespace windel {

namespace {

// Peak of the zero-pitch Cp curve by golden-section search; the curve is
// unimodal over the bracket for any sane coefficient set.
void locate_cp_peak(TurbineParams& t) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 2.0, b = 13.0;
  for (int i = 0; i < 200; ++i) {
    const double d = gr * (b - a);
    const double x1 = b - d;
    const double x2 = a + d;
    if (cp_value(t, x1, 0.0) > cp_value(t, x2, 0.0))
      b = x2;
    else
      a = x1;
  }
  t.lambda_opt = 0.5 * (a + b);
  t.cp_max = cp_value(t, t.lambda_opt, 0.0);
}

}  // namespace

void finalize_params(Params& p, double capacity_ratio) {
  if (!(capacity_ratio > 0.0))
    throw std::invalid_argument("capacity ratio must be positive");

  TurbineParams& t = p.turbine;
  if (!(t.blade_radius > 0.0) || !(t.air_density > 0.0) || !(t.rated_mech_power > 0.0))
    throw std::invalid_argument("turbine parameters must be positive");
  locate_cp_peak(t);
  if (!(t.cp_max > 0.0))
    throw std::invalid_argument("cp surface has no positive peak");

  const double k_aero =
      0.5 * t.cp_max * t.air_density * M_PI * t.blade_radius * t.blade_radius;
  t.rated_wind_speed = std::cbrt(t.rated_mech_power / k_aero);
  t.rated_speed = t.lambda_opt * t.rated_wind_speed / t.blade_radius;
  t.inertia = 2.0 * t.inertia_constant * t.rated_mech_power / (t.rated_speed * t.rated_speed);

  ElectrolyzerParams& a = p.ael;
  a.rated_power = capacity_ratio * p.electrical.rated_power;
  if (!(a.rated_voltage > a.reversible_voltage))
    throw std::invalid_argument("electrolyzer rated voltage must exceed reversible voltage");
  a.resistance =
      a.rated_voltage * (a.rated_voltage - a.reversible_voltage) / a.rated_power;
  a.min_power = a.min_load_fraction * a.rated_power;

  p.bus.rated_voltage_dc = p.electrical.rated_voltage / kAcFromDcVoltage;
}

}  // namespace windel
