#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "windel/params.hpp"
#include "windel/plant.hpp"

using namespace windel;

namespace {

Params defaults_with_ratio(double ratio) {
  Params p;
  finalize_params(p, ratio);
  return p;
}

}  // namespace

TEST_CASE("power coefficient peak location and value") {
  const Params p = defaults_with_ratio(1.0);
  // the peak value is sharp; its abscissa is only determined to sqrt(eps)
  CHECK(p.turbine.lambda_opt == doctest::Approx(8.10011727652829).epsilon(1e-7));
  CHECK(p.turbine.cp_max == doctest::Approx(0.480011902827875).epsilon(1e-10));
}

TEST_CASE("rated operating point closes the power identity") {
  const Params p = defaults_with_ratio(1.0);
  const auto& t = p.turbine;
  CHECK(t.rated_wind_speed == doctest::Approx(11.6512590514694).epsilon(1e-10));
  CHECK(t.rated_speed == doctest::Approx(2.55071796584091).epsilon(1e-7));

  const double area = M_PI * t.blade_radius * t.blade_radius;
  const double p_aero = 0.5 * t.air_density * area * t.cp_max *
                        t.rated_wind_speed * t.rated_wind_speed * t.rated_wind_speed;
  CHECK(p_aero == doctest::Approx(t.rated_mech_power).epsilon(1e-12));
  CHECK(t.lambda_opt * t.rated_wind_speed / t.blade_radius ==
        doctest::Approx(t.rated_speed).epsilon(1e-12));
}

TEST_CASE("inertia follows from the per-unit constant") {
  const Params p = defaults_with_ratio(1.0);
  const auto& t = p.turbine;
  const double expected =
      2.0 * t.inertia_constant * t.rated_mech_power / (t.rated_speed * t.rated_speed);
  CHECK(t.inertia == doctest::Approx(expected).epsilon(1e-12));
  CHECK(t.inertia > 0.0);
}

TEST_CASE("electrolyzer sizing follows the capacity ratio") {
  const Params p = defaults_with_ratio(0.6);
  CHECK(p.ael.rated_power == doctest::Approx(1.2e6).epsilon(1e-12));
  CHECK(p.ael.resistance == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(p.ael.min_power == doctest::Approx(0.12e6).epsilon(1e-12));

  const Params full = defaults_with_ratio(1.0);
  CHECK(full.ael.rated_power == doctest::Approx(2.0e6).epsilon(1e-12));
  CHECK(full.ael.resistance == doctest::Approx(0.18).epsilon(1e-12));
}

TEST_CASE("rectifier-referred bus voltage base") {
  const Params p = defaults_with_ratio(1.0);
  CHECK(p.bus.rated_voltage_dc ==
        doctest::Approx(690.0 / kAcFromDcVoltage).epsilon(1e-12));
  CHECK(p.bus.rated_voltage_dc == doctest::Approx(845.0739612).epsilon(1e-6));
}

TEST_CASE("finalize rejects non-physical parameters") {
  Params p;
  p.turbine.blade_radius = -1.0;
  CHECK_THROWS_AS(finalize_params(p, 1.0), std::invalid_argument);

  Params q;
  CHECK_THROWS_AS(finalize_params(q, 0.0), std::invalid_argument);

  Params r;
  r.ael.rated_voltage = 0.0;
  CHECK_THROWS_AS(finalize_params(r, 1.0), std::invalid_argument);
}

TEST_CASE("finalize is idempotent") {
  Params p;
  finalize_params(p, 0.6);
  Params q = p;
  finalize_params(q, 0.6);
  CHECK(q.turbine.lambda_opt == p.turbine.lambda_opt);
  CHECK(q.ael.resistance == p.ael.resistance);
  CHECK(q.bus.rated_voltage_dc == p.bus.rated_voltage_dc);
}
