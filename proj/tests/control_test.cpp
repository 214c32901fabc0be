#include <doctest.h>

#include <cmath>
#include <random>

#include "windel/control.hpp"
#include "windel/params.hpp"
#include "windel/pi.hpp"
#include "windel/plant.hpp"

using namespace windel;

namespace {

Params defaults_with_ratio(double ratio) {
  Params p;
  finalize_params(p, ratio);
  return p;
}

}  // namespace

TEST_CASE("pi output respects its limits") {
  PiController pi{2.0, 10.0, -1.0, 1.0, true};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> err(-5.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double out = pi.step(err(rng), 1e-3);
    CHECK(out >= -1.0);
    CHECK(out <= 1.0);
  }
}

TEST_CASE("pi integrator freezes while pushing into saturation") {
  PiController pi{0.0, 10.0, 0.0, 1.0, true};
  for (int i = 0; i < 5000; ++i) pi.step(10.0, 1e-3);
  CHECK(pi.integ <= 1.0 + 1e-12);
  // reversal pulls out of saturation without unwinding a large backlog
  double out = 1.0;
  int steps = 0;
  while (out > 0.5 && steps < 200) {
    out = pi.step(-10.0, 1e-3);
    ++steps;
  }
  CHECK(steps < 10);
}

TEST_CASE("pi preload reproduces the requested output") {
  PiController pi{1.5, 20.0, 0.0, 2.0, true};
  pi.preload(0.7, 0.1);
  CHECK(pi.kp * 0.1 + pi.integ == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("power tracking loop matches the continuous first-order response") {
  const Params p = defaults_with_ratio(1.0);
  MscLoop m;
  m.p_ref = 1.0e6;
  const double dt = p.control.msc_tau / 100.0;
  for (int i = 0; i < 100; ++i) msc_loop_step(m, p.control, 0.0, dt);
  CHECK(m.p == doctest::Approx(1.0e6 * (1.0 - std::exp(-1.0))).epsilon(1e-12));
}

TEST_CASE("power tracking loop slews at exactly the configured rate") {
  const Params p = defaults_with_ratio(1.0);
  MscLoop m;
  m.p_ref = 2.0e6;
  const double rate = 1.0e5;
  const double dt = 1e-3;
  double prev = 0.0;
  for (int i = 0; i < 50; ++i) {
    msc_loop_step(m, p.control, rate, dt);
    CHECK(m.p - prev == doctest::Approx(rate * dt).epsilon(1e-12));
    CHECK(m.limited);
    prev = m.p;
  }
}

TEST_CASE("droop line anchors and slope") {
  Params p;
  p.electrical.rated_voltage = 1.0;
  p.ael.rated_power = 0.6;
  p.control.droop_x = 0.5;
  p.control.u_ac_max = 1.1;
  const DroopParams d = make_droop(p);
  CHECK(d.slope == doctest::Approx(-2.12132034355964).epsilon(1e-10));
  CHECK(droop_power_reference(d, 1.0) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(droop_power_reference(d, 1.05) == doctest::Approx(0.45).epsilon(1e-12));
  CHECK(droop_power_reference(d, 1.1) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("droop endpoint fraction holds for the full-scale parameters") {
  const Params p = defaults_with_ratio(0.6);
  const DroopParams d = make_droop(p);
  const double u_max = p.control.u_ac_max * p.electrical.rated_voltage;
  CHECK(droop_power_reference(d, p.electrical.rated_voltage) ==
        doctest::Approx(p.ael.rated_power).epsilon(1e-12));
  CHECK(droop_power_reference(d, u_max) ==
        doctest::Approx(p.control.droop_x * p.ael.rated_power).epsilon(1e-12));
}

TEST_CASE("reference selection caps track and clamps droop") {
  const Params p = defaults_with_ratio(0.6);
  const DroopParams d = make_droop(p);
  CHECK(msc_power_reference(MscRefSelector::Mppt, p, d, 3.0e6, 690.0) ==
        doctest::Approx(p.electrical.rated_power));
  CHECK(msc_power_reference(MscRefSelector::Mppt, p, d, 0.9e6, 690.0) ==
        doctest::Approx(0.9e6));
  CHECK(msc_power_reference(MscRefSelector::Zero, p, d, 2.0e6, 690.0) == 0.0);
  // far above the droop endpoint the reference floors at zero
  CHECK(msc_power_reference(MscRefSelector::Droop, p, d, 2.0e6, 2.0 * 690.0) == 0.0);
}

TEST_CASE("synthesized frequency deviates by at most one sample of acceleration") {
  FrequencyChannel f;
  f.omega_s_ref = 2.0 * M_PI * 50.0;
  const double dt = 1e-3;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> jump(-0.5, 0.5);
  double omega_r = 0.8 * f.omega_s_ref;
  double prev = omega_r;
  CHECK(frequency_step(f, omega_r, dt) == doctest::Approx(50.0).epsilon(1e-14));
  for (int i = 0; i < 2000; ++i) {
    prev = omega_r;
    omega_r += jump(rng);
    const double hz = frequency_step(f, omega_r, dt);
    const double bound = std::fabs(omega_r - prev) / (2.0 * M_PI) + 1e-12;
    CHECK(std::fabs(hz - 50.0) <= bound);
  }
}

TEST_CASE("synthesized frequency under constant acceleration") {
  FrequencyChannel f;
  f.omega_s_ref = 2.0 * M_PI * 50.0;
  const double dt = 1e-3;
  const double accel = 5.0;  // rad/s^2 electrical
  double omega_r = 0.9 * f.omega_s_ref;
  frequency_step(f, omega_r, dt);
  double hz = 50.0;
  for (int i = 0; i < 500; ++i) {
    omega_r += accel * dt;
    hz = frequency_step(f, omega_r, dt);
  }
  CHECK(hz - 50.0 == doctest::Approx(accel * dt / (2.0 * M_PI)).epsilon(1e-9));
}

TEST_CASE("blades stay flat below the speed setpoint") {
  const Params p = defaults_with_ratio(1.0);
  PiController pi{p.control.pitch_kp, p.control.pitch_ki, 0.0, p.control.pitch_max, true};
  double beta = 0.0;
  for (int i = 0; i < 2000; ++i) beta = pitch_step(pi, p.control, 0.9, beta, 1e-3);
  CHECK(beta == 0.0);
}

TEST_CASE("pitch engages on overspeed and respects its slew rate") {
  const Params p = defaults_with_ratio(1.0);
  PiController pi{p.control.pitch_kp, p.control.pitch_ki, 0.0, p.control.pitch_max, true};
  const double dt = 1e-3;
  double beta = 0.0;
  double prev = 0.0;
  for (int i = 0; i < 4000; ++i) {
    prev = beta;
    beta = pitch_step(pi, p.control, 1.25, prev, dt);
    CHECK(std::fabs(beta - prev) <= p.control.pitch_rate * dt + 1e-12);
    CHECK(beta >= 0.0);
    CHECK(beta <= p.control.pitch_max);
  }
  CHECK(beta > 1.0);
  // the blades come back promptly once the speed recedes
  int steps_to_drop = 0;
  while (beta > 0.5 && steps_to_drop < 20000) {
    beta = pitch_step(pi, p.control, 1.0, beta, dt);
    ++steps_to_drop;
  }
  CHECK(steps_to_drop < 10000);
}

TEST_CASE("line-side regulator sign convention") {
  const Params p = defaults_with_ratio(1.0);
  PiController pi{p.control.lsc_kp, p.control.lsc_ki, -2.0, 2.0, true};
  const double high = lsc_step(pi, p, p.bus.dclink_voltage * 1.05, 1e-3);
  CHECK(high > 0.0);
  PiController pi2{p.control.lsc_kp, p.control.lsc_ki, -2.0, 2.0, true};
  const double low = lsc_step(pi2, p, p.bus.dclink_voltage * 0.95, 1e-3);
  CHECK(low < 0.0);
}

TEST_CASE("interface controller holds the stack at rating under bus overvoltage") {
  const Params p = defaults_with_ratio(0.6);
  IpbcController c = make_ipbc(p);
  IpbcInputs in;
  in.branch = IpbcBranch::VoltageLoop;
  in.u_dc2 = 1.3 * p.bus.rated_voltage_dc;
  for (int i = 0; i < 5000; ++i) {
    in.p_ael = ael_power(p.ael, buck_output(c.duty, in.u_dc2));
    ipbc_step(c, p, in, 1e-3);
  }
  const double u_ael = buck_output(c.duty, in.u_dc2);
  CHECK(ael_power(p.ael, u_ael) <= p.ael.rated_power * (1.0 + 1e-9));
  CHECK(ael_power(p.ael, u_ael) == doctest::Approx(p.ael.rated_power).epsilon(1e-6));
}

TEST_CASE("interface controller transfers between branches without a duty step") {
  const Params p = defaults_with_ratio(0.6);
  // a slightly high bus keeps the voltage loop winding toward its cap
  const double u_dc2 = 1.02 * p.bus.rated_voltage_dc;

  IpbcController c = make_ipbc(p);
  IpbcInputs in;
  in.branch = IpbcBranch::VoltageLoop;
  in.u_dc2 = u_dc2;
  for (int i = 0; i < 3000; ++i) {
    in.p_ael = ael_power(p.ael, buck_output(c.duty, u_dc2));
    ipbc_step(c, p, in, 1e-3);
  }
  const double duty_before = c.duty;
  CHECK(duty_before > 0.1);

  in.branch = IpbcBranch::PowerCurrentLoop;
  in.p_ael = ael_power(p.ael, buck_output(c.duty, u_dc2));
  in.p_ael_ref = in.p_ael * 0.9;
  ipbc_step(c, p, in, 1e-3);
  CHECK(std::fabs(c.duty - duty_before) <= 0.01);

  for (int i = 0; i < 3000; ++i) {
    in.p_ael = ael_power(p.ael, buck_output(c.duty, u_dc2));
    ipbc_step(c, p, in, 1e-3);
  }
  const double duty_pc = c.duty;
  CHECK(std::fabs(c.duty - duty_before) > 0.02);
  in.branch = IpbcBranch::VoltageLoop;
  in.p_ael = ael_power(p.ael, buck_output(c.duty, u_dc2));
  ipbc_step(c, p, in, 1e-3);
  CHECK(std::fabs(c.duty - duty_pc) <= 0.01);
}

TEST_CASE("interface controller tracks a power reference through the cascade") {
  const Params p = defaults_with_ratio(0.6);
  IpbcController c = make_ipbc(p);
  IpbcInputs in;
  in.branch = IpbcBranch::PowerCurrentLoop;
  in.u_dc2 = p.bus.rated_voltage_dc;
  in.p_ael_ref = 0.8e6;
  for (int i = 0; i < 20000; ++i) {
    in.p_ael = ael_power(p.ael, buck_output(c.duty, in.u_dc2));
    ipbc_step(c, p, in, 1e-3);
  }
  CHECK(in.p_ael == doctest::Approx(0.8e6).epsilon(1e-3));
}

TEST_CASE("interface controller disconnects cleanly") {
  const Params p = defaults_with_ratio(0.6);
  IpbcController c = make_ipbc(p);
  c.duty = 0.7;
  IpbcInputs in;
  in.branch = IpbcBranch::Off;
  in.u_dc2 = p.bus.rated_voltage_dc;
  ipbc_step(c, p, in, 1e-3);
  CHECK(c.duty == 0.0);
}
