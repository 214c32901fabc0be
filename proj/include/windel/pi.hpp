#pragma once

#include <algorithm>

namespace windel {

// Discrete PI with output saturation and conditional anti-windup: the
// integrator freezes whenever integrating would push the output further
// past an active limit.
struct PiController {
  double kp = 0.0;
  double ki = 0.0;
  double out_min = 0.0;
  double out_max = 0.0;
  bool anti_windup = true;
  double integ = 0.0;

  double step(double error, double dt) {
    const double delta = ki * error * dt;
    const double unsat = kp * error + integ + delta;
    const bool hi = unsat > out_max;
    const bool lo = unsat < out_min;
    if (!anti_windup || (!hi && !lo) || (hi && error < 0.0) || (lo && error > 0.0)) {
      integ += delta;
    }
    return std::clamp(unsat, out_min, out_max);
  }

  // Preload so the next zero-error output equals `output`; used for
  // bumpless branch transfer.
  void preload(double output, double error_now) {
    integ = output - kp * error_now;
  }

  void reset() { integ = 0.0; }
};

}  // namespace windel
