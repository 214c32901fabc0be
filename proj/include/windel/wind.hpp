#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace windel {

enum class WindKind { Constant, Steps, Weibull };

struct WindProfile {
  WindKind kind = WindKind::Constant;
  double speed = 9.0;  // m/s, Constant

  // Steps: (time, speed) pairs, strictly increasing times starting at 0.
  std::vector<std::pair<double, double>> steps;

  // Weibull: draw-and-hold samples through a first-order smoother.
  double shape = 2.0;
  double mean = 10.5;          // m/s; scale follows from the closed form
  double sample_period = 0.5;  // s between draws
  double filter_tau = 1.5;     // s smoothing constant
  std::uint64_t seed = 1;
};

double weibull_scale_for_mean(double shape, double mean);

// Inverse-transform Weibull sampler over a fixed-width engine; keeps the
// generated sequence identical for a given seed independent of library
// internals.
class WeibullSampler {
 public:
  WeibullSampler(double shape, double scale, std::uint64_t seed);
  double draw();

 private:
  double shape_;
  double scale_;
  std::mt19937_64 rng_;
};

// Stepwise wind source; value(t) must be called with non-decreasing t.
class WindGenerator {
 public:
  explicit WindGenerator(const WindProfile& p);
  double value(double t);

 private:
  WindProfile profile_;
  WeibullSampler sampler_;
  double held_ = 0.0;       // current raw draw
  double filtered_ = 0.0;
  double next_draw_t_ = 0.0;
  double last_t_ = 0.0;
  bool started_ = false;
};

}  // namespace windel
