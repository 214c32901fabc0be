#include "windel/wind.hpp"

#include <cmath>
#include <stdexcept>

namespace windel {

double weibull_scale_for_mean(double shape, double mean) {
  if (!(shape > 0.0) || !(mean > 0.0))
    throw std::invalid_argument("weibull shape and mean must be positive");
  return mean / std::tgamma(1.0 + 1.0 / shape);
}

WeibullSampler::WeibullSampler(double shape, double scale, std::uint64_t seed)
    : shape_(shape), scale_(scale), rng_(seed) {}

double WeibullSampler::draw() {
  // inverse transform on (0,1); the offset keeps log() off exact zero
  const double u =
      (static_cast<double>(rng_()) + 0.5) / (static_cast<double>(rng_.max()) + 1.0);
  return scale_ * std::pow(-std::log1p(-u), 1.0 / shape_);
}

WindGenerator::WindGenerator(const WindProfile& p)
    : profile_(p),
      sampler_(p.shape, p.kind == WindKind::Weibull
                            ? weibull_scale_for_mean(p.shape, p.mean)
                            : 1.0,
               p.seed) {}

double WindGenerator::value(double t) {
  switch (profile_.kind) {
    case WindKind::Constant:
      return profile_.speed;
    case WindKind::Steps: {
      double v = profile_.steps.empty() ? profile_.speed : profile_.steps.front().second;
      for (const auto& [st, sv] : profile_.steps) {
        if (t + 1e-12 >= st) v = sv;
      }
      return v;
    }
    case WindKind::Weibull: {
      if (!started_) {
        held_ = sampler_.draw();
        filtered_ = profile_.mean;
        next_draw_t_ = t + profile_.sample_period;
        last_t_ = t;
        started_ = true;
        return filtered_;
      }
      while (t + 1e-12 >= next_draw_t_) {
        held_ = sampler_.draw();
        next_draw_t_ += profile_.sample_period;
      }
      const double dt = t - last_t_;
      last_t_ = t;
      if (dt > 0.0 && profile_.filter_tau > 0.0) {
        const double a = 1.0 - std::exp(-dt / profile_.filter_tau);
        filtered_ += a * (held_ - filtered_);
      } else if (profile_.filter_tau <= 0.0) {
        filtered_ = held_;
      }
      return filtered_;
    }
  }
  return profile_.speed;
}

}  // namespace windel
