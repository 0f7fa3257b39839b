#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace garp {

// Deterministic random stream. Every distribution is implemented on top of
// the raw mt19937_64 output, so a (seed, call sequence) pair always yields
// the same draws regardless of standard-library version. One stream must be
// owned by exactly one chain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0,1).
  double uniform() {
    const std::uint64_t bits = engine_() >> 11;  // 53 random bits
    return (static_cast<double>(bits) + 0.5) * 0x1p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller, caching the second draw.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Gamma(shape, scale=1), Marsaglia-Tsang; shape < 1 via the boost step.
  double gamma(double shape) {
    if (shape <= 0.0) throw std::invalid_argument("gamma: shape must be > 0");
    if (shape < 1.0) {
      const double u = uniform();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x;
      double v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double chi_squared(double dof) { return 2.0 * gamma(0.5 * dof); }

  bool bernoulli(double p) { return uniform() < p; }

  // Index draw proportional to nonnegative weights.
  int categorical(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw std::invalid_argument("categorical: total weight must be > 0");
    double u = uniform() * total;
    for (std::size_t j = 0; j + 1 < weights.size(); ++j) {
      u -= weights[j];
      if (u <= 0.0) return static_cast<int>(j);
    }
    return static_cast<int>(weights.size()) - 1;
  }

  // Index draw from unnormalized log weights (max-shifted).
  int categorical_log(std::span<const double> log_weights) {
    double max_lw = -std::numeric_limits<double>::infinity();
    for (double lw : log_weights) max_lw = std::max(max_lw, lw);
    if (!std::isfinite(max_lw)) throw std::invalid_argument("categorical_log: all weights are zero");
    double total = 0.0;
    for (double lw : log_weights) total += std::exp(lw - max_lw);
    double u = uniform() * total;
    for (std::size_t j = 0; j + 1 < log_weights.size(); ++j) {
      u -= std::exp(log_weights[j] - max_lw);
      if (u <= 0.0) return static_cast<int>(j);
    }
    return static_cast<int>(log_weights.size()) - 1;
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace garp
