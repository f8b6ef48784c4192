#pragma once

#include <cstdint>

#include "momlab/errors.hpp"

namespace momlab {

/// Iteration budget and the intermediate quantities of its derivation.
struct ComplexityReport {
  double cond_bar = 0.0;
  double eps = 0.0;
  /// 1 / sqrt(2 c) with c = cond_bar (hbm) or 2 cond_bar (nag).
  double delta = 0.0;
  /// (2 / delta) ln(1 / delta) - 1: beyond it, delta (k - 1) >= ln(k + 1).
  double k_bar = 0.0;
  /// 2 delta^2 e^(2 delta).
  double eps_bar = 0.0;
  /// Largest admissible eps, 1 / cond_bar.
  double eps_max = 0.0;
  std::int64_t budget = 0;
  double rho_asymptotic = 0.0;
};

/// K = 1 + ceil(sqrt(2 cond_bar) ln(2 / eps)). Requires cond_bar >= 28 and
/// 0 < eps <= 1 / cond_bar (PreconditionError otherwise, unless relaxed).
ComplexityReport theorem1_budget(double cond_bar, double eps, Hypotheses h = Hypotheses::enforce);

/// K = 1 + ceil(2 sqrt(cond_bar) ln(2 / eps)); same hypotheses.
ComplexityReport theorem2_budget(double cond_bar, double eps, Hypotheses h = Hypotheses::enforce);

/// Ceiling that first snaps arguments within 1e-9 of an integer onto it.
std::int64_t guarded_ceil(double x);

/// Each inequality in the chain that reduces 2 rho^(k-1)(k+1) <= eps to
/// two conditions linear in k, with delta = (1 - rho) / 2.
struct ChainEvaluation {
  double rho = 0.0;
  std::int64_t k = 0;
  double eps = 0.0;
  double delta = 0.0;
  bool boundk = false;         // 2 rho^(k-1)(k+1) <= eps
  bool bound1 = false;         // (1 - rho)(k - 1) >= ln(2/eps) + ln(k + 1)
  bool bound2_first = false;   // delta (k - 1) >= ln(2/eps)
  bool bound2_second = false;  // delta (k - 1) >= ln(k + 1)

  bool bound2() const noexcept { return bound2_first && bound2_second; }
  /// bound2 => bound1 => boundk; false means the chain was broken.
  bool implications_hold() const noexcept {
    return (!bound2() || bound1) && (!bound1 || boundk);
  }
};

/// Requires 0 < rho < 1 and k >= 1 (DomainError otherwise).
ChainEvaluation sufficient_condition_chain(double rho, std::int64_t k, double eps);

/// delta (k_bar - 1) - ln(k_bar + 1); positive for delta in (0, e^-2].
double k_bar_margin(double delta);

struct AsymptoticRates {
  double hbm = 0.0;              // 1 - sqrt(2 / cond)
  double nag = 0.0;              // 1 - sqrt(1 / cond)
  double polyak_optimal = 0.0;   // 1 - 2 / sqrt(cond), long-step heavy ball
  double nesterov_fvalue = 0.0;  // 1 - sqrt(1 / (2 cond)), function-value rate in the Euclidean norm
};

/// Requires cond_bar > 4.
AsymptoticRates asymptotic_rates(double cond_bar);

}  // namespace momlab
