#include "momlab/complexity_bounds.hpp"

#include <cmath>
#include <string>

#include "momlab/momentum_methods.hpp"

namespace momlab {

namespace {

void check_hypotheses(double cond_bar, double eps, Hypotheses h) {
  if (!(eps > 0.0)) throw PreconditionError("eps > 0 (eps = " + std::to_string(eps) + ")", 0.0);
  if (!(cond_bar >= 1.0))
    throw PreconditionError("cond_bar >= 1 (cond_bar = " + std::to_string(cond_bar) + ")", 1.0);
  if (h == Hypotheses::relax) return;
  if (!(cond_bar >= kTheoremMinCond))
    throw PreconditionError("cond_bar >= 28 (cond_bar = " + std::to_string(cond_bar) + ")",
                            kTheoremMinCond);
  if (!(eps <= 1.0 / cond_bar))
    throw PreconditionError("eps <= 1/cond_bar (eps = " + std::to_string(eps) +
                                ", 1/cond_bar = " + std::to_string(1.0 / cond_bar) + ")",
                            1.0 / cond_bar);
}

/// delta, k_bar and eps_bar for an effective condition bound c.
void fill_chain_quantities(ComplexityReport& r, double effective_cond) {
  r.delta = 1.0 / std::sqrt(2.0 * effective_cond);
  r.k_bar = 2.0 / r.delta * std::log(1.0 / r.delta) - 1.0;
  r.eps_bar = 2.0 * r.delta * r.delta * std::exp(2.0 * r.delta);
}

}  // namespace

std::int64_t guarded_ceil(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9) return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(std::ceil(x));
}

ComplexityReport theorem1_budget(double cond_bar, double eps, Hypotheses h) {
  check_hypotheses(cond_bar, eps, h);
  ComplexityReport r;
  r.cond_bar = cond_bar;
  r.eps = eps;
  r.eps_max = 1.0 / cond_bar;
  fill_chain_quantities(r, cond_bar);
  r.budget = 1 + guarded_ceil(std::sqrt(2.0 * cond_bar) * std::log(2.0 / eps));
  r.rho_asymptotic = 1.0 - std::sqrt(2.0 / cond_bar);
  return r;
}

ComplexityReport theorem2_budget(double cond_bar, double eps, Hypotheses h) {
  check_hypotheses(cond_bar, eps, h);
  ComplexityReport r;
  r.cond_bar = cond_bar;
  r.eps = eps;
  r.eps_max = 1.0 / cond_bar;
  // Half the step length: the hbm analysis with cond_bar doubled.
  fill_chain_quantities(r, 2.0 * cond_bar);
  r.budget = 1 + guarded_ceil(2.0 * std::sqrt(cond_bar) * std::log(2.0 / eps));
  r.rho_asymptotic = 1.0 - std::sqrt(1.0 / cond_bar);
  return r;
}

ChainEvaluation sufficient_condition_chain(double rho, std::int64_t k, double eps) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("chain needs 0 < rho < 1");
  if (k < 1) throw DomainError("chain needs k >= 1");
  if (!(eps > 0.0)) throw DomainError("chain needs eps > 0");
  ChainEvaluation c;
  c.rho = rho;
  c.k = k;
  c.eps = eps;
  c.delta = 0.5 * (1.0 - rho);
  const double kd = static_cast<double>(k);
  const double log_k1 = std::log(kd + 1.0);
  const double log_2eps = std::log(2.0 / eps);
  c.boundk = 2.0 * std::pow(rho, kd - 1.0) * (kd + 1.0) <= eps;
  c.bound1 = (1.0 - rho) * (kd - 1.0) >= log_2eps + log_k1;
  c.bound2_first = c.delta * (kd - 1.0) >= log_2eps;
  c.bound2_second = c.delta * (kd - 1.0) >= log_k1;
  return c;
}

double k_bar_margin(double delta) {
  const double k_bar = 2.0 / delta * std::log(1.0 / delta) - 1.0;
  return delta * (k_bar - 1.0) - std::log(k_bar + 1.0);
}

AsymptoticRates asymptotic_rates(double cond_bar) {
  if (!(cond_bar > 4.0)) throw DomainError("asymptotic rates need cond_bar > 4");
  return AsymptoticRates{
      1.0 - std::sqrt(2.0 / cond_bar),
      1.0 - std::sqrt(1.0 / cond_bar),
      1.0 - 2.0 / std::sqrt(cond_bar),
      1.0 - std::sqrt(1.0 / (2.0 * cond_bar)),
  };
}

}  // namespace momlab
