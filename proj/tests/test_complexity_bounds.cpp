#include <gtest/gtest.h>

#include <cmath>

#include "momlab/block_spectral_analysis.hpp"
#include "momlab/complexity_bounds.hpp"
#include "momlab/errors.hpp"
#include "momlab/momentum_methods.hpp"
#include "momlab/random.hpp"

using namespace momlab;

TEST(Theorem1Budget, ReferenceValues) {
  struct Case {
    double cond, eps;
    std::int64_t budget;
  };
  // Recomputed in 50-digit arithmetic.
  for (const Case& c : {Case{28, 1.0 / 28, 32}, Case{28, 1.0 / 280, 49}, Case{100, 0.01, 76},
                        Case{100, 0.001, 109}, Case{1000, 1e-3, 341}, Case{1000, 1e-4, 444},
                        Case{1e4, 1e-4, 1402}, Case{1e4, 1e-5, 1728}})
    EXPECT_EQ(theorem1_budget(c.cond, c.eps).budget, c.budget) << c.cond << " " << c.eps;
}

TEST(Theorem2Budget, ReferenceValues) {
  struct Case {
    double cond, eps;
    std::int64_t budget;
  };
  for (const Case& c : {Case{28, 1.0 / 28, 44}, Case{28, 1.0 / 280, 68}, Case{100, 0.01, 107},
                        Case{100, 0.001, 154}, Case{1000, 1e-3, 482}, Case{1000, 1e-4, 628},
                        Case{1e4, 1e-4, 1982}, Case{1e4, 1e-5, 2443}})
    EXPECT_EQ(theorem2_budget(c.cond, c.eps).budget, c.budget) << c.cond << " " << c.eps;
}

TEST(Theorem1Budget, ReportFields) {
  const ComplexityReport r = theorem1_budget(100.0, 0.01);
  EXPECT_DOUBLE_EQ(r.delta, 1.0 / std::sqrt(200.0));
  EXPECT_DOUBLE_EQ(r.k_bar, 2.0 / r.delta * std::log(1.0 / r.delta) - 1.0);
  EXPECT_DOUBLE_EQ(r.eps_bar, 2.0 * r.delta * r.delta * std::exp(2.0 * r.delta));
  EXPECT_DOUBLE_EQ(r.eps_max, 0.01);
  EXPECT_NEAR(r.rho_asymptotic, 1.0 - std::sqrt(0.02), 1e-15);
  EXPECT_NEAR(r.delta, (1.0 - std::sqrt(theorem1_params(EigenBounds::make(1, 100)).beta)) / 2.0, 1e-15);
}

TEST(Theorem1Budget, DeltaAtThreshold) {
  const ComplexityReport r = theorem1_budget(28.0, 1.0 / 28.0);
  EXPECT_NEAR(r.delta, 0.13363062095621219, 1e-15);
  EXPECT_LE(r.delta, std::exp(-2.0));
}

TEST(Theorem2Budget, UsesDoubledCondition) {
  const ComplexityReport r = theorem2_budget(100.0, 0.01);
  EXPECT_DOUBLE_EQ(r.delta, 1.0 / std::sqrt(400.0));
  EXPECT_DOUBLE_EQ(r.rho_asymptotic, 0.9);
}

TEST(Budgets, Preconditions) {
  EXPECT_THROW(theorem1_budget(100.0, 2.0), PreconditionError);
  EXPECT_THROW(theorem1_budget(100.0, 0.011), PreconditionError);
  EXPECT_THROW(theorem1_budget(100.0, 0.0), PreconditionError);
  EXPECT_THROW(theorem2_budget(27.0, 1.0 / 27.0), PreconditionError);
  EXPECT_THROW(theorem1_budget(0.5, 0.1, Hypotheses::relax), PreconditionError);
  EXPECT_THROW(theorem1_budget(10.0, -1.0, Hypotheses::relax), PreconditionError);
  EXPECT_EQ(theorem1_budget(10.0, 0.5, Hypotheses::relax).budget,
            1 + static_cast<std::int64_t>(std::ceil(std::sqrt(20.0) * std::log(4.0))));
  try {
    theorem2_budget(100.0, 0.5);
    FAIL() << "expected a precondition error";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.inequality()).find("eps"), std::string::npos);
  }
}

TEST(Budgets, RatioNearSqrtTwo) {
  for (double cond : {100.0, 1e4})
    for (double eps : {1.0 / cond, 0.1 / cond, 0.01 / cond}) {
      const double k1 = static_cast<double>(theorem1_budget(cond, eps).budget);
      const double k2 = static_cast<double>(theorem2_budget(cond, eps).budget);
      EXPECT_LE(std::abs(k2 - std::sqrt(2.0) * k1), 1.0) << cond << " " << eps;
    }
}

TEST(GuardedCeil, SnapsNearIntegers) {
  EXPECT_EQ(guarded_ceil(74.93), 75);
  EXPECT_EQ(guarded_ceil(75.0 + 1e-12), 75);
  EXPECT_EQ(guarded_ceil(75.0 - 1e-12), 75);
  EXPECT_EQ(guarded_ceil(75.0 + 1e-6), 76);
  EXPECT_EQ(guarded_ceil(-0.5), 0);
}

TEST(Chain, ImplicationsHoldOnGrid) {
  std::size_t bound2_cases = 0;
  for (int i = 1; i < 100; ++i) {
    const double rho = i / 100.0;
    for (std::int64_t k : {1, 2, 5, 10, 50, 100, 500, 1000, 5000})
      for (double eps : {0.5, 0.1, 1e-3, 1e-6}) {
        const ChainEvaluation c = sufficient_condition_chain(rho, k, eps);
        EXPECT_TRUE(c.implications_hold()) << rho << " " << k << " " << eps;
        EXPECT_DOUBLE_EQ(c.delta, (1.0 - rho) / 2.0);
        if (c.bound2()) ++bound2_cases;
      }
  }
  EXPECT_GT(bound2_cases, 100u);
}

TEST(Chain, Examples) {
  const ChainEvaluation first = sufficient_condition_chain(0.5, 1, 0.9);
  EXPECT_FALSE(first.boundk);
  EXPECT_FALSE(first.bound2());
  EXPECT_TRUE(sufficient_condition_chain(1.0 / 12.0, 2, 0.5).boundk);
  EXPECT_TRUE(sufficient_condition_chain(0.05, 2, 0.5).boundk);
  EXPECT_FALSE(sufficient_condition_chain(0.1, 2, 0.5).boundk);
  EXPECT_THROW(sufficient_condition_chain(0.0, 2, 0.5), DomainError);
  EXPECT_THROW(sufficient_condition_chain(1.0, 2, 0.5), DomainError);
  EXPECT_THROW(sufficient_condition_chain(0.5, 0, 0.5), DomainError);
}

TEST(KBar, MarginPositiveOnAdmissibleDeltas) {
  SplitMix64 rng(5);
  const double dmax = std::exp(-2.0);
  EXPECT_GT(k_bar_margin(dmax), 0.0);
  for (int i = 0; i < 100; ++i) {
    const double delta = dmax * rng.uniform();
    EXPECT_GT(k_bar_margin(delta), 0.0) << delta;
  }
}

TEST(EpsBar, AtLeastTwoDeltaSquared) {
  for (double cond : {28.0, 50.0, 100.0, 1e3, 1e5}) {
    const ComplexityReport r1 = theorem1_budget(cond, 1.0 / cond);
    const ComplexityReport r2 = theorem2_budget(cond, 1.0 / cond);
    EXPECT_GE(r1.eps_bar, 2.0 * r1.delta * r1.delta);
    EXPECT_GE(r2.eps_bar, 2.0 * r2.delta * r2.delta);
    EXPECT_GE(r1.budget, 1);
  }
}

TEST(AsymptoticRates, Values) {
  const AsymptoticRates r = asymptotic_rates(100.0);
  EXPECT_NEAR(r.hbm, 0.8585786437626905, 1e-15);
  EXPECT_NEAR(r.nag, 0.9, 1e-15);
  EXPECT_NEAR(r.polyak_optimal, 0.8, 1e-15);
  EXPECT_NEAR(r.nesterov_fvalue, 0.9292893218813452, 1e-15);
  EXPECT_THROW(asymptotic_rates(4.0), DomainError);
}

TEST(AsymptoticRates, OrderingAndLimit) {
  for (double cond = 28.0; cond < 1e7; cond *= 1.37) {
    const AsymptoticRates r = asymptotic_rates(cond);
    EXPECT_LT(r.polyak_optimal, r.hbm);
    EXPECT_LT(r.hbm, r.nag);
    EXPECT_LT(r.nag, r.nesterov_fvalue);
  }
  const AsymptoticRates big = asymptotic_rates(1e16);
  EXPECT_GT(big.polyak_optimal, 1.0 - 1e-7);
}

TEST(AsymptoticRates, MatchBlockAnalysis) {
  for (double cond : {28.0, 100.0, 1000.0}) {
    const MethodParams p = theorem1_params(EigenBounds::make(1.0, cond));
    const double alpha_low = p.alpha * 1.0;
    double worst = 0.0;
    double at_low = analyze_hbm(alpha_low, p.beta).rho;
    for (int j = 0; j <= 400; ++j) {
      const double a = alpha_low + (2.0 - alpha_low) * j / 400.0;
      worst = std::max(worst, analyze_hbm(a, p.beta).rho);
    }
    EXPECT_NEAR(worst, asymptotic_rates(cond).hbm, 1e-12);
    EXPECT_NEAR(at_low, asymptotic_rates(cond).hbm, 1e-12);
  }
}

TEST(BlockSufficiency, BoundHoldsAtBudget) {
  for (double cond : {28.0, 100.0, 1000.0})
    for (double eps : {1.0 / cond, 0.1 / cond}) {
      const MethodParams p = theorem1_params(EigenBounds::make(1.0, cond));
      const auto k = static_cast<std::size_t>(theorem1_budget(cond, eps).budget);
      for (int j = 0; j < 200; ++j) {
        const double a = p.alpha + (2.0 - p.alpha) * j / 199.0;
        EXPECT_LE(power_norm_bound(analyze_hbm(a, p.beta), k), eps) << cond << " " << a;
      }
    }
}
