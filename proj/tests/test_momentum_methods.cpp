#include <gtest/gtest.h>

#include <cmath>

#include "momlab/complexity_bounds.hpp"
#include "momlab/errors.hpp"
#include "momlab/momentum_methods.hpp"
#include "momlab/random.hpp"

using namespace momlab;

namespace {

const QuadraticProblem& fig1_problem() {
  static const QuadraticProblem p = make_diagonal_problem(DiagonalSpectrum({1.0, 100.0}));
  return p;
}

double max_gap(const Trajectory& a, const Trajectory& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.iterates.size(); ++k)
    for (std::size_t i = 0; i < a.iterates[k].size(); ++i)
      worst = std::max(worst, std::abs(a.iterates[k][i] - b.iterates[k][i]));
  return worst;
}

double max_norm(const Trajectory& t) {
  double m = 1.0;
  for (const Vector& x : t.iterates) m = std::max(m, norm2(x));
  return m;
}

}  // namespace

TEST(MethodKind, Names) {
  for (MethodKind k : {MethodKind::mm, MethodKind::hbm, MethodKind::nag_two_sequence,
                       MethodKind::nag_compact})
    EXPECT_EQ(parse_method_kind(to_string(k)), k);
  EXPECT_EQ(parse_method_kind("nag_two_sequence"), MethodKind::nag_two_sequence);
  EXPECT_FALSE(parse_method_kind("adam").has_value());
  EXPECT_TRUE(is_nesterov(MethodKind::nag_compact));
  EXPECT_FALSE(is_nesterov(MethodKind::mm));
}

TEST(MethodParams, Validate) {
  EXPECT_NO_THROW((MethodParams{0.1, 0.0, MethodKind::hbm}.validate()));
  EXPECT_THROW((MethodParams{0.0, 0.5, MethodKind::hbm}.validate()), DomainError);
  EXPECT_THROW((MethodParams{0.1, 1.0, MethodKind::hbm}.validate()), DomainError);
  EXPECT_THROW((MethodParams{0.1, -0.1, MethodKind::hbm}.validate()), DomainError);
  EXPECT_THROW(run(fig1_problem(), {0.1, 1.0, MethodKind::hbm}, Vector{1.0, 1.0}, 3), DomainError);
}

TEST(Step, ZeroMomentumIsSteepestDescent) {
  const auto& p = fig1_problem();
  const Vector x0{0.3, -2.0};
  for (MethodKind kind : {MethodKind::mm, MethodKind::hbm, MethodKind::nag_two_sequence,
                          MethodKind::nag_compact}) {
    const MethodParams params{0.015, 0.0, kind};
    const Trajectory t = run(p, params, x0, 30);
    Vector x = x0;
    for (std::size_t k = 1; k <= 30; ++k) {
      const Vector g = gradient(p, x);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] -= params.alpha * g[i];
      EXPECT_EQ(t.iterates[k], x) << to_string(kind) << " k=" << k;
    }
  }
}

TEST(Step, DimensionMismatch) {
  const MethodParams params{0.01, 0.5, MethodKind::hbm};
  EXPECT_THROW(initial_state(fig1_problem(), params, Vector{1.0}), DimensionMismatch);
  IterState s = initial_state(fig1_problem(), params, Vector{1.0, 1.0});
  s.x.push_back(0.0);
  EXPECT_THROW(step(fig1_problem(), params, s), DimensionMismatch);
}

TEST(Equivalence, MomentumAndHeavyBallTwentySteps) {
  const Vector x0{1.0, 1.0};
  const Trajectory mm = run(fig1_problem(), {0.019, 0.85, MethodKind::mm}, x0, 20);
  const Trajectory hbm = run(fig1_problem(), {0.019, 0.85, MethodKind::hbm}, x0, 20);
  EXPECT_LE(max_gap(mm, hbm), 1e-12);
}

TEST(Equivalence, NesterovFormsTwentySteps) {
  const Vector x0{1.0, 1.0};
  const Trajectory a = run(fig1_problem(), {0.019, 0.85, MethodKind::nag_two_sequence}, x0, 20);
  const Trajectory b = run(fig1_problem(), {0.019, 0.85, MethodKind::nag_compact}, x0, 20);
  // alpha * 100 = 1.9 makes the nag block expansive (rho = 2.04), so the
  // iterates reach ~1e6 and the gap is measured relative to their size.
  EXPECT_LE(max_gap(a, b), 1e-12 * max_norm(a));
}

TEST(Equivalence, RandomProblemsTwoHundredSteps) {
  SplitMix64 rng(2718);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 9);
    const double cond = 1.0 + 999.0 * rng.uniform();
    const auto s = DiagonalSpectrum::log_uniform(n, 1.0, cond);
    Vector shift(n);
    for (double& v : shift) v = rng.gaussian();
    const auto rp = make_rotated_problem(s, rng.next(), shift);
    const double alpha = (0.1 + 1.9 * rng.uniform()) / cond;
    const double beta = 0.99 * rng.uniform();
    const Vector x0 = random_unit_vector(n, rng.next());

    const Trajectory mm = run(rp.problem, {alpha, beta, MethodKind::mm}, x0, 200);
    const Trajectory hbm = run(rp.problem, {alpha, beta, MethodKind::hbm}, x0, 200);
    EXPECT_LE(max_gap(mm, hbm), 1e-10 * max_norm(hbm)) << trial;

    const Trajectory two = run(rp.problem, {alpha, beta, MethodKind::nag_two_sequence}, x0, 200);
    const Trajectory compact = run(rp.problem, {alpha, beta, MethodKind::nag_compact}, x0, 200);
    EXPECT_LE(max_gap(two, compact), 1e-10 * max_norm(two)) << trial;
  }
}

TEST(Run, FigureOneIsNonMonotone) {
  const Trajectory t = run(fig1_problem(), {1.9 / 100.0, 0.85, MethodKind::hbm}, Vector{1.0, 1.0}, 100);
  ASSERT_EQ(t.distances.size(), 101u);
  bool increased = false;
  for (std::size_t k = 0; k + 1 < t.distances.size(); ++k)
    increased = increased || t.distances[k + 1] > t.distances[k];
  EXPECT_TRUE(increased);
  EXPECT_LT(t.distances[100], t.distances[0]);
}

TEST(Run, StartAtMinimizer) {
  const auto rp = make_rotated_problem(DiagonalSpectrum({1.0, 4.0, 9.0}), 4, Vector{1.0, 2.0, 3.0});
  for (MethodKind kind : {MethodKind::mm, MethodKind::hbm, MethodKind::nag_two_sequence,
                          MethodKind::nag_compact}) {
    const Trajectory t = run(rp.problem, {0.1, 0.5, kind}, rp.problem.solution(), 10);
    for (double d : t.distances) EXPECT_LE(d, 1e-14);
    for (double d : t.averaged_distances) EXPECT_LE(d, 1e-14);
  }
}

TEST(Run, OneDimensionalFullStep) {
  const auto p = make_diagonal_problem(DiagonalSpectrum({1.0}));
  const MethodParams params{2.0, 0.5, MethodKind::hbm};
  const Trajectory t = run(p, params, Vector{0.7}, 1);
  EXPECT_EQ(t.iterates[1][0], -0.7);
  EXPECT_EQ(t.distances[1], t.distances[0]);
}

TEST(Run, AveragedIterates) {
  const Trajectory t = run(fig1_problem(), {0.019, 0.85, MethodKind::hbm}, Vector{1.0, 1.0}, 5);
  EXPECT_EQ(t.num_steps(), 5u);
  const Vector avg = t.averaged_at(5);
  EXPECT_EQ(avg, t.averaged_final);
  EXPECT_DOUBLE_EQ(avg[0], 0.5 * (t.iterates[4][0] + t.iterates[5][0]));
  EXPECT_EQ(t.averaged_distances[0], t.distances[0]);
  EXPECT_DOUBLE_EQ(t.averaged_distances[3], distance(t.averaged_at(3), fig1_problem().solution()));
  EXPECT_THROW(run(fig1_problem(), {0.019, 0.85, MethodKind::hbm}, Vector{1.0, 1.0}, 0), DomainError);
}

TEST(TheoremParams, Theorem1) {
  const MethodParams p = theorem1_params(EigenBounds::make(1.0, 100.0));
  EXPECT_DOUBLE_EQ(p.alpha, 0.02);
  EXPECT_NEAR(p.beta, 0.7371572875253809902, 1e-15);
  EXPECT_EQ(p.kind, MethodKind::hbm);

  const MethodParams b = theorem1_params(EigenBounds::make(1.0, 28.0));
  EXPECT_DOUBLE_EQ(b.alpha, 2.0 / 28.0);
  EXPECT_NEAR(b.beta, 0.5369060876037227, 1e-15);

  EXPECT_THROW(theorem1_params(EigenBounds::make(1.0, 2.0)), PreconditionError);
  EXPECT_THROW(theorem1_params(EigenBounds::make(1.0, 27.9)), PreconditionError);
  EXPECT_NO_THROW(theorem1_params(EigenBounds::make(1.0, 2.0), Hypotheses::relax));
}

TEST(TheoremParams, Theorem2) {
  const MethodParams p = theorem2_params(EigenBounds::make(1.0, 100.0));
  EXPECT_DOUBLE_EQ(p.alpha, 0.01);
  EXPECT_NEAR(p.beta, 0.81 / 0.99, 1e-15);
  EXPECT_EQ(p.kind, MethodKind::nag_two_sequence);
  for (double cond : {28.0, 100.0, 1000.0}) {
    const double beta = theorem2_params(EigenBounds::make(1.0, cond)).beta;
    const double alt = (std::sqrt(cond) - 1.0) * (std::sqrt(cond) - 1.0) / (cond - 1.0);
    EXPECT_LE(std::abs(beta - alt), 1e-14) << cond;
  }
  try {
    theorem2_params(EigenBounds::make(1.0, 4.0));
    FAIL() << "expected a precondition error";
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.threshold(), kTheoremMinCond);
  }
}

TEST(TheoremParams, Theorem1BetaMatchesLowerStep) {
  for (double cond : {28.0, 300.0, 5e4}) {
    const auto b = EigenBounds::make(2.0, 2.0 * cond);
    const MethodParams p = theorem1_params(b);
    const double alpha_lower = p.alpha * b.lower;
    EXPECT_NEAR(alpha_lower, 2.0 / cond, 1e-15);
    EXPECT_NEAR(p.beta, (1.0 - std::sqrt(alpha_lower)) * (1.0 - std::sqrt(alpha_lower)), 1e-14);
  }
}

TEST(Convergence, FirstStepIsMonotone) {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 8);
    const double cond = 28.0 + 1000.0 * rng.uniform();
    const auto s = DiagonalSpectrum::log_uniform(n, 1.0, cond);
    const auto p = make_diagonal_problem(s);
    const Vector x0 = random_unit_vector(n, rng.next());
    const Trajectory t = run(p, theorem1_params(EigenBounds::of(s)), x0, 1);
    EXPECT_LE(t.distances[1], t.distances[0]) << trial;
  }
}

TEST(Convergence, TheoremBudgetDecreasesDistance) {
  for (double cond : {28.0, 100.0, 1000.0}) {
    const auto s = DiagonalSpectrum::two_point(2, 1.0, cond);
    const auto p = make_diagonal_problem(s);
    const auto k = static_cast<std::size_t>(theorem1_budget(cond, 1.0 / cond).budget);
    const Trajectory t = run(p, theorem1_params(EigenBounds::of(s)), Vector{0.6, 0.8}, k);
    EXPECT_LT(t.distances[k], t.distances[0]);
  }
}
