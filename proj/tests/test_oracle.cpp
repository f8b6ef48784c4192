#include <gtest/gtest.h>

#include <cmath>

#include "momlab/errors.hpp"
#include "momlab/oracle.hpp"
#include "momlab/random.hpp"

using namespace momlab;

TEST(PowerByMultiplication, TrivialCases) {
  const Matrix id = Matrix::identity(3);
  for (std::size_t k : {0u, 1u, 9u}) EXPECT_EQ(oracle::power_by_multiplication(id, k), id);
  const Block2x2 nil{0.0, 1.0, 0.0, 0.0};
  EXPECT_EQ(oracle::power_by_multiplication(nil, 2), Block2x2{});
  EXPECT_EQ(oracle::power_by_multiplication(nil, 0), Block2x2::identity());
  EXPECT_EQ(oracle::power_by_multiplication(nil, 1), nil);
  EXPECT_THROW(oracle::power_by_multiplication(Matrix(2, 3), 2), DimensionMismatch);
}

TEST(PowerSequence, TracksSmallPowers) {
  const Block2x2 m{0.0, 1.0, -0.01, 0.2};
  oracle::PowerSequence<Block2x2> seq(m);
  Block2x2 plain = Block2x2::identity();
  for (int k = 1; k <= 40; ++k) {
    seq.advance();
    plain = plain * m;
    EXPECT_NEAR(oracle::log_spectral_norm(seq), std::log(oracle::spectral_norm(plain)), 1e-12) << k;
  }
  EXPECT_EQ(seq.exponent(), 40u);

  oracle::PowerSequence<Block2x2> nil({0.0, 1.0, 0.0, 0.0});
  nil.advance();
  nil.advance();
  EXPECT_TRUE(nil.is_zero());
  EXPECT_EQ(oracle::log_spectral_norm(nil), -INFINITY);
}

TEST(Eig2x2, Examples) {
  auto [a, b] = oracle::eig_2x2({0.0, 1.0, -1.0, 0.0});
  EXPECT_NEAR(std::abs(a - Complex(0.0, 1.0)) * std::abs(a - Complex(0.0, -1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a + b), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a), 1.0, 1e-15);

  auto [c, d] = oracle::eig_2x2({3.0, 0.0, 0.0, -2.0});
  EXPECT_EQ(std::max(c.real(), d.real()), 3.0);
  EXPECT_EQ(std::min(c.real(), d.real()), -2.0);
  EXPECT_EQ(oracle::spectral_radius_2x2({3.0, 0.0, 0.0, -2.0}), 3.0);
}

TEST(Eig2x2, CharacteristicPolynomialResidual) {
  SplitMix64 rng(8);
  for (int i = 0; i < 500; ++i) {
    const Block2x2 m{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
    const auto [a, b] = oracle::eig_2x2(m);
    for (Complex l : {a, b}) {
      const Complex r = l * l - m.trace() * l + m.determinant();
      const double scale = 1.0 + std::norm(l) + std::abs(m.trace() * l) + std::abs(m.determinant());
      EXPECT_LE(std::abs(r), 1e-12 * scale);
    }
  }
}

TEST(SpectralNorm, AgreesWithPowerIteration) {
  SplitMix64 rng(21);
  for (int i = 0; i < 200; ++i) {
    const ComplexMatrix2 m{Complex(rng.gaussian(), rng.gaussian()), Complex(rng.gaussian(), 0.0),
                           Complex(0.0, rng.gaussian()), Complex(rng.gaussian(), rng.gaussian())};
    const double exact = oracle::spectral_norm(m);
    EXPECT_NEAR(spectral_norm_2x2(m), exact, 1e-8 * exact);
    EXPECT_NEAR(oracle::spectral_norm_power_iteration(m), exact, 1e-8 * exact);
  }
  const Block2x2 real{1.0, 2.0, 3.0, 4.0};
  EXPECT_NEAR(oracle::spectral_norm(real), 5.464985704219043, 1e-14);
}

TEST(SystemMatrix, HeavyBallStructure) {
  const DiagonalSpectrum s({1.0, 100.0});
  const MethodParams p{0.019, 0.85, MethodKind::hbm};
  const Matrix m = oracle::system_matrix(s, p);
  ASSERT_EQ(m.rows(), 4u);
  EXPECT_EQ(m(0, 2), 1.0);
  EXPECT_EQ(m(2, 0), -0.85);
  EXPECT_NEAR(m(2, 2), 1.85 - 0.019, 1e-15);
  EXPECT_NEAR(m(3, 3), 1.85 - 1.9, 1e-15);
  EXPECT_EQ(m(0, 0), 0.0);
}

TEST(SystemMatrix, OneDimensionalIsTheBlock) {
  const DiagonalSpectrum s({2.0});
  const MethodParams p{0.3, 0.4, MethodKind::hbm};
  const Matrix m = oracle::system_matrix(s, p);
  const Block2x2 b = hbm_block(0.6, 0.4);
  EXPECT_EQ(m(0, 0), b.m00);
  EXPECT_EQ(m(0, 1), b.m01);
  EXPECT_EQ(m(1, 0), b.m10);
  EXPECT_NEAR(m(1, 1), b.m11, 1e-15);

  const MethodParams n{0.3, 0.4, MethodKind::nag_compact};
  const Matrix mn = oracle::system_matrix(s, n);
  const Block2x2 bn = nag_block(0.6, 0.4);
  EXPECT_NEAR(mn(1, 0), bn.m10, 1e-15);
  EXPECT_NEAR(mn(1, 1), bn.m11, 1e-15);
}

TEST(FullSystem, FigureOneFiftySteps) {
  const DiagonalSpectrum s({1.0, 100.0});
  const auto r = oracle::full_system_step_equivalence(s, {0.019, 0.85, MethodKind::hbm},
                                                      Vector{1.0, 1.0}, 50);
  EXPECT_TRUE(r.ok);
  EXPECT_LE(r.max_deviation, 1e-10);
  EXPECT_LE(r.max_block_deviation, 1e-10);
}

TEST(FullSystem, AllMethodsRandomSpectra) {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 6);
    const auto s = DiagonalSpectrum::log_uniform(n, 1.0, 1.0 + 200.0 * rng.uniform());
    const Vector x0 = random_unit_vector(n, rng.next());
    const double alpha = 1.5 * rng.uniform() / s.max() + 1e-3;
    const double beta = 0.95 * rng.uniform();
    for (MethodKind kind : {MethodKind::mm, MethodKind::hbm, MethodKind::nag_two_sequence,
                            MethodKind::nag_compact}) {
      const auto r = oracle::full_system_step_equivalence(s, {alpha, beta, kind}, x0, 60);
      EXPECT_TRUE(r.ok) << trial << " " << to_string(kind) << " " << r.max_deviation;
    }
  }
}

TEST(FullSystem, ZeroMomentumIsGradientDescent) {
  const DiagonalSpectrum s({0.5, 2.0, 7.0});
  const Vector x0{1.0, -1.0, 0.5};
  const MethodParams p{0.1, 0.0, MethodKind::hbm};
  EXPECT_TRUE(oracle::full_system_step_equivalence(s, p, x0, 30).ok);
  const Matrix m = oracle::system_matrix(s, p);
  const Matrix m30 = oracle::power_by_multiplication(m, 30);
  for (std::size_t i = 0; i < 3; ++i) {
    const double gd = std::pow(1.0 - 0.1 * s.eigenvalues()[i], 30) * x0[i];
    // x^30 = row block 2 of M^30 (x0; x0); the first block column has zero weight.
    double x = 0.0;
    for (std::size_t j = 0; j < 6; ++j) x += m30(3 + i, j) * x0[j % 3];
    EXPECT_NEAR(x, gd, 1e-14);
  }
}

TEST(FullSystem, DimensionMismatch) {
  EXPECT_THROW(oracle::full_system_step_equivalence(DiagonalSpectrum({1.0, 2.0}),
                                                    {0.1, 0.1, MethodKind::hbm}, Vector{1.0}, 3),
               DimensionMismatch);
}
