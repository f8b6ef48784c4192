#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>

#include "momlab/block_spectral_analysis.hpp"
#include "momlab/linalg.hpp"
#include "momlab/momentum_methods.hpp"
#include "momlab/quadratic_problems.hpp"

/// Brute-force reference computations. Nothing here calls into the
/// closed-form analysis; keep it that way so a formula bug cannot be
/// mirrored in its own check.
namespace momlab::oracle {

/// m^k by k - 1 successive multiplications; k = 0 gives the identity.
Matrix power_by_multiplication(const Matrix& m, std::size_t k);
Block2x2 power_by_multiplication(const Block2x2& m, std::size_t k);

/// Successive powers m, m^2, ... by repeated multiplication, with each
/// product renormalized by its largest entry so that very small or large
/// powers keep full precision. The power is exp(log_scale) * mantissa.
template <typename M>
class PowerSequence {
 public:
  explicit PowerSequence(const M& base) : base_(base), mantissa_(M::identity()) {}

  void advance() {
    mantissa_ = mantissa_ * base_;
    ++exponent_;
    const double m = std::max({std::abs(mantissa_.m00), std::abs(mantissa_.m01),
                               std::abs(mantissa_.m10), std::abs(mantissa_.m11)});
    if (m > 0.0) {
      log_scale_ += std::log(m);
      mantissa_ = M{mantissa_.m00 / m, mantissa_.m01 / m, mantissa_.m10 / m, mantissa_.m11 / m};
    } else {
      zero_ = true;
    }
  }

  std::size_t exponent() const noexcept { return exponent_; }
  const M& mantissa() const noexcept { return mantissa_; }
  double log_scale() const noexcept { return log_scale_; }
  bool is_zero() const noexcept { return zero_; }

 private:
  M base_;
  M mantissa_;
  std::size_t exponent_ = 0;
  double log_scale_ = 0.0;
  bool zero_ = false;
};

/// Roots of lambda^2 - tr(m) lambda + det(m) by the quadratic formula.
std::pair<Complex, Complex> eig_2x2(const Block2x2& m);
double spectral_radius_2x2(const Block2x2& m);

/// Largest singular value from ||m||_F and |det m|:
/// sigma_max^2 = (F^2 + sqrt(F^4 - 4 |det|^2)) / 2.
double spectral_norm(const Block2x2& m);
double spectral_norm(const ComplexMatrix2& m);

/// log ||m^k||_2 for the current element of a power sequence; -inf once zero.
template <typename M>
double log_spectral_norm(const PowerSequence<M>& seq) {
  if (seq.is_zero()) return -std::numeric_limits<double>::infinity();
  return seq.log_scale() + std::log(spectral_norm(seq.mantissa()));
}

/// sqrt of the dominant eigenvalue of m^H m found by power iteration.
double spectral_norm_power_iteration(const ComplexMatrix2& m, std::size_t iterations = 500);

/// The 2n x 2n system matrix [[0, I], [-B, A]] acting on (x^{k-1}; x^k):
/// hbm/mm: B = beta I, A = (1 + beta) I - alpha D;
/// nag:    B = beta (I - alpha D), A = (1 + beta)(I - alpha D).
Matrix system_matrix(const DiagonalSpectrum& spectrum, const MethodParams& params);

struct EquivalenceCheck {
  bool ok = false;
  double max_deviation = 0.0;        // system powers vs momentum_methods trajectory
  double max_block_deviation = 0.0;  // per-coordinate 2x2 blocks vs system powers
};

/// Reproduces k steps of `params.kind` on diag(spectrum) through powers of
/// the system matrix. hbm/mm start from (x^0; x^0); the nag forms start
/// from (x^0; x^1) with x^1 = (I - (1 + beta) alpha D) x^0, since their
/// first step zeroes the previous gradient.
EquivalenceCheck full_system_step_equivalence(const DiagonalSpectrum& spectrum,
                                              const MethodParams& params,
                                              std::span<const double> x0, std::size_t k,
                                              double tolerance = 1e-10);

}  // namespace momlab::oracle
