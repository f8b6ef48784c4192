#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "momlab/linalg.hpp"

namespace momlab {

/// Positive eigenvalues of a diagonal Hessian, sorted ascending.
class DiagonalSpectrum {
 public:
  /// Throws InvalidSpectrum on an empty list or a non-positive entry.
  explicit DiagonalSpectrum(std::vector<double> eigenvalues);

  /// n values: the lower half at `lower`, the upper half at `upper`.
  static DiagonalSpectrum two_point(std::size_t n, double lower, double upper);
  /// n geometrically spaced values with both endpoints included exactly.
  static DiagonalSpectrum log_uniform(std::size_t n, double lower, double upper);

  const std::vector<double>& eigenvalues() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double min() const noexcept { return values_.front(); }
  double max() const noexcept { return values_.back(); }

 private:
  std::vector<double> values_;
};

struct RotatedProblem;

/// Bounds 0 < lower <= min eig, upper >= max eig.
struct EigenBounds {
  double lower = 1.0;
  double upper = 1.0;

  /// Validates 0 < lower <= upper.
  static EigenBounds make(double lower, double upper);
  static EigenBounds of(const DiagonalSpectrum& spectrum) {
    return make(spectrum.min(), spectrum.max());
  }

  double cond_bar() const noexcept { return upper / lower; }
};

/// f(x) = 1/2 x^T H x - b^T x with H symmetric positive definite.
/// Immutable after construction.
class QuadraticProblem {
 public:
  /// Accepts an arbitrary matrix; rejects asymmetric or indefinite H by
  /// Gaussian elimination (all pivots must be positive).
  static QuadraticProblem from_matrix(Matrix hessian, Vector linear_term);

  std::size_t dimension() const noexcept { return linear_.size(); }
  const Matrix& hessian() const noexcept { return hessian_; }
  const Vector& linear_term() const noexcept { return linear_; }
  /// x* recorded at construction (exact for diagonal and rotated problems).
  const Vector& solution() const noexcept { return solution_; }

  double value(std::span<const double> x) const;

 private:
  friend QuadraticProblem make_diagonal_problem(const DiagonalSpectrum&);
  friend RotatedProblem make_rotated_problem(const DiagonalSpectrum&, std::uint64_t,
                                            std::span<const double>);

  QuadraticProblem(Matrix h, Vector b, Vector x_star)
      : hessian_(std::move(h)), linear_(std::move(b)), solution_(std::move(x_star)) {}

  Matrix hessian_;
  Vector linear_;
  Vector solution_;
};

/// H = Q^T D Q, b = H shift, so x* = shift.
struct RotatedProblem {
  QuadraticProblem problem;
  Matrix rotation;  // Q, orthogonal
};

/// H = diag(spectrum), b = 0.
QuadraticProblem make_diagonal_problem(const DiagonalSpectrum& spectrum);

/// Q from a seeded Gaussian fill orthonormalized by modified Gram-Schmidt.
RotatedProblem make_rotated_problem(const DiagonalSpectrum& spectrum, std::uint64_t seed,
                                    std::span<const double> shift);

/// Seeded random orthogonal n x n matrix (rows orthonormal).
Matrix random_orthogonal(std::size_t n, std::uint64_t seed);

/// H x - b.
Vector gradient(const QuadraticProblem& p, std::span<const double> x);

/// Solves H x = b by elimination with partial pivoting.
Vector minimizer(const QuadraticProblem& p);

/// Throws SingularMatrix when a pivot falls below 1e-12 * max|A|.
Vector solve_linear_system(Matrix a, Vector rhs);

/// max_i H_ii + sum_{j != i} |H_ij|, an upper bound on lambda_max(H).
double gershgorin_upper(const QuadraticProblem& p);

}  // namespace momlab
