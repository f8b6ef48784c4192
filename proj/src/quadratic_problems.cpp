#include "momlab/quadratic_problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "momlab/errors.hpp"
#include "momlab/random.hpp"

namespace momlab {

namespace {

constexpr double kPivotTolerance = 1e-12;

Vector zeros(std::size_t n) { return Vector(n, 0.0); }

}  // namespace

DiagonalSpectrum::DiagonalSpectrum(std::vector<double> eigenvalues)
    : values_(std::move(eigenvalues)) {
  if (values_.empty()) throw InvalidSpectrum("spectrum is empty");
  for (double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvalidSpectrum("eigenvalue " + std::to_string(v) + " is not positive and finite");
  }
  std::sort(values_.begin(), values_.end());
}

DiagonalSpectrum DiagonalSpectrum::two_point(std::size_t n, double lower, double upper) {
  if (n == 0) throw InvalidSpectrum("spectrum is empty");
  std::vector<double> v(n, upper);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) v[i] = lower;
  return DiagonalSpectrum(std::move(v));
}

DiagonalSpectrum DiagonalSpectrum::log_uniform(std::size_t n, double lower, double upper) {
  if (n == 0) throw InvalidSpectrum("spectrum is empty");
  if (!(lower > 0.0) || !(upper >= lower))
    throw InvalidSpectrum("log-uniform spectrum needs 0 < lower <= upper");
  std::vector<double> v(n, lower);
  if (n > 1) {
    const double ratio = std::log(upper / lower);
    for (std::size_t i = 1; i + 1 < n; ++i)
      v[i] = lower * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n - 1));
    v[n - 1] = upper;
  }
  return DiagonalSpectrum(std::move(v));
}

EigenBounds EigenBounds::make(double lower, double upper) {
  if (!(lower > 0.0) || !(upper >= lower) || !std::isfinite(upper))
    throw InvalidSpectrum("eigenvalue bounds need 0 < lower <= upper");
  return EigenBounds{lower, upper};
}

QuadraticProblem QuadraticProblem::from_matrix(Matrix hessian, Vector linear_term) {
  const std::size_t n = hessian.rows();
  if (n == 0 || hessian.cols() != n) throw DimensionMismatch(n, hessian.cols());
  if (linear_term.size() != n) throw DimensionMismatch(n, linear_term.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (hessian(i, j) != hessian(j, i))
        throw NotPositiveDefinite("hessian is not symmetric at (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ")");

  // Symmetric Gaussian elimination without pivoting succeeds with positive
  // pivots exactly when the matrix is positive definite.
  Matrix work = hessian;
  const double scale = hessian.max_abs();
  for (std::size_t k = 0; k < n; ++k) {
    const double pivot = work(k, k);
    if (!(pivot > kPivotTolerance * scale))
      throw NotPositiveDefinite("pivot " + std::to_string(k) + " is not positive");
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = work(i, k) / pivot;
      for (std::size_t j = k; j < n; ++j) work(i, j) -= f * work(k, j);
    }
  }

  Vector x_star = solve_linear_system(hessian, linear_term);
  return QuadraticProblem(std::move(hessian), std::move(linear_term), std::move(x_star));
}

double QuadraticProblem::value(std::span<const double> x) const {
  const Vector hx = hessian_ * x;
  return 0.5 * dot(x, hx) - dot(linear_, x);
}

QuadraticProblem make_diagonal_problem(const DiagonalSpectrum& spectrum) {
  const std::size_t n = spectrum.size();
  return QuadraticProblem(Matrix::diagonal(spectrum.eigenvalues()), zeros(n), zeros(n));
}

Matrix random_orthogonal(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Matrix q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = rng.gaussian();

  // Modified Gram-Schmidt over rows.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double proj = dot(q.row(i), q.row(j));
      for (std::size_t c = 0; c < n; ++c) q(i, c) -= proj * q(j, c);
    }
    const double nrm = norm2(q.row(i));
    if (nrm < 1e-12) throw SingularMatrix("degenerate Gaussian fill in orthogonalization");
    for (std::size_t c = 0; c < n; ++c) q(i, c) /= nrm;
  }
  return q;
}

RotatedProblem make_rotated_problem(const DiagonalSpectrum& spectrum, std::uint64_t seed,
                                    std::span<const double> shift) {
  const std::size_t n = spectrum.size();
  if (shift.size() != n) throw DimensionMismatch(n, shift.size());

  Matrix q = random_orthogonal(n, derive_seed(seed, Stream::rotation));
  const auto& d = spectrum.eigenvalues();

  // H = Q^T D Q; upper triangle computed once and mirrored to keep H exactly symmetric.
  Matrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t l = 0; l < n; ++l) s += q(l, i) * d[l] * q(l, j);
      h(i, j) = s;
      h(j, i) = s;
    }

  Vector b = h * shift;
  Vector x_star(shift.begin(), shift.end());
  return RotatedProblem{QuadraticProblem(std::move(h), std::move(b), std::move(x_star)),
                        std::move(q)};
}

Vector gradient(const QuadraticProblem& p, std::span<const double> x) {
  if (x.size() != p.dimension()) throw DimensionMismatch(p.dimension(), x.size());
  Vector g = p.hessian() * x;
  const Vector& b = p.linear_term();
  for (std::size_t i = 0; i < g.size(); ++i) g[i] -= b[i];
  return g;
}

Vector minimizer(const QuadraticProblem& p) {
  return solve_linear_system(p.hessian(), p.linear_term());
}

Vector solve_linear_system(Matrix a, Vector rhs) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionMismatch(n, a.cols());
  if (rhs.size() != n) throw DimensionMismatch(n, rhs.size());
  const double threshold = kPivotTolerance * a.max_abs();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (!(std::abs(a(piv, k)) > threshold) || threshold == 0.0)
      throw SingularMatrix("matrix is numerically singular at column " + std::to_string(k));
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(rhs[k], rhs[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      rhs[i] -= f * rhs[k];
    }
  }

  Vector x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

double gershgorin_upper(const QuadraticProblem& p) {
  const Matrix& h = p.hessian();
  double bound = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < h.rows(); ++i) {
    double r = h(i, i);
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (j != i) r += std::abs(h(i, j));
    bound = std::max(bound, r);
  }
  return bound;
}

}  // namespace momlab
