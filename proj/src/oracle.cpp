#include "momlab/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "momlab/errors.hpp"

namespace momlab::oracle {

Matrix power_by_multiplication(const Matrix& m, std::size_t k) {
  if (m.rows() != m.cols()) throw DimensionMismatch(m.rows(), m.cols());
  if (k == 0) return Matrix::identity(m.rows());
  Matrix p = m;
  for (std::size_t i = 1; i < k; ++i) p = p * m;
  return p;
}

Block2x2 power_by_multiplication(const Block2x2& m, std::size_t k) {
  if (k == 0) return Block2x2::identity();
  Block2x2 p = m;
  for (std::size_t i = 1; i < k; ++i) p = p * m;
  return p;
}

std::pair<Complex, Complex> eig_2x2(const Block2x2& m) {
  const double tr = m.m00 + m.m11;
  const double det = m.m00 * m.m11 - m.m01 * m.m10;
  const Complex root = std::sqrt(Complex(tr * tr - 4.0 * det, 0.0));
  return {0.5 * (tr + root), 0.5 * (tr - root)};
}

double spectral_radius_2x2(const Block2x2& m) {
  const auto [a, b] = eig_2x2(m);
  return std::max(std::abs(a), std::abs(b));
}

double spectral_norm(const ComplexMatrix2& raw) {
  // Scaled by the largest entry so F^4 cannot underflow for tiny powers.
  const double scale = std::max({std::abs(raw.m00), std::abs(raw.m01), std::abs(raw.m10),
                                 std::abs(raw.m11)});
  if (scale == 0.0) return 0.0;
  const ComplexMatrix2 m{raw.m00 / scale, raw.m01 / scale, raw.m10 / scale, raw.m11 / scale};
  const double f2 = std::norm(m.m00) + std::norm(m.m01) + std::norm(m.m10) + std::norm(m.m11);
  const double det = std::abs(m.m00 * m.m11 - m.m01 * m.m10);
  const double disc = std::max(0.0, f2 * f2 - 4.0 * det * det);
  return scale * std::sqrt(0.5 * (f2 + std::sqrt(disc)));
}

double spectral_norm(const Block2x2& m) {
  return spectral_norm(ComplexMatrix2{m.m00, m.m01, m.m10, m.m11});
}

double spectral_norm_power_iteration(const ComplexMatrix2& m, std::size_t iterations) {
  // g = m^H m, applied to a fixed start vector that is not an eigenvector
  // for any of the structured test matrices.
  const ComplexMatrix2 mh{std::conj(m.m00), std::conj(m.m10), std::conj(m.m01), std::conj(m.m11)};
  const ComplexMatrix2 g = mh * m;
  Complex v0(1.0, 0.0), v1(0.618, 0.318);
  double lambda = 0.0;
  for (std::size_t i = 0; i < iterations; ++i) {
    const Complex w0 = g.m00 * v0 + g.m01 * v1;
    const Complex w1 = g.m10 * v0 + g.m11 * v1;
    const double nrm = std::sqrt(std::norm(w0) + std::norm(w1));
    if (nrm == 0.0) return 0.0;
    const double prev = std::sqrt(std::norm(v0) + std::norm(v1));
    lambda = nrm / prev;
    v0 = w0 / nrm;
    v1 = w1 / nrm;
  }
  return std::sqrt(lambda);
}

Matrix system_matrix(const DiagonalSpectrum& spectrum, const MethodParams& params) {
  const auto& d = spectrum.eigenvalues();
  const std::size_t n = d.size();
  const double a = params.alpha;
  const double b = params.beta;
  Matrix m(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, n + i) = 1.0;
    if (is_nesterov(params.kind)) {
      const double shrink = 1.0 - a * d[i];
      m(n + i, i) = -b * shrink;
      m(n + i, n + i) = (1.0 + b) * shrink;
    } else {
      m(n + i, i) = -b;
      m(n + i, n + i) = 1.0 + b - a * d[i];
    }
  }
  return m;
}

EquivalenceCheck full_system_step_equivalence(const DiagonalSpectrum& spectrum,
                                              const MethodParams& params,
                                              std::span<const double> x0, std::size_t k,
                                              double tolerance) {
  const auto& d = spectrum.eigenvalues();
  const std::size_t n = d.size();
  if (x0.size() != n) throw DimensionMismatch(n, x0.size());

  const QuadraticProblem problem = make_diagonal_problem(spectrum);
  const Trajectory traj = run(problem, params, x0, std::max<std::size_t>(k, 1));

  // Start vector and number of system applications for each family.
  Vector z(2 * n);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = x0[i];
    if (is_nesterov(params.kind)) {
      z[n + i] = (1.0 - (1.0 + params.beta) * params.alpha * d[i]) * x0[i];
    } else {
      z[n + i] = x0[i];
    }
  }
  if (is_nesterov(params.kind)) offset = 1;

  const Matrix m = system_matrix(spectrum, params);
  EquivalenceCheck check;
  double scale = 0.0;
  for (double v : x0) scale = std::max(scale, std::abs(v));
  scale = std::max(scale, 1.0);

  Matrix mp = Matrix::identity(2 * n);
  for (std::size_t step = offset; step <= k; ++step) {
    const std::size_t applications = step - offset;
    if (applications > 0) mp = mp * m;
    const Vector zk = mp * z;
    // zk = (x^{step-1}; x^step) for hbm, shifted by one for nag.
    for (std::size_t i = 0; i < n; ++i) {
      check.max_deviation =
          std::max(check.max_deviation, std::abs(zk[n + i] - traj.iterates[step][i]));
      if (step >= 1)
        check.max_deviation =
            std::max(check.max_deviation, std::abs(zk[i] - traj.iterates[step - 1][i]));

      // Block separability: coordinate i evolves by its own 2x2 block.
      const Block2x2 block{m(i, i), m(i, n + i), m(n + i, i), m(n + i, n + i)};
      const Block2x2 bp = power_by_multiplication(block, applications);
      const double lo = bp.m00 * z[i] + bp.m01 * z[n + i];
      const double hi = bp.m10 * z[i] + bp.m11 * z[n + i];
      check.max_block_deviation = std::max(
          {check.max_block_deviation, std::abs(lo - zk[i]), std::abs(hi - zk[n + i])});
    }
  }
  check.ok = check.max_deviation <= tolerance * scale &&
             check.max_block_deviation <= tolerance * scale;
  return check;
}

}  // namespace momlab::oracle
