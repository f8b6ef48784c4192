#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace momlab {

using Complex = std::complex<double>;

/// 2x2 matrix, stored as named entries.
template <typename T>
struct Matrix2 {
  T m00{}, m01{}, m10{}, m11{};

  static Matrix2 identity() { return {T(1), T(0), T(0), T(1)}; }

  T trace() const { return m00 + m11; }
  T determinant() const { return m00 * m11 - m01 * m10; }

  friend Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
  }
  friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

using Block2x2 = Matrix2<double>;
using ComplexMatrix2 = Matrix2<Complex>;

ComplexMatrix2 to_complex(const Block2x2& m);
double max_abs_difference(const ComplexMatrix2& a, const ComplexMatrix2& b);
double max_abs_difference(const Block2x2& a, const Block2x2& b);

/// Which recursion the block comes from.
enum class BlockKind { hbm, nag };

enum class Regime { complex_pair, real_pair, double_root };
std::string_view to_string(Regime regime);

/// What happens when alpha_i or beta lie outside the analysed domain.
enum class DomainCheck { strict, warn, off };

/// |beta_i^2 - 4 beta| at or below this is treated as a double root.
inline constexpr double kDoubleRootTolerance = 1e-12;

/// Closed-form spectral data of one 2x2 block [[0, 1], [-det, trace]].
/// For hbm: trace = beta_i = 1 + beta - alpha_i, det = beta.
/// For nag: trace = (1 + beta)(1 - alpha_i), det = beta (1 - alpha_i).
struct BlockSpectrum {
  BlockKind kind = BlockKind::hbm;
  double alpha_i = 0.0;
  double beta = 0.0;
  double beta_i = 0.0;    // trace
  double beta_eff = 0.0;  // determinant, lambda_+ * lambda_-
  Complex gamma;          // sqrt(beta_i^2 - 4 beta_eff): real >= 0 or positive imaginary
  Complex lambda_plus;
  Complex lambda_minus;
  double rho = 0.0;
  Regime regime = Regime::real_pair;

  Block2x2 block() const { return {0.0, 1.0, -beta_eff, beta_i}; }
};

/// Requires alpha_i in (0, 2] and beta in [0, 1) unless check relaxes it.
Block2x2 hbm_block(double alpha_i, double beta, DomainCheck check = DomainCheck::strict);
/// Requires alpha_i > 0 and beta in [0, 1) unless check relaxes it.
Block2x2 nag_block(double alpha_i, double beta, DomainCheck check = DomainCheck::strict);

BlockSpectrum analyze_hbm(double alpha_i, double beta, DomainCheck check = DomainCheck::strict);
BlockSpectrum analyze_nag(double alpha_i, double beta, DomainCheck check = DomainCheck::strict);

/// cond_2 of the eigenvector matrix S = [[1, 1], [lambda_+, lambda_-]].
/// Returns +infinity at a double root, where S is singular.
double eigvec_condition(const BlockSpectrum& spec);

/// Eigenvalues mu_+ >= mu_- of S^H S (mu_- may be 0 at a double root).
struct GramEigenvalues {
  double plus = 0.0;
  double minus = 0.0;
};
GramEigenvalues eigvec_gram_eigenvalues(const BlockSpectrum& spec);

/// block = T R T^-1 with T = [[1, 0], [lambda_+, 1]], R = [[lambda_+, 1], [0, lambda_-]].
struct SchurFactors {
  ComplexMatrix2 t;
  ComplexMatrix2 t_inverse;
  ComplexMatrix2 r;
  double reconstruction_error = 0.0;  // max |T R T^-1 - block|
  double cond_t = 0.0;                // ||T||_2 ||T^-1||_2
};
SchurFactors schur_factors(const BlockSpectrum& spec);

/// R^k; the off-diagonal cross sum is summed term by term, so it stays
/// valid at the double root.
ComplexMatrix2 r_power(const BlockSpectrum& spec, std::size_t k);

/// block^k = (p q; r s) from the eigenvalue cross sums. Throws
/// ConsistencyError if an entry keeps an imaginary part above 1e-10.
Block2x2 block_power(const BlockSpectrum& spec, std::size_t k);

/// 2 rho^(k-1) (k+1).
double power_norm_bound(double rho, std::size_t k);
double power_norm_bound(const BlockSpectrum& spec, std::size_t k);
/// 2 rho^(k+1) (k-1): a lower bound on ||block^k||_2 at a double root.
double power_norm_lower_bound(double rho, std::size_t k);
/// rho^(k-1) sqrt(rho^2 + k rho + k^2), bound on ||R^k||_2.
double r_power_norm_bound(double rho, std::size_t k);

/// Natural logs of the three bounds above; -inf where the bound is 0.
double log_power_norm_bound(double rho, std::size_t k);
double log_power_norm_lower_bound(double rho, std::size_t k);
/// log(rho^(k-1) (k+1)), the simplified bound on ||R^k||_2.
double log_r_power_norm_bound(double rho, std::size_t k);

/// Largest singular value from the 2x2 Gram matrix eigenvalues.
double spectral_norm_2x2(const ComplexMatrix2& m);
double spectral_norm_2x2(const Block2x2& m);

/// sqrt(|a|^2 + |a b| + |b|^2) for triangular [[a, b], [0, c]] (or its
/// transpose), with a the diagonal entry of larger magnitude.
double gershgorin_norm_bound(const ComplexMatrix2& triangular);

struct GridPoint {
  double alpha_i = 0.0;
  double beta = 0.0;
};

/// alpha_i = step * j on (0, 2], beta in {0, 0.05, ..., 0.95}, plus the
/// double-root curve beta = (1 - sqrt(alpha_i))^2 sampled at
/// sqrt(alpha_i) = j * 2^-m, the largest power of two not above step.
std::vector<GridPoint> hbm_parameter_grid(double alpha_step = 0.001);
/// alpha_i = step * j on (0, 1], same beta values, plus the nag
/// double-root curve beta = (1 - sqrt(alpha_i)) / (1 + sqrt(alpha_i)).
std::vector<GridPoint> nag_parameter_grid(double alpha_step = 0.001);

/// beta for which the hbm block at alpha_i has a double eigenvalue.
double hbm_double_root_beta(double alpha_i);
double nag_double_root_beta(double alpha_i);

}  // namespace momlab
