#include "momlab/block_spectral_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <string>

#include "momlab/errors.hpp"

namespace momlab {

namespace {

void domain_violation(DomainCheck check, const std::string& message) {
  switch (check) {
    case DomainCheck::strict: throw DomainError(message);
    case DomainCheck::warn: std::clog << "warning: " << message << '\n'; break;
    case DomainCheck::off: break;
  }
}

void check_beta(double beta, DomainCheck check) {
  if (!(beta >= 0.0 && beta < 1.0))
    domain_violation(check, "beta = " + std::to_string(beta) + " outside [0, 1)");
}

void check_hbm_domain(double alpha_i, double beta, DomainCheck check) {
  if (!(alpha_i > 0.0 && alpha_i <= 2.0))
    domain_violation(check, "alpha_i = " + std::to_string(alpha_i) + " outside (0, 2]");
  check_beta(beta, check);
}

void check_nag_domain(double alpha_i, double beta, DomainCheck check) {
  if (!(alpha_i > 0.0))
    domain_violation(check, "alpha_i = " + std::to_string(alpha_i) + " must be positive");
  check_beta(beta, check);
}

/// Roots of lambda^2 - trace lambda + det with gamma on the fixed branch.
/// rho is filled by the caller's formula.
BlockSpectrum roots(BlockKind kind, double alpha_i, double beta, double trace, double det) {
  BlockSpectrum s;
  s.kind = kind;
  s.alpha_i = alpha_i;
  s.beta = beta;
  s.beta_i = trace;
  s.beta_eff = det;

  const double disc = trace * trace - 4.0 * det;
  if (std::abs(disc) <= kDoubleRootTolerance) {
    s.regime = Regime::double_root;
    s.gamma = 0.0;
    s.lambda_plus = s.lambda_minus = 0.5 * trace;
  } else if (disc > 0.0) {
    s.regime = Regime::real_pair;
    const double g = std::sqrt(disc);
    s.gamma = g;
    // Larger-magnitude root first, the other from the product to avoid cancellation.
    const double big = 0.5 * (trace + std::copysign(g, trace));
    const double small = big != 0.0 ? det / big : 0.0;
    if (trace >= 0.0) {
      s.lambda_plus = big;
      s.lambda_minus = small;
    } else {
      s.lambda_plus = small;
      s.lambda_minus = big;
    }
  } else {
    s.regime = Regime::complex_pair;
    const double g = std::sqrt(-disc);
    s.gamma = Complex(0.0, g);
    s.lambda_plus = Complex(0.5 * trace, 0.5 * g);
    s.lambda_minus = Complex(0.5 * trace, -0.5 * g);
  }
  return s;
}

}  // namespace

ComplexMatrix2 to_complex(const Block2x2& m) { return {m.m00, m.m01, m.m10, m.m11}; }

double max_abs_difference(const ComplexMatrix2& a, const ComplexMatrix2& b) {
  return std::max({std::abs(a.m00 - b.m00), std::abs(a.m01 - b.m01), std::abs(a.m10 - b.m10),
                   std::abs(a.m11 - b.m11)});
}

double max_abs_difference(const Block2x2& a, const Block2x2& b) {
  return std::max({std::abs(a.m00 - b.m00), std::abs(a.m01 - b.m01), std::abs(a.m10 - b.m10),
                   std::abs(a.m11 - b.m11)});
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::complex_pair: return "complex_pair";
    case Regime::real_pair: return "real_pair";
    case Regime::double_root: return "double_root";
  }
  return "unknown";
}

Block2x2 hbm_block(double alpha_i, double beta, DomainCheck check) {
  check_hbm_domain(alpha_i, beta, check);
  return {0.0, 1.0, -beta, 1.0 + beta - alpha_i};
}

Block2x2 nag_block(double alpha_i, double beta, DomainCheck check) {
  check_nag_domain(alpha_i, beta, check);
  const double shrink = 1.0 - alpha_i;
  return {0.0, 1.0, -beta * shrink, (1.0 + beta) * shrink};
}

BlockSpectrum analyze_hbm(double alpha_i, double beta, DomainCheck check) {
  check_hbm_domain(alpha_i, beta, check);
  BlockSpectrum s = roots(BlockKind::hbm, alpha_i, beta, 1.0 + beta - alpha_i, beta);
  switch (s.regime) {
    case Regime::complex_pair: s.rho = std::sqrt(beta); break;
    case Regime::double_root: s.rho = 0.5 * std::abs(s.beta_i); break;
    case Regime::real_pair: s.rho = 0.5 * (std::abs(s.beta_i) + s.gamma.real()); break;
  }
  return s;
}

BlockSpectrum analyze_nag(double alpha_i, double beta, DomainCheck check) {
  check_nag_domain(alpha_i, beta, check);
  const double shrink = 1.0 - alpha_i;
  BlockSpectrum s = roots(BlockKind::nag, alpha_i, beta, (1.0 + beta) * shrink, beta * shrink);
  switch (s.regime) {
    case Regime::complex_pair: s.rho = std::sqrt(s.beta_eff); break;
    case Regime::double_root: s.rho = 0.5 * std::abs(s.beta_i); break;
    case Regime::real_pair: s.rho = 0.5 * (std::abs(s.beta_i) + s.gamma.real()); break;
  }
  return s;
}

GramEigenvalues eigvec_gram_eigenvalues(const BlockSpectrum& spec) {
  const double t = spec.beta_i;
  const double d = spec.beta_eff;
  GramEigenvalues mu;
  double gamma_sq = 0.0;  // |gamma|^2 = |det S|^2 = mu_+ mu_-
  if (spec.regime == Regime::complex_pair) {
    const double g = spec.gamma.imag();
    gamma_sq = g * g;
    const double off = std::abs(1.0 + spec.lambda_plus * spec.lambda_plus);
    mu.plus = 1.0 + d + off;
    mu.minus = 1.0 + d - off;
  } else {
    const double g = spec.gamma.real();
    gamma_sq = g * g;
    const double center = 1.0 + 0.25 * (t * t + g * g);
    const double half_gap = 0.5 * std::sqrt(t * t * g * g + 4.0 * (1.0 + d) * (1.0 + d));
    mu.plus = center + half_gap;
    mu.minus = center - half_gap;
  }
  // mu_- from the difference loses all digits near the double root; the
  // product identity mu_+ mu_- = |gamma|^2 does not.
  if (mu.minus < 1e-6 * mu.plus) mu.minus = gamma_sq / mu.plus;
  return mu;
}

double eigvec_condition(const BlockSpectrum& spec) {
  if (spec.regime == Regime::double_root) return std::numeric_limits<double>::infinity();
  const GramEigenvalues mu = eigvec_gram_eigenvalues(spec);
  if (!(mu.minus > 0.0)) return std::numeric_limits<double>::infinity();
  return std::sqrt(mu.plus / mu.minus);
}

SchurFactors schur_factors(const BlockSpectrum& spec) {
  const Complex lp = spec.lambda_plus;
  SchurFactors f;
  f.t = {1.0, 0.0, lp, 1.0};
  f.t_inverse = {1.0, 0.0, -lp, 1.0};
  f.r = {lp, 1.0, 0.0, spec.lambda_minus};
  f.reconstruction_error = max_abs_difference(f.t * f.r * f.t_inverse, to_complex(spec.block()));
  f.cond_t = spectral_norm_2x2(f.t) * spectral_norm_2x2(f.t_inverse);
  return f;
}

namespace {

/// base^0 ... base^count and their moduli.
struct PowerTable {
  std::vector<Complex> value;
  std::vector<double> modulus;
};

PowerTable powers(Complex base, std::size_t count) {
  PowerTable p{std::vector<Complex>(count + 1), std::vector<double>(count + 1)};
  p.value[0] = 1.0;
  p.modulus[0] = 1.0;
  const double m = std::abs(base);
  for (std::size_t i = 1; i <= count; ++i) {
    p.value[i] = p.value[i - 1] * base;
    p.modulus[i] = p.modulus[i - 1] * m;
  }
  return p;
}

/// sum_{t=first}^{last} lp^(t + shift) lm^(k - t + lm_offset), empty when first > last.
struct CrossSum {
  Complex value;
  double magnitude = 0.0;  // sum of |terms|
};

CrossSum cross_sum(const PowerTable& lp, const PowerTable& lm, std::size_t k, long first,
                   long last, std::size_t shift, long lm_offset) {
  double re = 0.0, im = 0.0, magnitude = 0.0;
  for (long t = first; t <= last; ++t) {
    const auto i = static_cast<std::size_t>(t) + shift;
    const auto j = static_cast<std::size_t>(static_cast<long>(k) - t + lm_offset);
    const Complex a = lp.value[i];
    const Complex b = lm.value[j];
    re += a.real() * b.real() - a.imag() * b.imag();
    im += a.real() * b.imag() + a.imag() * b.real();
    magnitude += lp.modulus[i] * lm.modulus[j];
  }
  return {Complex(re, im), magnitude};
}

double real_entry(const CrossSum& s, double sign, const char* name) {
  const double tol = 1e-10 * std::max(1.0, s.magnitude);
  if (std::abs(s.value.imag()) > tol)
    throw ConsistencyError(std::string("block power entry ") + name +
                           " has imaginary part " + std::to_string(s.value.imag()));
  return sign * s.value.real();
}

}  // namespace

ComplexMatrix2 r_power(const BlockSpectrum& spec, std::size_t k) {
  if (k == 0) return ComplexMatrix2::identity();
  const auto lp = powers(spec.lambda_plus, k);
  const auto lm = powers(spec.lambda_minus, k);
  // sum_{l=0}^{k-1} lp^l lm^(k-1-l)
  const CrossSum off = cross_sum(lp, lm, k, 0, static_cast<long>(k) - 1, 0, -1);
  return {lp.value[k], off.value, 0.0, lm.value[k]};
}

Block2x2 block_power(const BlockSpectrum& spec, std::size_t k) {
  if (k == 0) return Block2x2::identity();
  const auto lp = powers(spec.lambda_plus, k + 1);
  const auto lm = powers(spec.lambda_minus, k + 1);
  const long kk = static_cast<long>(k);
  // p = -sum_{t=1}^{k-1} lp^t lm^(k-t)
  const CrossSum p = cross_sum(lp, lm, k, 1, kk - 1, 0, 0);
  // q = sum_{l=0}^{k-1} lp^l lm^(k-1-l)
  const CrossSum q = cross_sum(lp, lm, k, 0, kk - 1, 0, -1);
  // r = -sum_{t=0}^{k-1} lp^(t+1) lm^(k-t)
  const CrossSum r = cross_sum(lp, lm, k, 0, kk - 1, 1, 0);
  // s = sum_{t=0}^{k} lp^t lm^(k-t)
  const CrossSum s = cross_sum(lp, lm, k, 0, kk, 0, 0);
  return {real_entry(p, -1.0, "p"), real_entry(q, 1.0, "q"), real_entry(r, -1.0, "r"),
          real_entry(s, 1.0, "s")};
}

double power_norm_bound(double rho, std::size_t k) {
  const double kd = static_cast<double>(k);
  return 2.0 * std::pow(rho, kd - 1.0) * (kd + 1.0);
}

double power_norm_bound(const BlockSpectrum& spec, std::size_t k) {
  return power_norm_bound(spec.rho, k);
}

double power_norm_lower_bound(double rho, std::size_t k) {
  const double kd = static_cast<double>(k);
  return 2.0 * std::pow(rho, kd + 1.0) * (kd - 1.0);
}

double r_power_norm_bound(double rho, std::size_t k) {
  const double kd = static_cast<double>(k);
  return std::pow(rho, kd - 1.0) * std::sqrt(rho * rho + kd * rho + kd * kd);
}

namespace {

/// c * rho^e in log form, with rho^0 = 1 even for rho = 0.
double log_scaled_power(double c, double rho, double e) {
  if (c <= 0.0) return -std::numeric_limits<double>::infinity();
  if (e == 0.0) return std::log(c);
  if (rho == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(c) + e * std::log(rho);
}

}  // namespace

double log_power_norm_bound(double rho, std::size_t k) {
  const double kd = static_cast<double>(k);
  return log_scaled_power(2.0 * (kd + 1.0), rho, kd - 1.0);
}

double log_power_norm_lower_bound(double rho, std::size_t k) {
  const double kd = static_cast<double>(k);
  return log_scaled_power(2.0 * (kd - 1.0), rho, kd + 1.0);
}

double log_r_power_norm_bound(double rho, std::size_t k) {
  const double kd = static_cast<double>(k);
  return log_scaled_power(kd + 1.0, rho, kd - 1.0);
}

double spectral_norm_2x2(const ComplexMatrix2& raw) {
  const double scale = std::max({std::abs(raw.m00), std::abs(raw.m01), std::abs(raw.m10),
                                 std::abs(raw.m11)});
  if (scale == 0.0) return 0.0;
  const ComplexMatrix2 m{raw.m00 / scale, raw.m01 / scale, raw.m10 / scale, raw.m11 / scale};
  // Gram matrix M^H M = [[a, b], [conj(b), d]].
  const double a = std::norm(m.m00) + std::norm(m.m10);
  const double d = std::norm(m.m01) + std::norm(m.m11);
  const Complex b = std::conj(m.m00) * m.m01 + std::conj(m.m10) * m.m11;
  const double half_diff = 0.5 * (a - d);
  const double lambda_max = 0.5 * (a + d) + std::sqrt(half_diff * half_diff + std::norm(b));
  return scale * std::sqrt(lambda_max);
}

double spectral_norm_2x2(const Block2x2& m) { return spectral_norm_2x2(to_complex(m)); }

double gershgorin_norm_bound(const ComplexMatrix2& triangular) {
  // Whichever off-diagonal is nonzero plays the role of b.
  const double b = std::max(std::abs(triangular.m01), std::abs(triangular.m10));
  const double a = std::max(std::abs(triangular.m00), std::abs(triangular.m11));
  return std::sqrt(a * a + a * b + b * b);
}

double hbm_double_root_beta(double alpha_i) {
  const double r = 1.0 - std::sqrt(alpha_i);
  return r * r;
}

double nag_double_root_beta(double alpha_i) {
  const double s = std::sqrt(alpha_i);
  return (1.0 - s) / (1.0 + s);
}

namespace {

std::vector<GridPoint> make_grid(double alpha_step, double alpha_max,
                                 double (*curve_beta)(double root)) {
  if (!(alpha_step > 0.0)) throw DomainError("grid step must be positive");
  const auto count = static_cast<std::size_t>(std::llround(alpha_max / alpha_step));
  std::vector<GridPoint> grid;
  grid.reserve(count * 22);
  for (std::size_t j = 1; j <= count; ++j) {
    const double a = alpha_max * static_cast<double>(j) / static_cast<double>(count);
    for (int b = 0; b < 20; ++b) grid.push_back({a, 0.05 * b});
  }
  // Curve points at dyadic sqrt(alpha_i): alpha_i = s^2 is then exact, and
  // for hbm so is the whole block, making these true double roots.
  const double h = std::exp2(std::floor(std::log2(alpha_step)));
  const double root_max = std::sqrt(alpha_max);
  for (double s = h; s <= root_max; s += h) {
    const double beta = curve_beta(s);
    if (beta >= 0.0 && beta < 1.0) grid.push_back({s * s, beta});
  }
  return grid;
}

double hbm_curve(double s) { return (1.0 - s) * (1.0 - s); }
double nag_curve(double s) { return (1.0 - s) / (1.0 + s); }

}  // namespace

std::vector<GridPoint> hbm_parameter_grid(double alpha_step) {
  return make_grid(alpha_step, 2.0, hbm_curve);
}

std::vector<GridPoint> nag_parameter_grid(double alpha_step) {
  return make_grid(alpha_step, 1.0, nag_curve);
}

}  // namespace momlab
