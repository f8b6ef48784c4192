#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "momlab/errors.hpp"
#include "momlab/linalg.hpp"
#include "momlab/quadratic_problems.hpp"

namespace momlab {

/// The iterations differ only in bookkeeping: mm and hbm produce the same
/// iterates, as do the two nag forms.
enum class MethodKind {
  mm,                ///< x+ = x + a m,  m+ = b m - grad f(x+)
  hbm,               ///< x+ = x - a grad f(x) + b (x - x_prev)
  nag_two_sequence,  ///< y+ = x - a grad f(x),  x+ = y+ + b (y+ - y)
  nag_compact,       ///< hbm plus b times the change of the descent step
};

std::string_view to_string(MethodKind kind);
std::optional<MethodKind> parse_method_kind(std::string_view name);
bool is_nesterov(MethodKind kind);

/// Fixed step length alpha > 0 and momentum beta in [0, 1).
struct MethodParams {
  double alpha = 0.0;
  double beta = 0.0;
  MethodKind kind = MethodKind::hbm;

  /// Throws DomainError unless alpha > 0 and 0 <= beta < 1.
  void validate() const;
};

/// Smallest bound on cond_bar for which the complexity theorems are claimed.
inline constexpr double kTheoremMinCond = 28.0;

/// alpha = 2 / upper, beta = (1 - sqrt(2 / cond_bar))^2, kind = hbm.
MethodParams theorem1_params(const EigenBounds& bounds, Hypotheses h = Hypotheses::enforce);

/// alpha = 1 / upper, beta = (1 - sqrt(1/cond))^2 / (1 - 1/cond), kind = nag_two_sequence.
MethodParams theorem2_params(const EigenBounds& bounds, Hypotheses h = Hypotheses::enforce);

/// Iteration state. Only the vectors the method kind uses are populated:
/// x_prev for hbm/nag_compact, m for mm, y for nag_two_sequence, grad_prev
/// for nag_compact (empty before the first step, meaning grad f(x^-1) = 0).
struct IterState {
  Vector x_prev;
  Vector x;
  Vector m;
  Vector y;
  Vector grad_prev;
  std::size_t k = 0;
};

/// x^-1 := x^0, m^0 := -grad f(x^0), y^0 := x^0.
IterState initial_state(const QuadraticProblem& p, const MethodParams& params,
                        std::span<const double> x0);

/// One step of the selected recursion.
IterState step(const QuadraticProblem& p, const MethodParams& params, const IterState& s);

struct Trajectory {
  std::vector<Vector> iterates;      // x^0 ... x^K
  std::vector<double> distances;     // ||x^k - x*||_2
  std::vector<double> averaged_distances;  // ||(x^{k-1} + x^k)/2 - x*||_2, x^-1 := x^0
  Vector averaged_final;             // (x^{K-1} + x^K) / 2

  std::size_t num_steps() const noexcept { return iterates.empty() ? 0 : iterates.size() - 1; }
  /// (x^{k-1} + x^k) / 2 for 1 <= k <= K.
  Vector averaged_at(std::size_t k) const;
};

/// Runs exactly num_steps (>= 1) steps; distances are measured against
/// p.solution().
Trajectory run(const QuadraticProblem& p, const MethodParams& params, std::span<const double> x0,
               std::size_t num_steps);

}  // namespace momlab
