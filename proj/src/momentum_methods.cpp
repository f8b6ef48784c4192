#include "momlab/momentum_methods.hpp"

#include <cmath>
#include <string>

namespace momlab {

std::string_view to_string(MethodKind kind) {
  switch (kind) {
    case MethodKind::mm: return "mm";
    case MethodKind::hbm: return "hbm";
    case MethodKind::nag_two_sequence: return "nag";
    case MethodKind::nag_compact: return "nag_compact";
  }
  return "unknown";
}

std::optional<MethodKind> parse_method_kind(std::string_view name) {
  if (name == "mm") return MethodKind::mm;
  if (name == "hbm") return MethodKind::hbm;
  if (name == "nag" || name == "nag_two_sequence") return MethodKind::nag_two_sequence;
  if (name == "nag_compact") return MethodKind::nag_compact;
  return std::nullopt;
}

bool is_nesterov(MethodKind kind) {
  return kind == MethodKind::nag_two_sequence || kind == MethodKind::nag_compact;
}

void MethodParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("step length must satisfy alpha > 0, got " + std::to_string(alpha));
  if (!(beta >= 0.0 && beta < 1.0))
    throw DomainError("momentum must satisfy 0 <= beta < 1, got " + std::to_string(beta));
}

namespace {

void check_theorem_cond(const EigenBounds& bounds, Hypotheses h) {
  if (h == Hypotheses::enforce && !(bounds.cond_bar() >= kTheoremMinCond))
    throw PreconditionError("cond_bar >= 28 (cond_bar = " + std::to_string(bounds.cond_bar()) + ")",
                            kTheoremMinCond);
}

}  // namespace

MethodParams theorem1_params(const EigenBounds& bounds, Hypotheses h) {
  check_theorem_cond(bounds, h);
  const double root = 1.0 - std::sqrt(2.0 / bounds.cond_bar());
  return MethodParams{2.0 / bounds.upper, root * root, MethodKind::hbm};
}

MethodParams theorem2_params(const EigenBounds& bounds, Hypotheses h) {
  check_theorem_cond(bounds, h);
  const double alpha_low = 1.0 / bounds.cond_bar();
  const double root = 1.0 - std::sqrt(alpha_low);
  return MethodParams{1.0 / bounds.upper, root * root / (1.0 - alpha_low),
                      MethodKind::nag_two_sequence};
}

IterState initial_state(const QuadraticProblem& p, const MethodParams& params,
                        std::span<const double> x0) {
  if (x0.size() != p.dimension()) throw DimensionMismatch(p.dimension(), x0.size());
  IterState s;
  s.x.assign(x0.begin(), x0.end());
  switch (params.kind) {
    case MethodKind::mm: {
      s.m = gradient(p, x0);
      for (double& v : s.m) v = -v;
      break;
    }
    case MethodKind::hbm:
    case MethodKind::nag_compact:
      s.x_prev = s.x;
      break;
    case MethodKind::nag_two_sequence:
      s.y = s.x;
      break;
  }
  return s;
}

IterState step(const QuadraticProblem& p, const MethodParams& params, const IterState& s) {
  const std::size_t n = p.dimension();
  if (s.x.size() != n) throw DimensionMismatch(n, s.x.size());
  const double a = params.alpha;
  const double b = params.beta;

  IterState next;
  next.k = s.k + 1;
  switch (params.kind) {
    case MethodKind::mm: {
      if (s.m.size() != n) throw DimensionMismatch(n, s.m.size());
      next.x.resize(n);
      for (std::size_t i = 0; i < n; ++i) next.x[i] = s.x[i] + a * s.m[i];
      next.m = gradient(p, next.x);
      for (std::size_t i = 0; i < n; ++i) next.m[i] = b * s.m[i] - next.m[i];
      break;
    }
    case MethodKind::hbm: {
      if (s.x_prev.size() != n) throw DimensionMismatch(n, s.x_prev.size());
      const Vector g = gradient(p, s.x);
      next.x.resize(n);
      for (std::size_t i = 0; i < n; ++i)
        next.x[i] = s.x[i] - a * g[i] + b * (s.x[i] - s.x_prev[i]);
      next.x_prev = s.x;
      break;
    }
    case MethodKind::nag_two_sequence: {
      if (s.y.size() != n) throw DimensionMismatch(n, s.y.size());
      const Vector g = gradient(p, s.x);
      next.y.resize(n);
      next.x.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        next.y[i] = s.x[i] - a * g[i];
        next.x[i] = next.y[i] + b * (next.y[i] - s.y[i]);
      }
      break;
    }
    case MethodKind::nag_compact: {
      if (s.x_prev.size() != n) throw DimensionMismatch(n, s.x_prev.size());
      const bool first = s.grad_prev.empty();
      if (!first && s.grad_prev.size() != n) throw DimensionMismatch(n, s.grad_prev.size());
      const Vector g = gradient(p, s.x);
      next.x.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double g_prev = first ? 0.0 : s.grad_prev[i];
        next.x[i] = s.x[i] - a * g[i] + b * (s.x[i] - s.x_prev[i] - a * (g[i] - g_prev));
      }
      next.x_prev = s.x;
      next.grad_prev = g;
      break;
    }
  }
  return next;
}

namespace {

Vector midpoint(const Vector& a, const Vector& b) {
  Vector m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = 0.5 * (a[i] + b[i]);
  return m;
}

}  // namespace

Vector Trajectory::averaged_at(std::size_t k) const {
  if (k == 0 || k >= iterates.size())
    throw DomainError("averaged iterate needs 1 <= k <= K, got k = " + std::to_string(k));
  return midpoint(iterates[k - 1], iterates[k]);
}

Trajectory run(const QuadraticProblem& p, const MethodParams& params, std::span<const double> x0,
               std::size_t num_steps) {
  if (num_steps < 1) throw DomainError("run needs at least one step");
  params.validate();
  const Vector& x_star = p.solution();

  Trajectory t;
  t.iterates.reserve(num_steps + 1);
  t.distances.reserve(num_steps + 1);
  t.averaged_distances.reserve(num_steps + 1);

  IterState s = initial_state(p, params, x0);
  t.iterates.push_back(s.x);
  t.distances.push_back(distance(s.x, x_star));
  t.averaged_distances.push_back(t.distances.back());
  for (std::size_t k = 0; k < num_steps; ++k) {
    s = step(p, params, s);
    const Vector avg = midpoint(t.iterates.back(), s.x);
    t.iterates.push_back(s.x);
    t.distances.push_back(distance(s.x, x_star));
    t.averaged_distances.push_back(distance(avg, x_star));
  }
  t.averaged_final = t.averaged_at(num_steps);
  return t;
}

}  // namespace momlab
