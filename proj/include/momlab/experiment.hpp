#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "momlab/complexity_bounds.hpp"
#include "momlab/momentum_methods.hpp"
#include "momlab/quadratic_problems.hpp"

namespace momlab {

/// Process exit codes shared by the CLI subcommands.
inline constexpr int kExitVerified = 0;
inline constexpr int kExitFailed = 2;
inline constexpr int kExitPrecondition = 3;

/// 17 significant digits, enough to round-trip a double.
std::string format_double(double v);

enum class SpectrumLaw { two_point, log_uniform };
std::optional<SpectrumLaw> parse_spectrum_law(std::string_view name);

/// Either an explicit eigenvalue list or n values on [1, cond] by a law.
struct SpectrumSpec {
  std::optional<std::vector<double>> values;
  std::size_t n = 2;
  double cond = 100.0;
  SpectrumLaw law = SpectrumLaw::two_point;

  DiagonalSpectrum build() const;
};

enum class ParamSource { explicit_values, theorem1, theorem2 };
std::optional<ParamSource> parse_param_source(std::string_view name);

struct RunConfig {
  SpectrumSpec spectrum;
  /// Defaults to hbm, or nag for the theorem2 source.
  std::optional<MethodKind> method;
  ParamSource source = ParamSource::explicit_values;
  std::optional<double> alpha;
  std::optional<double> beta;
  /// Explicit x^0; when absent a seeded random unit vector is used.
  std::optional<Vector> x0;
  std::optional<std::size_t> num_steps;
  /// Target accuracy; the step count becomes the theorem budget.
  std::optional<double> eps;
  /// Run on Q^T D Q with minimizer `shift` instead of on D.
  bool rotate = false;
  std::optional<Vector> shift;
  std::string out;  // empty: stdout
  std::uint64_t seed = 0;
  Hypotheses hypotheses = Hypotheses::enforce;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Parses a JSON document whose keys mirror RunConfig fields:
/// spectrum (array) | n, cond, spectrum_law; method; params {source, alpha,
/// beta}; x0 (array or "random"); num_steps | eps; rotate; shift; out; seed;
/// relax_hypotheses. Unknown keys are rejected.
RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::filesystem::path& path);

struct RunOutcome {
  MethodParams params;
  std::size_t steps = 0;
  std::optional<ComplexityReport> budget;
  Trajectory trajectory;
};

RunOutcome execute_run(const RunConfig& config);

/// Header k,distance,averaged_distance then one row per iterate.
void write_run_csv(std::ostream& out, const Trajectory& trajectory);
std::string run_summary(const RunOutcome& outcome);

enum class FigureId { fig1, fig2, fig3, fig4_left, fig4_right, fig5_analogue };
std::optional<FigureId> parse_figure_id(std::string_view name);
std::string_view to_string(FigureId id);

/// fig1: distance traces of the 2-d example for three starting points.
/// fig2: rho over (alpha_i, beta) in (0, 2] x [0, 1).
/// fig3: rho over alpha_i in (0, 0.1) for beta in {0.1, 0.5, 0.9}.
/// fig4-left: min(cond(S), 20) over (0, 2] x [0, 1).
/// fig4-right: the double-root curve beta = (1 - sqrt(alpha_i))^2.
/// fig5-analogue: the fig3 curves over (0, 2.2], past the step-length limit.
void write_figure_csv(std::ostream& out, FigureId id, std::size_t resolution);

/// Accuracy given either absolutely ("0.01") or relative to the
/// condition bound ("1/cond", "0.1/cond").
struct EpsSpec {
  double value = 0.0;
  bool per_cond = false;

  static EpsSpec parse(std::string_view text);
  double resolve(double cond) const { return per_cond ? value / cond : value; }
  std::string to_string() const;
};

enum class TheoremId { thm1, thm2, norm_bound, schur };
std::optional<TheoremId> parse_theorem_id(std::string_view name);

struct VerifyOptions {
  TheoremId theorem = TheoremId::thm1;
  std::vector<double> conds{28.0, 100.0, 1000.0};
  std::vector<EpsSpec> eps{{1.0, true}, {0.1, true}};
  std::size_t seeds = 20;
  std::uint64_t base_seed = 0;
  std::size_t dimension = 10;
  SpectrumLaw law = SpectrumLaw::log_uniform;
  double grid_step = 0.01;
  std::size_t max_power = 200;
  unsigned threads = 0;  // 0: sweep_threads()
};

struct VerifyReport {
  std::vector<std::string> lines;
  int exit_code = kExitVerified;
};

/// Runs the selected suite. Cells are evaluated concurrently and reported
/// in cell order.
VerifyReport run_verify(const VerifyOptions& options);

/// Seeds of the verification cells: successive splitmix64 outputs of the
/// sweep-cell stream of base_seed.
std::vector<std::uint64_t> cell_seeds(std::uint64_t base_seed, std::size_t count);

/// Worker count: MOMLAB_THREADS if set and positive, else hardware concurrency.
unsigned sweep_threads();

/// Theorem 1 and 2 parameters and budgets for the given bounds and eps.
std::string params_report(const EigenBounds& bounds, double eps, Hypotheses h);

}  // namespace momlab
