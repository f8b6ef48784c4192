// momlab: run momentum/Nesterov trajectories on quadratics, emit figure
// data, and verify the iteration-complexity guarantees.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "momlab/errors.hpp"
#include "momlab/experiment.hpp"

namespace {

using namespace momlab;

/// Writes to --out when given, stdout otherwise.
template <typename Fn>
void with_output(const std::string& path, Fn fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("out: cannot open " + path);
  fn(out);
  if (!out) throw ConfigError("out: write failed for " + path);
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string(what) + ": malformed value '" + item + "'");
    }
  }
  if (values.empty()) throw ConfigError(std::string(what) + ": empty list");
  return values;
}

std::vector<EpsSpec> parse_eps_list(const std::string& text) {
  std::vector<EpsSpec> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(EpsSpec::parse(item));
  if (values.empty()) throw ConfigError("eps: empty list");
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Momentum and Nesterov methods on strictly convex quadratics"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "Run one trajectory and write per-step distances as CSV");
  std::string config_path, out_path, method, source, spectrum_text, x0_text, law;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> steps, dimension;
  std::optional<double> alpha, beta;
  std::string cond_text, eps_text;
  bool rotate = false, relax = false;
  run_cmd->add_option("--config", config_path, "JSON run configuration");
  run_cmd->add_option("--out", out_path, "CSV output path (default stdout)");
  run_cmd->add_option("--seed", seed, "64-bit seed for x0 and rotation streams");
  run_cmd->add_option("--steps", steps, "Number of iterations");
  run_cmd->add_option("--eps", eps_text, "Target accuracy; runs the theorem budget");
  run_cmd->add_option("--cond", cond_text, "Condition bound of the generated spectrum");
  run_cmd->add_option("--n", dimension, "Dimension of the generated spectrum");
  run_cmd->add_option("--spectrum-law", law, "two-point or log-uniform");
  run_cmd->add_option("--spectrum", spectrum_text, "Explicit eigenvalues, comma separated");
  run_cmd->add_option("--method", method, "mm, hbm, nag or nag_compact");
  run_cmd->add_option("--params", source, "explicit, theorem1 or theorem2");
  run_cmd->add_option("--alpha", alpha, "Step length (explicit params)");
  run_cmd->add_option("--beta", beta, "Momentum (explicit params)");
  run_cmd->add_option("--x0", x0_text, "Initial point, comma separated");
  run_cmd->add_flag("--rotate", rotate, "Use a seeded rotation Q^T D Q of the spectrum");
  run_cmd->add_flag("--relax-hypotheses", relax, "Allow cond < 28 and eps > 1/cond");

  // figure
  auto* fig_cmd = app.add_subcommand("figure", "Emit CSV data for one figure");
  std::string figure_id, fig_out;
  std::size_t resolution = 200;
  fig_cmd->add_option("--figure", figure_id, "fig1, fig2, fig3, fig4-left, fig4-right, fig5-analogue")
      ->required();
  fig_cmd->add_option("--resolution", resolution, "Grid points per axis");
  fig_cmd->add_option("--out", fig_out, "CSV output path (default stdout)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check a guarantee; exit 0 verified, 2 failed, 3 refused");
  std::string theorem, verify_cond = "28,100,1000", verify_eps = "1/cond,0.1/cond", verify_law;
  std::size_t seeds = 20, verify_n = 10, max_power = 200;
  std::uint64_t verify_seed = 0;
  double grid_step = 0.01;
  verify_cmd->add_option("theorem", theorem, "thm1, thm2, norm-bound or schur")->required();
  verify_cmd->add_option("--cond", verify_cond, "Condition bounds, comma separated");
  verify_cmd->add_option("--eps", verify_eps, "Accuracies, e.g. 0.01 or 1/cond, comma separated");
  verify_cmd->add_option("--seeds", seeds, "Random x0 per (cond, eps)");
  verify_cmd->add_option("--seed", verify_seed, "Base seed");
  verify_cmd->add_option("--n", verify_n, "Problem dimension");
  verify_cmd->add_option("--spectrum-law", verify_law, "two-point or log-uniform");
  verify_cmd->add_option("--grid-step", grid_step, "alpha_i spacing of the block grid");
  verify_cmd->add_option("--max-power", max_power, "Largest k for block powers");

  // params
  auto* params_cmd = app.add_subcommand("params", "Print theorem parameters and budgets");
  double lower = 1.0, params_eps = 0.0;
  std::optional<double> upper, params_cond;
  bool params_relax = false;
  params_cmd->add_option("--lower", lower, "Lower eigenvalue bound");
  params_cmd->add_option("--upper", upper, "Upper eigenvalue bound");
  params_cmd->add_option("--cond", params_cond, "Condition bound (upper = lower * cond)");
  params_cmd->add_option("--eps", params_eps, "Target accuracy (default 1/cond)");
  params_cmd->add_flag("--relax-hypotheses", params_relax, "Allow cond < 28 and eps > 1/cond");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitPrecondition;
  }

  try {
    if (*run_cmd) {
      RunConfig config = config_path.empty() ? RunConfig{} : load_run_config(config_path);
      if (config_path.empty()) config.num_steps = 100;
      if (!out_path.empty()) config.out = out_path;
      if (seed) config.seed = *seed;
      if (steps) {
        config.num_steps = *steps;
        config.eps.reset();
      }
      if (!eps_text.empty()) {
        config.eps = parse_list(eps_text, "eps").front();
        config.num_steps.reset();
      }
      if (!cond_text.empty()) {
        config.spectrum.cond = parse_list(cond_text, "cond").front();
        config.spectrum.values.reset();
      }
      if (dimension) {
        config.spectrum.n = *dimension;
        config.spectrum.values.reset();
      }
      if (!law.empty()) {
        const auto l = parse_spectrum_law(law);
        if (!l) throw ConfigError("spectrum-law: expected two-point or log-uniform");
        config.spectrum.law = *l;
      }
      if (!spectrum_text.empty()) config.spectrum.values = parse_list(spectrum_text, "spectrum");
      if (!method.empty()) {
        const auto m = parse_method_kind(method);
        if (!m) throw ConfigError("method: expected mm, hbm, nag or nag_compact");
        config.method = *m;
      }
      if (!source.empty()) {
        const auto s = parse_param_source(source);
        if (!s) throw ConfigError("params: expected explicit, theorem1 or theorem2");
        config.source = *s;
        if (*s != ParamSource::explicit_values) config.alpha = config.beta = std::nullopt;
      }
      if (alpha) config.alpha = *alpha;
      if (beta) config.beta = *beta;
      if (!x0_text.empty()) config.x0 = parse_list(x0_text, "x0");
      if (rotate) config.rotate = true;
      if (relax) config.hypotheses = Hypotheses::relax;

      const RunOutcome outcome = execute_run(config);
      with_output(config.out, [&](std::ostream& os) { write_run_csv(os, outcome.trajectory); });
      std::cerr << run_summary(outcome) << '\n';
      return kExitVerified;
    }

    if (*fig_cmd) {
      const auto id = parse_figure_id(figure_id);
      if (!id) throw ConfigError("figure: unknown id '" + figure_id + "'");
      with_output(fig_out, [&](std::ostream& os) { write_figure_csv(os, *id, resolution); });
      return kExitVerified;
    }

    if (*verify_cmd) {
      VerifyOptions o;
      const auto id = parse_theorem_id(theorem);
      if (!id) throw ConfigError("theorem: expected thm1, thm2, norm-bound or schur");
      o.theorem = *id;
      o.conds = parse_list(verify_cond, "cond");
      o.eps = parse_eps_list(verify_eps);
      o.seeds = seeds;
      o.base_seed = verify_seed;
      o.dimension = verify_n;
      o.grid_step = grid_step;
      o.max_power = max_power;
      if (!verify_law.empty()) {
        const auto l = parse_spectrum_law(verify_law);
        if (!l) throw ConfigError("spectrum-law: expected two-point or log-uniform");
        o.law = *l;
      }
      const VerifyReport report = run_verify(o);
      for (const auto& line : report.lines) std::cout << line << '\n';
      return report.exit_code;
    }

    if (*params_cmd) {
      double up = upper.value_or(lower * params_cond.value_or(100.0));
      const EigenBounds bounds = EigenBounds::make(lower, up);
      const double eps = params_eps > 0.0 ? params_eps : 1.0 / bounds.cond_bar();
      std::cout << params_report(bounds, eps,
                                 params_relax ? Hypotheses::relax : Hypotheses::enforce);
      return kExitVerified;
    }
  } catch (const PreconditionError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  }
  return kExitVerified;
}
