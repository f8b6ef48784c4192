#include "momlab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "momlab/block_spectral_analysis.hpp"
#include "momlab/errors.hpp"
#include "momlab/oracle.hpp"
#include "momlab/random.hpp"

namespace momlab {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::optional<SpectrumLaw> parse_spectrum_law(std::string_view name) {
  if (name == "two-point" || name == "two_point") return SpectrumLaw::two_point;
  if (name == "log-uniform" || name == "log_uniform") return SpectrumLaw::log_uniform;
  return std::nullopt;
}

DiagonalSpectrum SpectrumSpec::build() const {
  if (values) return DiagonalSpectrum(*values);
  if (n == 0) throw ConfigError("n: must be positive");
  if (!(cond >= 1.0)) throw ConfigError("cond: must be >= 1");
  return law == SpectrumLaw::two_point ? DiagonalSpectrum::two_point(n, 1.0, cond)
                                       : DiagonalSpectrum::log_uniform(n, 1.0, cond);
}

std::optional<ParamSource> parse_param_source(std::string_view name) {
  if (name == "explicit") return ParamSource::explicit_values;
  if (name == "theorem1") return ParamSource::theorem1;
  if (name == "theorem2") return ParamSource::theorem2;
  return std::nullopt;
}

void RunConfig::validate() const {
  if (num_steps.has_value() == eps.has_value())
    throw ConfigError("num_steps/eps: exactly one termination spec is required");
  if (num_steps && *num_steps < 1) throw ConfigError("num_steps: must be >= 1");
  if (source == ParamSource::explicit_values) {
    if (!alpha || !beta) throw ConfigError("params: explicit source needs alpha and beta");
    if (eps) throw ConfigError("eps: a budget needs params.source theorem1 or theorem2");
  } else if (alpha || beta) {
    throw ConfigError("params: alpha/beta are only allowed with the explicit source");
  }
  if (method) {
    if (source == ParamSource::theorem1 && is_nesterov(*method))
      throw ConfigError("method: theorem1 parameters are for mm/hbm");
    if (source == ParamSource::theorem2 && !is_nesterov(*method))
      throw ConfigError("method: theorem2 parameters are for nag/nag_compact");
  }
  if (shift && !rotate) throw ConfigError("shift: only meaningful with rotate = true");
}

namespace {

template <typename T>
T field(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
}

}  // namespace

RunConfig parse_run_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");

  static const std::vector<std::string> known{
      "spectrum", "n",     "cond",  "spectrum_law", "method", "params",          "x0",
      "num_steps", "eps",  "rotate", "shift",       "out",    "seed", "relax_hypotheses"};
  for (const auto& [key, value] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError(key + ": unknown field");

  RunConfig c;
  if (doc.contains("spectrum")) c.spectrum.values = field<std::vector<double>>(doc, "spectrum");
  if (doc.contains("n")) c.spectrum.n = field<std::size_t>(doc, "n");
  if (doc.contains("cond")) c.spectrum.cond = field<double>(doc, "cond");
  if (doc.contains("spectrum_law")) {
    const auto law = parse_spectrum_law(field<std::string>(doc, "spectrum_law"));
    if (!law) throw ConfigError("spectrum_law: expected two-point or log-uniform");
    c.spectrum.law = *law;
  }
  if (doc.contains("method")) {
    const auto kind = parse_method_kind(field<std::string>(doc, "method"));
    if (!kind) throw ConfigError("method: expected mm, hbm, nag or nag_compact");
    c.method = *kind;
  }
  if (doc.contains("params")) {
    const json& p = doc.at("params");
    if (!p.is_object()) throw ConfigError("params: must be an object");
    if (p.contains("source")) {
      const auto src = parse_param_source(field<std::string>(p, "source"));
      if (!src) throw ConfigError("params.source: expected explicit, theorem1 or theorem2");
      c.source = *src;
    }
    if (p.contains("alpha")) c.alpha = field<double>(p, "alpha");
    if (p.contains("beta")) c.beta = field<double>(p, "beta");
  }
  if (doc.contains("x0")) {
    const json& x = doc.at("x0");
    if (x.is_string()) {
      if (x.get<std::string>() != "random") throw ConfigError("x0: expected an array or \"random\"");
    } else {
      c.x0 = field<std::vector<double>>(doc, "x0");
    }
  }
  if (doc.contains("num_steps")) c.num_steps = field<std::size_t>(doc, "num_steps");
  if (doc.contains("eps")) c.eps = field<double>(doc, "eps");
  if (doc.contains("rotate")) c.rotate = field<bool>(doc, "rotate");
  if (doc.contains("shift")) c.shift = field<std::vector<double>>(doc, "shift");
  if (doc.contains("out")) c.out = field<std::string>(doc, "out");
  if (doc.contains("seed")) c.seed = field<std::uint64_t>(doc, "seed");
  if (doc.contains("relax_hypotheses") && field<bool>(doc, "relax_hypotheses"))
    c.hypotheses = Hypotheses::relax;
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

RunOutcome execute_run(const RunConfig& config) {
  config.validate();
  const DiagonalSpectrum spectrum = config.spectrum.build();
  const EigenBounds bounds = EigenBounds::of(spectrum);
  const std::size_t n = spectrum.size();

  RunOutcome outcome;
  switch (config.source) {
    case ParamSource::explicit_values:
      outcome.params = MethodParams{*config.alpha, *config.beta, MethodKind::hbm};
      break;
    case ParamSource::theorem1:
      outcome.params = theorem1_params(bounds, config.hypotheses);
      break;
    case ParamSource::theorem2:
      outcome.params = theorem2_params(bounds, config.hypotheses);
      break;
  }
  if (config.method) outcome.params.kind = *config.method;
  try {
    outcome.params.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }

  if (config.eps) {
    outcome.budget = config.source == ParamSource::theorem1
                         ? theorem1_budget(bounds.cond_bar(), *config.eps, config.hypotheses)
                         : theorem2_budget(bounds.cond_bar(), *config.eps, config.hypotheses);
    outcome.steps = static_cast<std::size_t>(outcome.budget->budget);
  } else {
    outcome.steps = *config.num_steps;
  }

  Vector shift(n, 0.0);
  if (config.shift) {
    if (config.shift->size() != n) throw ConfigError("shift: length does not match the spectrum");
    shift = *config.shift;
  }

  Vector x0;
  if (config.x0) {
    if (config.x0->size() != n) throw ConfigError("x0: length does not match the spectrum");
    x0 = *config.x0;
  } else {
    x0 = random_unit_vector(n, derive_seed(config.seed, Stream::initial_point));
    for (std::size_t i = 0; i < n; ++i) x0[i] += shift[i];
  }

  if (config.rotate) {
    const RotatedProblem rp = make_rotated_problem(spectrum, config.seed, shift);
    outcome.trajectory = run(rp.problem, outcome.params, x0, outcome.steps);
  } else {
    outcome.trajectory = run(make_diagonal_problem(spectrum), outcome.params, x0, outcome.steps);
  }
  return outcome;
}

void write_run_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "k,distance,averaged_distance\n";
  for (std::size_t k = 0; k < trajectory.distances.size(); ++k)
    out << k << ',' << format_double(trajectory.distances[k]) << ','
        << format_double(trajectory.averaged_distances[k]) << '\n';
}

std::string run_summary(const RunOutcome& o) {
  std::ostringstream s;
  const auto& t = o.trajectory;
  s << "method=" << to_string(o.params.kind) << " alpha=" << format_double(o.params.alpha)
    << " beta=" << format_double(o.params.beta) << " steps=" << o.steps
    << " initial_distance=" << format_double(t.distances.front())
    << " final_distance=" << format_double(t.distances.back())
    << " final_averaged_distance=" << format_double(t.averaged_distances.back());
  if (o.budget) s << " eps=" << format_double(o.budget->eps) << " budget=" << o.budget->budget;
  return s.str();
}

std::optional<FigureId> parse_figure_id(std::string_view name) {
  if (name == "fig1") return FigureId::fig1;
  if (name == "fig2") return FigureId::fig2;
  if (name == "fig3") return FigureId::fig3;
  if (name == "fig4-left") return FigureId::fig4_left;
  if (name == "fig4-right") return FigureId::fig4_right;
  if (name == "fig5-analogue") return FigureId::fig5_analogue;
  return std::nullopt;
}

std::string_view to_string(FigureId id) {
  switch (id) {
    case FigureId::fig1: return "fig1";
    case FigureId::fig2: return "fig2";
    case FigureId::fig3: return "fig3";
    case FigureId::fig4_left: return "fig4-left";
    case FigureId::fig4_right: return "fig4-right";
    case FigureId::fig5_analogue: return "fig5-analogue";
  }
  return "unknown";
}

namespace {

constexpr double kFigureBetas[] = {0.1, 0.5, 0.9};

void write_rho_curves(std::ostream& out, double alpha_max, std::size_t resolution,
                      bool include_end) {
  out << "alpha_i,rho_beta_0.1,rho_beta_0.5,rho_beta_0.9\n";
  const std::size_t last = include_end ? resolution : resolution - 1;
  for (std::size_t j = 1; j <= last; ++j) {
    const double a = alpha_max * static_cast<double>(j) / static_cast<double>(resolution);
    out << format_double(a);
    for (double b : kFigureBetas) out << ',' << format_double(analyze_hbm(a, b, DomainCheck::off).rho);
    out << '\n';
  }
}

template <typename Fn>
void write_surface(std::ostream& out, const char* value_name, std::size_t resolution, Fn value) {
  out << "alpha_i,beta," << value_name << '\n';
  for (std::size_t j = 1; j <= resolution; ++j) {
    const double a = 2.0 * static_cast<double>(j) / static_cast<double>(resolution);
    for (std::size_t i = 0; i < resolution; ++i) {
      const double b = static_cast<double>(i) / static_cast<double>(resolution);
      out << format_double(a) << ',' << format_double(b) << ',' << format_double(value(a, b))
          << '\n';
    }
  }
}

}  // namespace

void write_figure_csv(std::ostream& out, FigureId id, std::size_t resolution) {
  if (resolution < 2) throw ConfigError("resolution: must be >= 2");
  switch (id) {
    case FigureId::fig1: {
      // Momentum method on 1/2 (x1^2 + 100 x2^2), alpha = 1.9/100, beta = 0.85.
      const QuadraticProblem p = make_diagonal_problem(DiagonalSpectrum({1.0, 100.0}));
      const MethodParams params{1.9 / 100.0, 0.85, MethodKind::mm};
      const std::vector<Vector> starts{{0.01, 1.0}, {1.0, 1.0}, {100.0, 1.0}};
      std::vector<Trajectory> runs;
      for (const auto& x0 : starts) runs.push_back(run(p, params, x0, 100));
      out << "k,distance_x0_0.01_1,distance_x0_1_1,distance_x0_100_1\n";
      for (std::size_t k = 0; k <= 100; ++k) {
        out << k;
        for (const auto& t : runs) out << ',' << format_double(t.distances[k]);
        out << '\n';
      }
      break;
    }
    case FigureId::fig2:
      write_surface(out, "rho", resolution,
                    [](double a, double b) { return analyze_hbm(a, b).rho; });
      break;
    case FigureId::fig3:
      write_rho_curves(out, 0.1, resolution, false);
      break;
    case FigureId::fig4_left:
      write_surface(out, "cond_s_clamped", resolution, [](double a, double b) {
        return std::min(eigvec_condition(analyze_hbm(a, b)), 20.0);
      });
      break;
    case FigureId::fig4_right: {
      out << "alpha_i,beta\n";
      for (std::size_t j = 1; j <= resolution; ++j) {
        const double a = 2.0 * static_cast<double>(j) / static_cast<double>(resolution);
        const double b = hbm_double_root_beta(a);
        if (b < 1.0) out << format_double(a) << ',' << format_double(b) << '\n';
      }
      break;
    }
    case FigureId::fig5_analogue:
      write_rho_curves(out, 2.2, resolution, true);
      break;
  }
}

EpsSpec EpsSpec::parse(std::string_view text) {
  EpsSpec e;
  std::string s(text);
  const auto slash = s.find("/cond");
  if (slash != std::string::npos) {
    if (slash + 5 != s.size()) throw ConfigError("eps: malformed value '" + s + "'");
    e.per_cond = true;
    s = s.substr(0, slash);
  }
  std::size_t used = 0;
  try {
    e.value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("eps: malformed value '" + std::string(text) + "'");
  }
  if (used != s.size() || !(e.value > 0.0))
    throw ConfigError("eps: malformed value '" + std::string(text) + "'");
  return e;
}

std::string EpsSpec::to_string() const {
  return per_cond ? format_double(value) + "/cond" : format_double(value);
}

std::optional<TheoremId> parse_theorem_id(std::string_view name) {
  if (name == "thm1") return TheoremId::thm1;
  if (name == "thm2") return TheoremId::thm2;
  if (name == "norm-bound") return TheoremId::norm_bound;
  if (name == "schur") return TheoremId::schur;
  return std::nullopt;
}

std::vector<std::uint64_t> cell_seeds(std::uint64_t base_seed, std::size_t count) {
  SplitMix64 rng(derive_seed(base_seed, Stream::sweep_cell));
  std::vector<std::uint64_t> seeds(count);
  for (auto& s : seeds) s = rng.next();
  return seeds;
}

unsigned sweep_threads() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MOMLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return hw;
}

namespace {

struct CellResult {
  bool passed = true;
  std::vector<std::string> lines;
};

/// Evaluates cells [0, count) on up to `threads` workers; results keep cell order.
std::vector<CellResult> fan_out(std::size_t count, unsigned threads,
                                const std::function<CellResult(std::size_t)>& cell) {
  std::vector<CellResult> results(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) results[i] = cell(i);
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

VerifyReport collect(std::vector<CellResult> results, const std::string& summary_prefix) {
  VerifyReport report;
  std::size_t passed = 0;
  for (auto& r : results) {
    if (r.passed) ++passed;
    for (auto& l : r.lines) report.lines.push_back(std::move(l));
  }
  report.lines.push_back(summary_prefix + ": " + std::to_string(passed) + "/" +
                         std::to_string(results.size()) + " cases passed");
  report.exit_code = passed == results.size() ? kExitVerified : kExitFailed;
  return report;
}

VerifyReport verify_theorem(const VerifyOptions& o, unsigned threads) {
  const bool nag = o.theorem == TheoremId::thm2;
  const char* name = nag ? "thm2" : "thm1";

  struct Cell {
    double cond;
    double eps;
    std::string eps_text;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  const auto seeds = cell_seeds(o.base_seed, o.seeds);

  // Hypotheses are checked for every (cond, eps) before anything runs.
  std::vector<std::string> violations;
  for (double cond : o.conds)
    for (const auto& e : o.eps) {
      const double eps = e.resolve(cond);
      try {
        (void)(nag ? theorem2_budget(cond, eps) : theorem1_budget(cond, eps));
      } catch (const PreconditionError& err) {
        violations.push_back(std::string(name) + " cond=" + format_double(cond) +
                             " eps=" + format_double(eps) + " refused: " + err.what());
        continue;
      }
      for (auto s : seeds) cells.push_back({cond, eps, e.to_string(), s});
    }
  if (!violations.empty()) {
    VerifyReport r;
    r.lines = std::move(violations);
    r.exit_code = kExitPrecondition;
    return r;
  }

  auto results = fan_out(cells.size(), threads, [&](std::size_t i) {
    const Cell& c = cells[i];
    const DiagonalSpectrum spectrum = o.law == SpectrumLaw::two_point
                                          ? DiagonalSpectrum::two_point(o.dimension, 1.0, c.cond)
                                          : DiagonalSpectrum::log_uniform(o.dimension, 1.0, c.cond);
    const EigenBounds bounds = EigenBounds::of(spectrum);
    const MethodParams params = nag ? theorem2_params(bounds) : theorem1_params(bounds);
    const ComplexityReport budget =
        nag ? theorem2_budget(bounds.cond_bar(), c.eps) : theorem1_budget(bounds.cond_bar(), c.eps);
    const QuadraticProblem p = make_diagonal_problem(spectrum);
    const Vector x0 = random_unit_vector(o.dimension, derive_seed(c.seed, Stream::initial_point));
    const auto steps = static_cast<std::size_t>(budget.budget);
    const Trajectory t = run(p, params, x0, steps);
    const double ratio = distance(t.averaged_final, p.solution()) / distance(x0, p.solution());
    CellResult r;
    r.passed = ratio <= c.eps;
    r.lines.push_back(std::string(name) + " cond=" + format_double(c.cond) + " eps=" +
                      format_double(c.eps) + " seed=" + std::to_string(c.seed) +
                      " K=" + std::to_string(budget.budget) + " ratio=" + format_double(ratio) +
                      (r.passed ? " PASS" : " FAIL"));
    return r;
  });
  return collect(std::move(results), name);
}

struct BlockCase {
  BlockKind kind;
  GridPoint point;
};

std::vector<BlockCase> block_cases(double step) {
  std::vector<BlockCase> cases;
  for (const auto& g : hbm_parameter_grid(step)) cases.push_back({BlockKind::hbm, g});
  for (const auto& g : nag_parameter_grid(step)) cases.push_back({BlockKind::nag, g});
  return cases;
}

BlockSpectrum analyze(const BlockCase& c) {
  return c.kind == BlockKind::hbm ? analyze_hbm(c.point.alpha_i, c.point.beta)
                                  : analyze_nag(c.point.alpha_i, c.point.beta);
}

std::string case_label(const BlockCase& c) {
  return std::string(c.kind == BlockKind::hbm ? "hbm" : "nag") +
         " alpha_i=" + format_double(c.point.alpha_i) + " beta=" + format_double(c.point.beta);
}

VerifyReport verify_norm_bound(const VerifyOptions& o, unsigned threads) {
  const auto cases = block_cases(o.grid_step);
  auto results = fan_out(cases.size(), threads, [&](std::size_t i) {
    const BlockSpectrum spec = analyze(cases[i]);
    const Block2x2 block = spec.block();
    CellResult r;
    // Compared in log space: for small rho both sides leave the double range.
    oracle::PowerSequence<Block2x2> power(block);
    for (std::size_t k = 1; k <= o.max_power; ++k) {
      power.advance();
      const double exact = oracle::log_spectral_norm(power);
      const double upper = log_power_norm_bound(spec.rho, k);
      if (!(exact <= upper)) {
        r.passed = false;
        r.lines.push_back("norm-bound " + case_label(cases[i]) + " k=" + std::to_string(k) +
                          " log_exact=" + format_double(exact) +
                          " log_bound=" + format_double(upper) + " FAIL");
        break;
      }
      if (spec.regime == Regime::double_root && k >= 2) {
        const double lower = log_power_norm_lower_bound(spec.rho, k);
        if (!(exact >= lower)) {
          r.passed = false;
          r.lines.push_back("norm-bound tightness " + case_label(cases[i]) + " k=" +
                            std::to_string(k) + " log_exact=" + format_double(exact) +
                            " log_lower=" + format_double(lower) + " FAIL");
          break;
        }
      }
    }
    return r;
  });
  return collect(std::move(results), "norm-bound");
}

VerifyReport verify_schur(const VerifyOptions& o, unsigned threads) {
  const auto cases = block_cases(o.grid_step);
  auto results = fan_out(cases.size(), threads, [&](std::size_t i) {
    const BlockSpectrum spec = analyze(cases[i]);
    const SchurFactors f = schur_factors(spec);
    CellResult r;
    auto fail = [&](const std::string& what) {
      r.passed = false;
      r.lines.push_back("schur " + case_label(cases[i]) + " " + what + " FAIL");
    };
    if (!(f.reconstruction_error <= 1e-12))
      fail("reconstruction=" + format_double(f.reconstruction_error));
    if (!(f.cond_t <= 3.0)) fail("cond_t=" + format_double(f.cond_t));
    oracle::PowerSequence<ComplexMatrix2> power(f.r);
    for (std::size_t k = 1; k <= o.max_power && r.passed; ++k) {
      power.advance();
      const double exact = oracle::log_spectral_norm(power);
      const double bound = log_r_power_norm_bound(spec.rho, k);
      if (!(exact <= bound))
        fail("k=" + std::to_string(k) + " log||R^k||=" + format_double(exact) +
             " log_bound=" + format_double(bound));
    }
    return r;
  });
  return collect(std::move(results), "schur");
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& options) {
  if (options.conds.empty() || options.eps.empty() || options.seeds == 0)
    throw ConfigError("verify: cond, eps and seed lists must be non-empty");
  const unsigned threads = options.threads > 0 ? options.threads : sweep_threads();
  switch (options.theorem) {
    case TheoremId::thm1:
    case TheoremId::thm2: return verify_theorem(options, threads);
    case TheoremId::norm_bound: return verify_norm_bound(options, threads);
    case TheoremId::schur: return verify_schur(options, threads);
  }
  return {};
}

std::string params_report(const EigenBounds& bounds, double eps, Hypotheses h) {
  std::ostringstream s;
  const double cond = bounds.cond_bar();
  const MethodParams p1 = theorem1_params(bounds, h);
  const ComplexityReport k1 = theorem1_budget(cond, eps, h);
  const MethodParams p2 = theorem2_params(bounds, h);
  const ComplexityReport k2 = theorem2_budget(cond, eps, h);
  s << "cond_bar=" << format_double(cond) << " eps=" << format_double(eps) << '\n';
  s << "theorem1 method=hbm alpha=" << format_double(p1.alpha) << " beta=" << format_double(p1.beta)
    << " K=" << k1.budget << " rho=" << format_double(k1.rho_asymptotic)
    << " delta=" << format_double(k1.delta) << " k_bar=" << format_double(k1.k_bar)
    << " eps_bar=" << format_double(k1.eps_bar) << '\n';
  s << "theorem2 method=nag alpha=" << format_double(p2.alpha) << " beta=" << format_double(p2.beta)
    << " K=" << k2.budget << " rho=" << format_double(k2.rho_asymptotic)
    << " delta=" << format_double(k2.delta) << " k_bar=" << format_double(k2.k_bar)
    << " eps_bar=" << format_double(k2.eps_bar) << '\n';
  if (cond > 4.0) {
    const AsymptoticRates r = asymptotic_rates(cond);
    s << "rates hbm=" << format_double(r.hbm) << " nag=" << format_double(r.nag)
      << " polyak_optimal=" << format_double(r.polyak_optimal)
      << " nesterov_fvalue=" << format_double(r.nesterov_fvalue) << '\n';
  }
  return s.str();
}

}  // namespace momlab
