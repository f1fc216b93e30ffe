#include "mest/runner.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "mest/rng.hpp"

namespace mest {

namespace {

using nlohmann::json;

// Seed-stream tags so subcommand stages never share derived seeds.
enum : std::uint64_t {
  kSeedModel = 0x4d4f44454cULL,       // moment-model estimation
  kSeedGauss = 0x4741555353ULL,       // Gaussian counterpart sampling
  kSeedEmpirical = 0x454d5052ULL,     // estimator replications
  kSeedDataset = 0x44415441ULL,       // bootstrap datasets
  kSeedBoot = 0x424f4f54ULL,          // multiplier draws
  kSeedTrial = 0x545249414cULL,       // split-test trials
  kSeedVerify = 0x5645524946ULL,      // verify sweeps
};

double require_number(const json& j, const char* key, double fallback, bool has_fallback) {
  if (!j.contains(key)) {
    if (has_fallback) return fallback;
    throw ConfigError(std::string("config: missing key '") + key + "'");
  }
  if (!j.at(key).is_number()) {
    throw ConfigError(std::string("config: key '") + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return require_number(j, key, fallback, true);
}

std::uint64_t uint_or(const json& j, const char* key, std::uint64_t fallback) {
  const double v = number_or(j, key, static_cast<double>(fallback));
  if (v < 0.0 || v != std::floor(v)) {
    throw ConfigError(std::string("config: key '") + key + "' must be a whole number");
  }
  return static_cast<std::uint64_t>(v);
}

std::string string_or(const json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string())
    throw ConfigError(std::string("config: key '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

CriterionSpec parse_criterion(const json& block) {
  const std::string kind = string_or(block, "kind", "cube_root");
  if (kind == "cube_root") return CriterionSpec::cube_root();
  if (kind == "lad") return CriterionSpec::lad();
  if (kind == "min_volume") {
    const std::string kernel_name = string_or(block, "kernel", "gaussian");
    KernelId kernel;
    if (kernel_name == "gaussian") {
      kernel = KernelId::Gaussian;
    } else if (kernel_name == "uniform") {
      kernel = KernelId::Uniform;
    } else {
      throw ConfigError("config: unknown kernel '" + kernel_name + "'");
    }
    return CriterionSpec::min_volume(number_or(block, "width", 0.25),
                                     number_or(block, "bandwidth", 0.1), kernel,
                                     number_or(block, "eval_x", 0.5));
  }
  if (kind == "tabulated") {
    if (!block.contains("table") || !block.at("table").is_array())
      throw ConfigError("config: tabulated criterion needs a 'table' array of rows");
    const auto& rows = block.at("table");
    const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
    if (r == 0) throw ConfigError("config: empty table");
    const Eigen::Index c = static_cast<Eigen::Index>(rows.at(0).size());
    Eigen::MatrixXd table(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      if (static_cast<Eigen::Index>(rows.at(i).size()) != c)
        throw ConfigError("config: ragged table");
      for (Eigen::Index k = 0; k < c; ++k) table(i, k) = rows.at(i).at(k).get<double>();
    }
    return CriterionSpec::tabulated(std::move(table));
  }
  throw ConfigError("config: unknown criterion kind '" + kind + "'");
}

ParameterGrid parse_grid(const json& block) {
  ParameterGrid axis0 = ParameterGrid::linspace(
      number_or(block, "lo", 0.0), number_or(block, "hi", 1.0),
      static_cast<std::size_t>(uint_or(block, "points", 21)),
      string_or(block, "label", "theta"));
  if (!block.contains("axis2")) return axis0;
  const json& a2 = block.at("axis2");
  ParameterGrid axis1 = ParameterGrid::linspace(
      number_or(a2, "lo", 0.0), number_or(a2, "hi", 1.0),
      static_cast<std::size_t>(uint_or(a2, "points", 5)), string_or(a2, "label", "eta"));
  return ParameterGrid::product(axis0, axis1);
}

DataGenSpec parse_data(const json& block, CriterionKind kind) {
  DataGenSpec gen;
  const std::string default_law = kind == CriterionKind::LadRegression ? "uniform_pair"
                                  : kind == CriterionKind::MinVolume   ? "min_volume_pair"
                                                                       : "uniform";
  const std::string law = string_or(block, "law", default_law);
  if (law == "uniform") {
    gen.law = DataLaw::Uniform;
  } else if (law == "uniform_pair") {
    gen.law = DataLaw::UniformPair;
  } else if (law == "min_volume_pair") {
    gen.law = DataLaw::MinVolumePair;
  } else {
    throw ConfigError("config: unknown data law '" + law + "'");
  }
  gen.lo = number_or(block, "lo", 0.0);
  gen.hi = number_or(block, "hi", 1.0);
  gen.x0 = number_or(block, "x0", 0.5);
  gen.n = static_cast<std::size_t>(uint_or(block, "n", 100));
  if (!(gen.hi > gen.lo)) throw ConfigError("config: data range must satisfy hi > lo");
  if (gen.n == 0) throw ConfigError("config: data n must be positive");
  return gen;
}

RateSpec parse_rates(const json& block) {
  RateSpec spec;
  const std::string regime = string_or(block, "regime", "finite");
  if (regime == "finite") {
    spec.regime = RateRegime::FiniteDim;
  } else if (regime == "infinite") {
    spec.regime = RateRegime::InfiniteDim;
  } else if (regime == "bootstrap_finite") {
    spec.regime = RateRegime::BootstrapFinite;
  } else if (regime == "bootstrap_infinite") {
    spec.regime = RateRegime::BootstrapInfinite;
  } else {
    throw ConfigError("config: unknown rate regime '" + regime + "'");
  }
  spec.alpha = number_or(block, "alpha", 1.0);
  spec.kappa = number_or(block, "kappa", 0.25);
  spec.q = number_or(block, "q", 1.0);
  spec.c_ell = number_or(block, "c_ell", 1.0);
  return spec;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string output_header(const ExperimentConfig& config) {
  return "# config=" + config.hash() + " seed=" + std::to_string(config.seed) + "\n";
}

json json_header(const ExperimentConfig& config) {
  json j;
  j["config_hash"] = config.hash();
  j["seed"] = config.seed;
  return j;
}

double sample_sd(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

ExperimentConfig ExperimentConfig::from_string(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");

  ExperimentConfig config;
  config.canonical = j.dump();  // nlohmann objects are key-sorted

  const json crit = j.value("criterion", json::object());
  const json grid = j.value("grid", json::object());
  const json data = j.value("data", json::object());
  const json run = j.value("run", json::object());
  const json test = j.value("test", json::object());
  const json coh = j.value("coherence", json::object());
  const json rates = j.value("rates", json::object());

  config.criterion = parse_criterion(crit);
  config.grid = parse_grid(grid);
  config.data = parse_data(data, config.criterion.kind);

  if (data.contains("n_ladder")) {
    if (!data.at("n_ladder").is_array() || data.at("n_ladder").empty())
      throw ConfigError("config: n_ladder must be a nonempty array");
    for (const auto& v : data.at("n_ladder")) {
      const double d = v.get<double>();
      if (d < 1.0 || d != std::floor(d)) throw ConfigError("config: n_ladder entries must be positive integers");
      config.n_ladder.push_back(static_cast<std::size_t>(d));
    }
  } else {
    config.n_ladder = {config.data.n};
  }

  config.replications = uint_or(run, "replications", 10000);
  config.seed = uint_or(run, "seed", 1);
  config.datasets = uint_or(run, "datasets", 20);
  config.trials = uint_or(run, "trials", 500);
  config.mc_samples = uint_or(run, "mc_samples", 100000);
  const std::string model = string_or(run, "model", "analytic");
  if (model == "mc") {
    config.use_mc_model = true;
  } else if (model != "analytic") {
    throw ConfigError("config: run.model must be 'analytic' or 'mc'");
  }
  config.allow_formula = run.value("allow_formula", false);
  if (config.replications == 0) throw ConfigError("config: run.replications must be positive");

  config.level = number_or(test, "level", 0.1);
  config.theta_star = number_or(test, "theta_star", 0.5);
  if (!(config.level > 0.0 && config.level < 1.0))
    throw ConfigError("config: test.level must lie in (0, 1)");

  config.coh_c = number_or(coh, "c", 1.75);
  config.coh_delta = number_or(coh, "delta", 0.1);
  config.coh_size = static_cast<std::size_t>(uint_or(coh, "size", 11));
  config.sigma_lower_sq = number_or(coh, "sigma_lower_sq", config.coh_delta);
  config.coh_exhaustive = coh.value("exhaustive", true);
  config.coh_sampled = uint_or(coh, "sampled_subsets", 1000);

  config.rate = parse_rates(rates);
  config.rate_n = uint_or(rates, "n", 10000);
  return config;
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str());
}

std::string ExperimentConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::filesystem::path prepare_run_dir(const ExperimentConfig& config) {
  const char* root_env = std::getenv("MEST_RUN_ROOT");
  const std::filesystem::path root = root_env ? root_env : "runs";
  const std::filesystem::path dir = root / config.hash();
  std::filesystem::create_directories(dir);
  return dir;
}

GaussianModel counterpart_model(const ExperimentConfig& config) {
  if (config.use_mc_model) {
    return mc_model(config.criterion, config.grid, config.data, config.mc_samples,
                    derive_seed(config.seed, kSeedModel));
  }
  return analytic_model(config.criterion, config.grid, config.allow_formula);
}

std::vector<CompareRow> run_compare(const ExperimentConfig& config) {
  const GaussianModel base = counterpart_model(config);
  RateSpec rate = config.rate;
  std::vector<CompareRow> rows;
  for (std::size_t n : config.n_ladder) {
    DataGenSpec gen = config.data;
    gen.n = n;
    const ArgmaxDistribution p = replicate_estimator(
        config.criterion, config.grid, gen, config.replications,
        derive_seed(config.seed, kSeedEmpirical + n));
    const ArgmaxDistribution q = sample_argmax_distribution(
        base.scaled_covariance(1.0 / static_cast<double>(n)), config.replications,
        derive_seed(config.seed, kSeedGauss + n));
    CompareRow row;
    row.n = n;
    row.replications = config.replications;
    row.tv = distribution_distance(p, q, DistanceMetric::TV);
    row.interval_ks = distribution_distance(p, q, DistanceMetric::IntervalKS);
    row.tv_mc_se = tv_standard_error(p, q);
    row.rate_bound_value = rate_bound(rate, n).value;
    rows.push_back(row);
  }
  return rows;
}

std::vector<BootstrapRow> run_bootstrap(const ExperimentConfig& config) {
  const GaussianModel base = counterpart_model(config);
  std::vector<BootstrapRow> rows;
  for (std::size_t n : config.n_ladder) {
    DataGenSpec gen = config.data;
    gen.n = n;
    const ArgmaxDistribution gauss = sample_argmax_distribution(
        base.scaled_covariance(1.0 / static_cast<double>(n)), config.replications,
        derive_seed(config.seed, kSeedGauss + n));
    std::vector<double> tvs;
    for (std::uint64_t d = 0; d < config.datasets; ++d) {
      auto engine = make_engine(derive_seed(derive_seed(config.seed, kSeedDataset + n), d));
      const SampleSet dataset = gen.sample(engine);
      const ArgmaxDistribution boot = bootstrap_distribution(
          config.criterion, config.grid, dataset, config.replications,
          derive_seed(derive_seed(config.seed, kSeedBoot + n), d));
      tvs.push_back(distribution_distance(boot, gauss, DistanceMetric::TV));
    }
    BootstrapRow row;
    row.n = n;
    row.replications = config.replications;
    row.datasets = config.datasets;
    for (double tv : tvs) row.mean_tv += tv;
    row.mean_tv /= static_cast<double>(tvs.size());
    row.sd_tv = sample_sd(tvs, row.mean_tv);
    rows.push_back(row);
  }
  return rows;
}

CoverageReport run_test(const ExperimentConfig& config) {
  if (config.grid.dim() != 1) throw ConfigError("cmd_test: 1-D grids only");
  CoverageReport report;
  report.trials = config.trials;
  std::uint64_t accepted = 0, outside = 0;
  for (std::uint64_t t = 0; t < config.trials; ++t) {
    DataGenSpec gen = config.data;
    gen.n = 2 * config.data.n;  // data.n is the per-half sample size
    auto engine = make_engine(derive_seed(derive_seed(config.seed, kSeedTrial), t));
    const SampleSet dataset = gen.sample(engine);
    const SplitTestResult result =
        split_test(config.criterion, config.grid, dataset, config.theta_star, config.level,
                   config.replications, derive_seed(derive_seed(config.seed, kSeedBoot), t));
    if (result.accept) ++accepted;
    if (result.outside_domain) ++outside;
  }
  const double nt = static_cast<double>(config.trials);
  report.coverage = static_cast<double>(accepted) / nt;
  report.outside_fraction = static_cast<double>(outside) / nt;
  // Wilson 95% interval.
  const double z = 1.959963984540054;
  const double z2 = z * z;
  const double center = (report.coverage + z2 / (2.0 * nt)) / (1.0 + z2 / nt);
  const double half =
      z * std::sqrt(report.coverage * (1.0 - report.coverage) / nt + z2 / (4.0 * nt * nt)) /
      (1.0 + z2 / nt);
  report.wilson_lo = center - half;
  report.wilson_hi = center + half;
  return report;
}

int cmd_compare(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                std::ostream& log) {
  const std::vector<CompareRow> rows = run_compare(config);
  std::string csv = output_header(config);
  csv += "n,replications,tv,interval_ks,tv_mc_se,rate_bound\n";
  json summary = json_header(config);
  summary["rows"] = json::array();
  for (const CompareRow& r : rows) {
    csv += std::to_string(r.n) + "," + std::to_string(r.replications) + "," +
           format_double(r.tv) + "," + format_double(r.interval_ks) + "," +
           format_double(r.tv_mc_se) + "," + format_double(r.rate_bound_value) + "\n";
    summary["rows"].push_back({{"n", r.n},
                               {"tv", r.tv},
                               {"interval_ks", r.interval_ks},
                               {"tv_mc_se", r.tv_mc_se},
                               {"rate_bound", r.rate_bound_value}});
    log << "compare n=" << r.n << " tv=" << format_double(r.tv)
        << " ks=" << format_double(r.interval_ks) << " se=" << format_double(r.tv_mc_se)
        << "\n";
  }
  write_text(out_dir / "compare.csv", csv);
  write_text(out_dir / "compare.json", summary.dump(2) + "\n");
  return 0;
}

int cmd_bootstrap(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                  std::ostream& log) {
  const std::vector<BootstrapRow> rows = run_bootstrap(config);
  std::string csv = output_header(config);
  const bool with_sd = config.datasets > 1;
  csv += with_sd ? "n,replications,datasets,mean_tv,sd_tv\n"
                 : "n,replications,datasets,mean_tv\n";
  json summary = json_header(config);
  summary["rows"] = json::array();
  for (const BootstrapRow& r : rows) {
    csv += std::to_string(r.n) + "," + std::to_string(r.replications) + "," +
           std::to_string(r.datasets) + "," + format_double(r.mean_tv);
    if (with_sd) csv += "," + format_double(r.sd_tv);
    csv += "\n";
    json row = {{"n", r.n}, {"datasets", r.datasets}, {"mean_tv", r.mean_tv}};
    if (with_sd) row["sd_tv"] = r.sd_tv;
    summary["rows"].push_back(row);
    log << "bootstrap n=" << r.n << " mean_tv=" << format_double(r.mean_tv);
    if (with_sd) log << " sd_tv=" << format_double(r.sd_tv);
    log << "\n";
  }
  write_text(out_dir / "bootstrap.csv", csv);
  write_text(out_dir / "bootstrap.json", summary.dump(2) + "\n");
  return 0;
}

int cmd_test(const ExperimentConfig& config, const std::filesystem::path& out_dir,
             std::ostream& log) {
  const CoverageReport report = run_test(config);
  json out = json_header(config);
  out["trials"] = report.trials;
  out["level"] = config.level;
  out["theta_star"] = config.theta_star;
  out["coverage"] = report.coverage;
  out["wilson_lo"] = report.wilson_lo;
  out["wilson_hi"] = report.wilson_hi;
  out["outside_fraction"] = report.outside_fraction;
  write_text(out_dir / "test.json", out.dump(2) + "\n");
  log << "test coverage=" << format_double(report.coverage) << " wilson=["
      << format_double(report.wilson_lo) << "," << format_double(report.wilson_hi)
      << "] outside=" << format_double(report.outside_fraction) << "\n";
  return 0;
}

int cmd_coherence(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                  std::ostream& log) {
  const Eigen::MatrixXd sigma = linear_toeplitz(config.coh_c, config.coh_delta, config.coh_size);
  const CoherenceMode mode = config.coh_exhaustive
                                 ? CoherenceMode::Exhaustive()
                                 : CoherenceMode::Sampled(config.coh_sampled, config.seed);
  const CoherenceReport report = coherent_pd_check(sigma, config.sigma_lower_sq, mode);
  json out = json_header(config);
  out["matrix_size"] = report.matrix_size;
  out["subsets_checked"] = report.subsets_checked;
  out["exhaustive"] = report.exhaustive;
  out["min_schur_diag"] = report.min_schur_diag;
  out["sigma_lower_sq"] = report.sigma_lower_sq;
  out["pass"] = report.pass;
  if (report.witness) out["witness"] = *report.witness;
  write_text(out_dir / "coherence.json", out.dump(2) + "\n");
  log << "coherence size=" << report.matrix_size << " min_schur="
      << format_double(report.min_schur_diag) << (report.pass ? " pass" : " FAIL") << "\n";
  return report.pass ? 0 : 2;
}

int cmd_rates(const ExperimentConfig& config, const std::filesystem::path& out_dir,
              std::ostream& log) {
  const RateBound bound = rate_bound(config.rate, config.rate_n);
  json out = json_header(config);
  out["n"] = config.rate_n;
  out["exponent"] = bound.exponent;
  out["value"] = bound.value;
  write_text(out_dir / "rates.json", out.dump(2) + "\n");
  log << "rates n=" << config.rate_n << " exponent=" << format_double(bound.exponent)
      << " value=" << format_double(bound.value) << "\n";
  return 0;
}

int cmd_verify(const ExperimentConfig& config, const std::filesystem::path& out_dir,
               std::ostream& log) {
  json out = json_header(config);
  bool all_pass = true;

  // Softmax sandwich: 0 <= softmax - max <= log|A| / beta, checked exactly.
  {
    double worst_low = 0.0, worst_high = 0.0;
    auto engine = make_engine(derive_seed(config.seed, kSeedVerify));
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::uniform_real_distribution<double> ub(0.5, 4.0);
    bool ok = true;
    for (int t = 0; t < 10000; ++t) {
      const int m = 2 + t % 7;
      Eigen::VectorXd x(m);
      for (int i = 0; i < m; ++i) x(i) = u(engine);
      std::vector<std::size_t> all(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
      const double beta = ub(engine);
      const double h = softmax(x, beta, all);
      const double gap = h - x.maxCoeff();
      const double xi = std::log(static_cast<double>(m)) / beta;
      worst_low = std::min(worst_low, gap);
      worst_high = std::max(worst_high, gap - xi);
      if (gap < -1e-12 || gap > xi + 1e-12) ok = false;
    }
    out["softmax_sandwich"] = {{"pass", ok},
                               {"worst_below", worst_low},
                               {"worst_above_xi", worst_high}};
    all_pass = all_pass && ok;
  }

  // Soft-step sandwich: 1{z >= 0} <= g(z) <= 1{z >= -delta}, values in [0,1].
  {
    bool ok = true;
    auto engine = make_engine(derive_seed(config.seed, kSeedVerify + 1));
    std::uniform_real_distribution<double> uz(-2.0, 2.0);
    std::uniform_real_distribution<double> ud(0.05, 1.0);
    for (int t = 0; t < 10000; ++t) {
      const double delta = ud(engine);
      const double z = uz(engine);
      const double g = soft_step(z, delta);
      if (g < 0.0 || g > 1.0) ok = false;
      if (z >= 0.0 && g != 1.0) ok = false;
      if (z <= -delta && g != 0.0) ok = false;
    }
    out["soft_step_sandwich"] = {{"pass", ok}};
    all_pass = all_pass && ok;
  }

  // First-derivative-sum bound over the documented parameter sweep.
  {
    json sweeps = json::array();
    bool ok = true;
    for (std::size_t m : {std::size_t{4}, std::size_t{8}}) {
      for (double beta : {1.0, 2.0}) {
        for (double delta : {0.25, 0.5}) {
          std::vector<std::size_t> subset(m / 2);
          for (std::size_t i = 0; i < subset.size(); ++i) subset[i] = i;
          const DerivativeBoundReport r = derivative_bound_check(
              m, beta, delta, subset, 100, derive_seed(config.seed, kSeedVerify + 2));
          sweeps.push_back({{"m", m},
                            {"beta", beta},
                            {"delta", delta},
                            {"max_observed", r.max_observed_sum},
                            {"bound", r.bound},
                            {"pass", r.holds}});
          ok = ok && r.holds;
        }
      }
    }
    out["derivative_bound"] = sweeps;
    all_pass = all_pass && ok;
  }

  // Anti-concentration: independent 2-point model and the analytic model on
  // an 11-point grid.
  {
    GaussianModel two;
    two.mean = Eigen::VectorXd::Zero(2);
    two.cov = Eigen::MatrixXd::Identity(2, 2);
    two.chol = Eigen::MatrixXd::Identity(2, 2);
    const AntiConcentrationReport r2 = anti_concentration_check(
        two, {0}, 0.1, 1.0, 200000, derive_seed(config.seed, kSeedVerify + 3));
    const GaussianModel cube =
        analytic_model(CriterionSpec::cube_root(), ParameterGrid::linspace(0.0, 1.0, 11));
    json cube_checks = json::array();
    bool ok = r2.holds;
    for (double eps : {0.02, 0.05, 0.1}) {
      const AntiConcentrationReport rc = anti_concentration_check(
          cube, {0, 1, 2}, eps, std::sqrt(0.1), 200000,
          derive_seed(config.seed, kSeedVerify + 4));
      cube_checks.push_back({{"epsilon", eps},
                             {"max_band", rc.max_band_probability},
                             {"bound", rc.bound},
                             {"pass", rc.holds}});
      ok = ok && rc.holds;
    }
    out["anti_concentration"] = {{"independent_pair",
                                  {{"max_band", r2.max_band_probability},
                                   {"bound", r2.bound},
                                   {"pass", r2.holds}}},
                                 {"analytic_11", cube_checks}};
    all_pass = all_pass && ok;
  }

  // Documented discrepancy reports: the closed-form LAD and minimum-volume
  // moment formulas versus Monte Carlo moment oracles. Reported, not failing.
  {
    const ParameterGrid grid = ParameterGrid::linspace(0.0, 1.0, 11);
    DataGenSpec lad_gen{DataLaw::UniformPair, 0.0, 1.0, 0.5, 1, "lad oracle"};
    const ModelDiscrepancy lad_d = model_discrepancy(
        analytic_model(CriterionSpec::lad(), grid, true),
        mc_model(CriterionSpec::lad(), grid, lad_gen, 200000,
                 derive_seed(config.seed, kSeedVerify + 5)));
    const CriterionSpec mv = CriterionSpec::min_volume(0.25, 0.1);
    DataGenSpec mv_gen{DataLaw::MinVolumePair, 0.0, 1.0, 0.5, 1, "min-volume oracle"};
    const ModelDiscrepancy mv_d = model_discrepancy(
        analytic_model(mv, grid, true),
        mc_model(mv, grid, mv_gen, 200000, derive_seed(config.seed, kSeedVerify + 6)));
    out["formula_discrepancy"] = {
        {"lad", {{"max_mean_dev", lad_d.max_mean_abs_dev}, {"max_cov_dev", lad_d.max_cov_abs_dev}}},
        {"min_volume",
         {{"max_mean_dev", mv_d.max_mean_abs_dev}, {"max_cov_dev", mv_d.max_cov_abs_dev}}}};
  }

  out["all_pass"] = all_pass;
  write_text(out_dir / "verify.json", out.dump(2) + "\n");
  log << "verify " << (all_pass ? "all-pass" : "FAIL") << "\n";
  return all_pass ? 0 : 2;
}

}  // namespace mest
