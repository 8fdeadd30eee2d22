#include "credible/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "credible/data_io.hpp"
#include "credible/metrics.hpp"
#include "credible/oracle.hpp"
#include "credible/optimizer.hpp"
#include "credible/synthetic.hpp"

namespace credible {

namespace {

using nlohmann::json;

constexpr const char* kExperimentNames[] = {"two_feature", "correlation_sweep", "known_fraction",
                                            "expert_mistake"};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

double mean_of(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double stdev_of(const Vec& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::vector<int> binary_labels(const Dataset& data) {
  std::vector<int> labels(data.rows());
  for (std::size_t i = 0; i < data.rows(); ++i) labels[i] = data.targets()[i] > 0.5 ? 1 : 0;
  return labels;
}

// Collects emitted files and their content hashes for the manifest.
class Emitter {
 public:
  explicit Emitter(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec || !std::filesystem::is_directory(dir_)) {
      throw std::runtime_error("cannot create output directory " + dir_.string());
    }
  }

  void write(const std::string& rel_path, const std::string& content) {
    const auto full = dir_ / rel_path;
    std::filesystem::create_directories(full.parent_path());
    std::ofstream out(full, std::ios::binary);
    if (!out || !(out << content)) {
      throw std::runtime_error("cannot write " + full.string());
    }
    out.close();
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(content.data(), content.size())));
    artifacts_.push_back({rel_path, buf});
  }

  const std::filesystem::path& dir() const { return dir_; }
  const std::vector<RunArtifact>& artifacts() const { return artifacts_; }

 private:
  std::filesystem::path dir_;
  std::vector<RunArtifact> artifacts_;
};

json options_json(const ExperimentOptions& o) {
  json j;
  j["lambda_grid"] = o.grid.lambdas;
  j["betas"] = o.grid.betas;
  j["weight_multipliers"] = o.grid.weight_multipliers;
  j["alpha"] = o.alpha;
  j["symkl_epsilon"] = o.symkl_epsilon;
  j["max_epochs"] = o.train.max_epochs;
  j["adadelta_decay"] = o.train.adadelta_decay;
  j["adadelta_epsilon"] = o.train.adadelta_epsilon;
  j["convergence_tol"] = o.train.convergence_tol;
  j["bootstrap_replicates"] = o.bootstrap_replicates;
  return j;
}

json design_flags(const ExperimentOptions& o) {
  json j;
  j["standardize_columns"] = true;
  j["split"] = "60/20/20";
  j["symkl_epsilon"] = o.symkl_epsilon;
  j["penalty_multiplier"] = "n_train * lambda";
  j["empty_known_group_true_weight"] = "uniform_over_all_members";
  return j;
}

struct MethodRun {
  CandidateModel selected;
  CredibilityReport report;
  std::size_t total_candidates = 0;
  std::size_t surviving_candidates = 0;
  std::vector<FailedCandidate> failures;
};

MethodRun run_pipeline(PenaltyKind kind, const DataSplits& splits, const KnowledgeVector& r,
                       const std::optional<FeatureGroups>& groups, std::uint64_t seed,
                       const ExperimentOptions& options) {
  TrainConfig config = options.train;
  config.seed = seed;
  TrainGridResult tg = train_grid(kind, options.grid, splits, r, config, LossKind::Logistic,
                                  options.bootstrap_replicates);
  if (tg.candidates.empty()) {
    throw std::runtime_error(std::string("every candidate failed for penalty ") +
                             penalty_kind_name(kind));
  }
  const auto kept = bootstrap_filter(tg.candidates, options.alpha);
  MethodRun run;
  run.selected = select_sparsest(kept);
  run.total_candidates = tg.candidates.size();
  run.surviving_candidates = kept.size();
  run.failures = std::move(tg.failures);

  CredibilityReport& rep = run.report;
  rep.penalty = penalty_kind_name(kind);
  rep.variant = run.selected.variant;
  rep.lambda = run.selected.lambda;
  rep.seed = seed;
  rep.gini = run.selected.gini;
  const Vec test_scores = predict_scores(LossKind::Logistic, run.selected.fit.weights, splits.test);
  rep.auc = roc_auc(test_scores, binary_labels(splits.test));
  if (r.count_known() > 0) {
    Vec abs_w(run.selected.fit.weights.theta);
    for (double& v : abs_w) v = std::fabs(v);
    rep.average_precision = average_precision(abs_w, r);
  }
  if (groups) {
    rep.per_group_symkl =
        group_credibility(run.selected.fit.weights, r, *groups, options.symkl_epsilon);
    rep.symkl_sum = 0.0;
    for (const auto& [g, v] : rep.per_group_symkl) rep.symkl_sum += v;
  }
  return run;
}

json report_json(const MethodRun& run, const ExperimentOptions& options) {
  const CredibilityReport& rep = run.report;
  json j;
  j["penalty"] = rep.penalty;
  j["variant"] = rep.variant;
  j["lambda"] = rep.lambda;
  j["seed"] = rep.seed;
  j["auc_test"] = rep.auc;
  if (rep.average_precision) {
    j["average_precision"] = *rep.average_precision;
  } else {
    j["average_precision"] = nullptr;
  }
  j["gini"] = rep.gini;
  j["symkl_sum"] = rep.symkl_sum;
  json groups = json::array();
  for (const auto& [g, v] : rep.per_group_symkl) groups.push_back({{"group", g}, {"symkl", v}});
  j["per_group_symkl"] = groups;
  j["converged"] = run.selected.fit.converged;
  j["epochs_run"] = run.selected.fit.epochs_run;
  j["candidates_total"] = run.total_candidates;
  j["candidates_surviving_filter"] = run.surviving_candidates;
  json failures = json::array();
  for (const auto& f : run.failures) {
    failures.push_back({{"lambda", f.lambda}, {"variant", f.variant}, {"reason", f.reason}});
  }
  j["candidates_failed"] = failures;
  j["flags"] = design_flags(options);
  return j;
}

SyntheticDataset generate(const std::string& name, std::uint64_t seed) {
  if (name == "two_feature") return gen_two_feature_perfect(seed);
  if (name == "correlation_sweep") return gen_correlation_sweep(seed);
  if (name == "known_fraction") return gen_known_fraction_sweep(seed);
  if (name == "expert_mistake") return gen_expert_mistake_process(seed);
  throw std::invalid_argument("unknown experiment name: " + name);
}

// Per-lambda trained log weight ratios and test AUCs for the two-feature
// data: one column for the EYE penalty, one per naive-penalty beta.
void emit_two_feature_grids(Emitter& emitter, std::uint64_t seed, const DataSplits& splits,
                            const KnowledgeVector& r, const ExperimentOptions& options) {
  std::vector<std::pair<PenaltySpec, std::string>> columns;
  columns.emplace_back(PenaltySpec::eye(), "eye");
  for (double b : options.grid.betas) {
    if (b > 0.0 && b < 1.0) {
      columns.emplace_back(PenaltySpec::naive_q(b), "naive_beta_" + fmt(b));
    }
  }

  std::ostringstream ratio;
  std::ostringstream auc;
  ratio << "lambda";
  auc << "lambda";
  for (const auto& [spec, label] : columns) {
    ratio << '\t' << label;
    auc << '\t' << label;
  }
  ratio << '\n';
  auc << '\n';

  const std::vector<int> test_labels = binary_labels(splits.test);
  for (double lambda : options.grid.lambdas) {
    ratio << fmt(lambda);
    auc << fmt(lambda);
    for (const auto& [spec, label] : columns) {
      ObjectiveSpec objective;
      objective.loss_kind = LossKind::Logistic;
      objective.penalty = spec;
      objective.knowledge = r;
      objective.lambda = lambda;
      TrainConfig config = options.train;
      config.seed = seed;
      const FitResult fit = adadelta_fit(objective, splits.train, config);
      ratio << '\t' << fmt(log_weight_ratio(fit.weights, r));
      auc << '\t' << fmt(roc_auc(predict_scores(LossKind::Logistic, fit.weights, splits.test),
                                 test_labels));
    }
    ratio << '\n';
    auc << '\n';
  }
  emitter.write("seed" + std::to_string(seed) + "_log_ratio_grid.tsv", ratio.str());
  emitter.write("seed" + std::to_string(seed) + "_auc_by_lambda.tsv", auc.str());
}

std::string timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void write_manifest(Emitter& emitter, RunManifest& manifest) {
  json j;
  j["command"] = manifest.command;
  j["seeds"] = manifest.seeds;
  j["timestamp"] = manifest.timestamp;
  json arts = json::array();
  for (const auto& a : emitter.artifacts()) {
    arts.push_back({{"path", a.path}, {"fnv1a64", a.fnv1a64}});
  }
  j["artifacts"] = arts;
  manifest.artifacts = emitter.artifacts();
  const auto path = emitter.dir() / "manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << j.dump(2) << '\n')) {
    throw std::runtime_error("cannot write " + path.string());
  }
}

}  // namespace

std::uint64_t fnv1a64(const void* bytes, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(bytes);
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

const std::vector<PenaltyKind>& benchmark_penalties() {
  static const std::vector<PenaltyKind> kinds = {
      PenaltyKind::Eye,        PenaltyKind::WeightedLasso, PenaltyKind::WeightedRidge,
      PenaltyKind::Lasso,      PenaltyKind::ElasticNet,    PenaltyKind::Owl,
  };
  return kinds;
}

RunOutcome run_experiment(const std::string& name, const std::vector<std::uint64_t>& seeds,
                          const std::filesystem::path& out_dir, const ExperimentOptions& options) {
  if (std::find(std::begin(kExperimentNames), std::end(kExperimentNames), name) ==
      std::end(kExperimentNames)) {
    throw std::invalid_argument("unknown experiment name: " + name);
  }
  if (seeds.empty()) throw std::invalid_argument("need at least one seed");
  options.grid.validate();

  Emitter emitter(out_dir);
  RunOutcome outcome;
  outcome.manifest.command = "experiment " + name;
  outcome.manifest.seeds = seeds;

  // per method: collected per-seed values
  std::map<std::string, Vec> symkl_by_method;
  std::map<std::string, Vec> auc_by_method;
  std::map<std::string, Vec> ap_by_method;
  std::map<std::string, Vec> gini_by_method;
  // per method, per group: symKL summed over seeds (for the sweep tables)
  std::map<std::string, Vec> group_symkl_by_method;
  std::size_t n_groups = 0;
  std::ostringstream audit_tsv;
  audit_tsv << "seed\tgroup\tcase\tmax_unknown_abs\tknown_spread\tpasses\n";
  bool any_audit_rows = false;

  for (const std::uint64_t seed : seeds) {
    const SyntheticDataset sd = generate(name, seed);
    const DataSplits splits = split_and_standardize(sd.dataset, seed);
    n_groups = sd.ranges.count();

    for (const PenaltyKind kind : benchmark_penalties()) {
      const MethodRun run = run_pipeline(kind, splits, sd.r, sd.ranges, seed, options);
      const std::string method = penalty_kind_name(kind);
      symkl_by_method[method].push_back(run.report.symkl_sum);
      auc_by_method[method].push_back(run.report.auc);
      if (run.report.average_precision) ap_by_method[method].push_back(*run.report.average_precision);
      gini_by_method[method].push_back(run.report.gini);
      auto& per_group = group_symkl_by_method[method];
      per_group.resize(n_groups, 0.0);
      for (const auto& [g, v] : run.report.per_group_symkl) per_group[g] += v;

      json rep = report_json(run, options);
      if (name == "two_feature") {
        rep["log_weight_ratio"] = log_weight_ratio(run.selected.fit.weights, sd.r);
      }
      emitter.write("reports/seed" + std::to_string(seed) + "_" + method + ".json",
                    rep.dump(2) + "\n");

      if (name == "known_fraction" && kind == PenaltyKind::Eye) {
        const auto audits =
            perfect_correlation_audit(run.selected.fit.weights, sd.r, sd.ranges, 1e-3);
        for (const auto& a : audits) {
          const char* case_name = a.audit_case == GroupStructureCase::KnownVsUnknown
                                      ? "known_vs_unknown"
                                      : (a.audit_case == GroupStructureCase::AllKnown
                                             ? "all_known"
                                             : "all_unknown");
          audit_tsv << seed << '\t' << a.group_id << '\t' << case_name << '\t'
                    << fmt(a.max_unknown_abs) << '\t' << fmt(a.known_spread) << '\t'
                    << (a.passes ? 1 : 0) << '\n';
          any_audit_rows = true;
          outcome.audits_passed = outcome.audits_passed && a.passes;
        }
      }
    }

    if (name == "two_feature") {
      emit_two_feature_grids(emitter, seed, splits, sd.r, options);
    }
  }

  // Aggregate summary over seeds (Table-1-style).
  {
    std::ostringstream tsv;
    tsv << "method\tmean_symkl_sum\tstd_symkl_sum\tmean_auc\tstd_auc\tmean_ap\tmean_gini\n";
    for (const PenaltyKind kind : benchmark_penalties()) {
      const std::string method = penalty_kind_name(kind);
      tsv << method << '\t' << fmt(mean_of(symkl_by_method[method])) << '\t'
          << fmt(stdev_of(symkl_by_method[method])) << '\t' << fmt(mean_of(auc_by_method[method]))
          << '\t' << fmt(stdev_of(auc_by_method[method])) << '\t'
          << fmt(mean_of(ap_by_method[method])) << '\t' << fmt(mean_of(gini_by_method[method]))
          << '\n';
    }
    emitter.write("credibility_summary.tsv", tsv.str());
  }

  // Per-group symKL table (the sweep figures).
  if (name == "correlation_sweep" || name == "known_fraction") {
    std::ostringstream tsv;
    tsv << (name == "correlation_sweep" ? "group\tcorrelation" : "group\tn_known");
    for (const PenaltyKind kind : benchmark_penalties()) tsv << '\t' << penalty_kind_name(kind);
    tsv << '\n';
    for (std::size_t g = 0; g < n_groups; ++g) {
      const double x = name == "correlation_sweep" ? static_cast<double>(g) / 10.0
                                                   : static_cast<double>(g);
      tsv << g << '\t' << fmt(x);
      for (const PenaltyKind kind : benchmark_penalties()) {
        const auto& v = group_symkl_by_method[penalty_kind_name(kind)];
        tsv << '\t' << fmt(v[g] / static_cast<double>(seeds.size()));
      }
      tsv << '\n';
    }
    emitter.write("symkl_by_group.tsv", tsv.str());
  }

  if (any_audit_rows) emitter.write("structure_audit.tsv", audit_tsv.str());

  {
    json run_config;
    run_config["experiment"] = name;
    run_config["seeds"] = seeds;
    run_config["options"] = options_json(options);
    emitter.write("run_config.json", run_config.dump(2) + "\n");
  }

  outcome.manifest.timestamp = timestamp_now();
  write_manifest(emitter, outcome.manifest);
  return outcome;
}

RunOutcome train_on_csv(const std::filesystem::path& data_csv, const std::filesystem::path& r_file,
                        PenaltyKind kind, const std::filesystem::path& out_dir,
                        const ExperimentOptions& options) {
  options.grid.validate();
  const NamedDataset named = read_csv(data_csv);
  for (double y : named.data.targets()) {
    if (y != 0.0 && y != 1.0) {
      throw DataFormatError(data_csv.string() + ": label column must be 0/1 for classification");
    }
  }
  const KnowledgeVector r = read_known_features(r_file, named.feature_names);
  const DataSplits splits = split_and_standardize(named.data, options.train.seed);

  Emitter emitter(out_dir);
  RunOutcome outcome;
  outcome.manifest.command = "train_on_csv " + data_csv.string();
  outcome.manifest.seeds = {options.train.seed};

  const MethodRun run = run_pipeline(kind, splits, r, std::nullopt, options.train.seed, options);

  json rep = report_json(run, options);
  if (!run.report.average_precision) {
    rep["average_precision_error"] = "average precision undefined: no known features listed";
  }
  emitter.write("report.json", rep.dump(2) + "\n");

  json weights;
  weights["intercept"] = run.selected.fit.weights.intercept;
  json coef = json::object();
  for (std::size_t j = 0; j < named.feature_names.size(); ++j) {
    coef[named.feature_names[j]] = run.selected.fit.weights.theta[j];
  }
  weights["coefficients"] = coef;
  weights["penalty"] = penalty_kind_name(kind);
  weights["lambda"] = run.selected.lambda;
  weights["variant"] = run.selected.variant;
  emitter.write("selected_model.json", weights.dump(2) + "\n");

  outcome.manifest.timestamp = timestamp_now();
  write_manifest(emitter, outcome.manifest);
  return outcome;
}

}  // namespace credible
