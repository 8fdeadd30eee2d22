// Command-line front end: synthetic experiment runs and the grid-search
// pipeline on user CSV data.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 audit failure.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "credible/data_io.hpp"
#include "credible/experiments.hpp"
#include "credible/kernels.hpp"

namespace {

struct CommonArgs {
  std::uint64_t seed = 1;
  std::string out_dir;
  std::vector<double> lambda_grid;
  double alpha = 0.05;
  double epsilon_symkl = 1e-8;
  int max_epochs = 5000;
};

void apply_common(credible::ExperimentOptions& options, const CommonArgs& args) {
  options.alpha = args.alpha;
  options.symkl_epsilon = args.epsilon_symkl;
  options.train.max_epochs = args.max_epochs;
  options.train.seed = args.seed;
  if (!args.lambda_grid.empty()) {
    options.grid.lambdas = args.lambda_grid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"credible: expert-guided regularized linear models"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string experiment_name;
  int num_seeds = 1;
  std::string data_path;
  std::string r_path;
  std::string penalty_name = "eye";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", args.seed, "Base seed");
    cmd->add_option("--out", args.out_dir, "Output directory")->required();
    cmd->add_option("--lambda-grid", args.lambda_grid, "Explicit lambda grid (ascending)");
    cmd->add_option("--alpha", args.alpha, "Significance level for the bootstrap filter");
    cmd->add_option("--epsilon-symkl", args.epsilon_symkl, "Floor applied before symKL normalization");
    cmd->add_option("--max-epochs", args.max_epochs, "Training epoch cap");
  };

  CLI::App* experiment = app.add_subcommand("experiment", "Run a synthetic benchmark experiment");
  experiment
      ->add_option("--name", experiment_name,
                   "One of: two_feature, correlation_sweep, known_fraction, expert_mistake")
      ->required();
  experiment->add_option("--num-seeds", num_seeds, "Number of consecutive seeds starting at --seed");
  add_common(experiment);

  CLI::App* train = app.add_subcommand("train-csv", "Run the selection pipeline on CSV data");
  train->add_option("--data", data_path, "CSV with numeric feature columns and a 'label' column")
      ->required();
  train->add_option("--r-file", r_path, "Newline-delimited known feature names")->required();
  train->add_option("--penalty", penalty_name,
                    "eye, naive_q, lasso, ridge, elastic_net, owl, weighted_lasso, weighted_ridge");
  add_common(train);

  CLI11_PARSE(app, argc, argv);

  try {
    credible::ExperimentOptions options;
    if (app.got_subcommand(train)) {
      options.grid = credible::GridSpec::wide_default();
    }
    apply_common(options, args);

    credible::RunOutcome outcome;
    if (app.got_subcommand(experiment)) {
      if (num_seeds < 1) {
        std::fprintf(stderr, "error: --num-seeds must be at least 1\n");
        return 1;
      }
      std::vector<std::uint64_t> seeds;
      for (int s = 0; s < num_seeds; ++s) seeds.push_back(args.seed + static_cast<std::uint64_t>(s));
      outcome = credible::run_experiment(experiment_name, seeds, args.out_dir, options);
    } else {
      const credible::PenaltyKind kind = credible::penalty_kind_from_name(penalty_name);
      outcome = credible::train_on_csv(data_path, r_path, kind, args.out_dir, options);
    }

    std::printf("kernels: %s\n", std::string(credible::kernels::active_isa_name()).c_str());
    std::printf("wrote %zu artifacts to %s\n", outcome.manifest.artifacts.size(),
                args.out_dir.c_str());
    if (!outcome.audits_passed) {
      std::fprintf(stderr, "error: structural audits failed (see structure_audit.tsv)\n");
      return 3;
    }
    return 0;
  } catch (const credible::DataFormatError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
