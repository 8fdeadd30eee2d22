#pragma once

// Experiment orchestration behind the CLI: generate (or load) data, run every
// benchmark penalty through the selection pipeline, and emit credibility
// reports plus plot-ready tables with a hashed run manifest.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "credible/selection.hpp"
#include "credible/types.hpp"

namespace credible {

struct ExperimentOptions {
  GridSpec grid = GridSpec::synthetic_default();
  double alpha = 0.05;
  double symkl_epsilon = 1e-8;
  TrainConfig train;
  int bootstrap_replicates = 100;
};

struct RunArtifact {
  std::string path;      // relative to the run directory
  std::string fnv1a64;   // content hash, hex
};

struct RunManifest {
  std::string command;
  std::vector<std::uint64_t> seeds;
  std::string timestamp;
  std::vector<RunArtifact> artifacts;
};

struct RunOutcome {
  RunManifest manifest;
  bool audits_passed = true;
};

// Penalties swept in every experiment (ridge is excluded: it cannot produce
// a sparse model; the naive penalty appears only in the two-feature grid).
const std::vector<PenaltyKind>& benchmark_penalties();

// name is one of: two_feature, correlation_sweep, known_fraction,
// expert_mistake.
RunOutcome run_experiment(const std::string& name, const std::vector<std::uint64_t>& seeds,
                          const std::filesystem::path& out_dir, const ExperimentOptions& options);

RunOutcome train_on_csv(const std::filesystem::path& data_csv, const std::filesystem::path& r_file,
                        PenaltyKind kind, const std::filesystem::path& out_dir,
                        const ExperimentOptions& options);

std::uint64_t fnv1a64(const void* bytes, std::size_t len);

}  // namespace credible
