#pragma once

// Hyperparameter grid training with bootstrap-based significance filtering
// and sparsest-model selection: train one candidate per grid point, drop the
// ones significantly worse than the best on 100 paired bootstrap replicates
// of the validation split, keep the sparsest survivor.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "credible/data_io.hpp"
#include "credible/metrics.hpp"
#include "credible/optimizer.hpp"
#include "credible/types.hpp"

namespace credible {

struct GridSpec {
  Vec lambdas;             // ascending, all > 0
  Vec betas;               // beta-bearing penalties only
  Vec weight_multipliers;  // weighted variants: unknown-feature weight, in [1, 3]
  bool owl_top_only = true;      // scheme penalizing only the largest coefficient
  bool owl_top_m_double = true;  // scheme doubling the weight of the top m entries

  void validate() const;

  // 13 log-spaced points, 1e-6 .. 1e0: enough span for the synthetic suite.
  static GridSpec synthetic_default();
  // 21 log-spaced points, 1e-10 .. 1e10, for user data.
  static GridSpec wide_default();
};

struct CandidateModel {
  PenaltySpec spec;
  double lambda = 0.0;
  std::string variant;  // grid-point label beyond lambda, e.g. "beta=0.5"
  FitResult fit;
  Vec val_auc_bootstrap;  // exactly n_bootstrap entries, paired across candidates
  double gini = 0.0;
};

struct FailedCandidate {
  double lambda = 0.0;
  std::string variant;
  std::string reason;
};

struct TrainGridResult {
  std::vector<CandidateModel> candidates;
  std::vector<FailedCandidate> failures;
};

// All grid points for a penalty kind: lambdas cross betas for NaiveQ and
// ElasticNet, multipliers for the weighted variants, the two weight schemes
// for OWL, lambdas alone otherwise.
std::vector<std::pair<PenaltySpec, std::string>> enumerate_grid(PenaltyKind kind,
                                                                const GridSpec& grid,
                                                                const KnowledgeVector& r);

TrainGridResult train_grid(PenaltyKind kind, const GridSpec& grid, const DataSplits& splits,
                           const KnowledgeVector& r, const TrainConfig& config,
                           LossKind loss = LossKind::Logistic, int n_bootstrap = 100);

// Bootstrap resample of row indices; a draw that would leave a single class
// is redrawn from the same stream. Shared across candidates (depends only on
// seed and labels), which is what makes the filter's test paired.
std::vector<std::size_t> bootstrap_indices(const std::vector<int>& labels, std::uint64_t seed);

// Keep candidates not significantly worse than the best mean-AUC candidate:
// candidate c survives iff the fraction of paired replicates where the best
// beats it is at most 1 - alpha. The best candidate always survives.
std::vector<CandidateModel> bootstrap_filter(const std::vector<CandidateModel>& candidates,
                                             double alpha);

// Highest Gini; ties broken by larger lambda, then by grid order.
const CandidateModel& select_sparsest(const std::vector<CandidateModel>& filtered);

}  // namespace credible
