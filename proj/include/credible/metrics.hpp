#pragma once

// Credibility and performance metrics: symmetric KL structure score against
// the expert indicator, average precision, ROC AUC, Gini sparsity, and the
// two-feature log weight ratio. Natural logarithm throughout.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "credible/types.hpp"

namespace credible {

// Everything the credibility measurement produces for one selected model.
struct CredibilityReport {
  std::vector<std::pair<std::size_t, double>> per_group_symkl;
  double symkl_sum = 0.0;
  std::optional<double> average_precision;  // absent when r has no known features
  double auc = 0.0;
  double gini = 0.0;
  // provenance of the selected model
  std::string penalty;
  std::string variant;
  double lambda = 0.0;
  std::uint64_t seed = 0;
};

// Symmetric KL between two nonnegative shape vectors. Both inputs are taken
// elementwise-absolute, floored at epsilon, and normalized to probability
// vectors first.
double sym_kl(const Vec& theta_group, const Vec& r_group, double epsilon);

// Per-group credibility: for groups containing known factors, symKL between
// the normalized |theta| and the normalized r restricted to the group; for
// groups with no known factors, the minimum symKL against any one-hot vector.
std::vector<std::pair<std::size_t, double>> group_credibility(const WeightVector& weights,
                                                              const KnowledgeVector& r,
                                                              const FeatureGroups& groups,
                                                              double epsilon);

// Average precision of ranking features by |theta| (descending, ties broken
// by ascending index) against the binary relevance r.
double average_precision(const Vec& abs_weights, const KnowledgeVector& r);

// Mann-Whitney AUC; ties between a positive and a negative score count 1/2.
double roc_auc(const Vec& scores, const std::vector<int>& labels);

// Max score per entity; sweeping a threshold over the maxima reproduces the
// "ever exceeds the threshold" classification rule.
Vec max_aggregate_scores(const std::vector<Vec>& per_entity_scores);

// Hurley-Rickard Gini sparsity of |theta|, in [0, 1); all-zero weights count
// as maximally sparse (1).
double gini_sparsity(const WeightVector& weights);

// log(|theta_known| / |theta_unknown|) for the two-feature setting with a
// one-hot r; both magnitudes floored at 1e-12.
double log_weight_ratio(const WeightVector& weights, const KnowledgeVector& r);

}  // namespace credible
