#pragma once

// Deterministic generators for the synthetic benchmarks: a block-correlated
// Gaussian sampler and the four experiment datasets built on it. Same seed,
// same bytes.

#include <cstdint>
#include <vector>

#include "credible/types.hpp"

namespace credible {

struct GroupSpec {
  std::size_t size = 0;       // features in the group
  double correlation = 0.0;   // intra-group pairwise correlation, in [0, 1]
  std::size_t n_known = 0;    // leading members marked known
  double group_weight = 0.0;  // total true relevance of the group
};

struct SyntheticDataset {
  Dataset dataset;  // carries the group annotation
  KnowledgeVector r;
  Vec true_theta;
  std::vector<GroupSpec> groups;
  FeatureGroups ranges;
};

// n i.i.d. rows from N(0, C): unit diagonal, intra-group off-diagonal equal to
// the group correlation, zero across groups. Perfect correlation is generated
// by column duplication. Targets are left at zero.
Dataset sample_block_gaussian(const std::vector<GroupSpec>& groups, std::size_t n, std::uint64_t seed);

// Distribute a group weight uniformly over the marked members (over all
// members when none are marked).
Vec distribute_group_weight(double group_weight, const Vec& known_mask);

// Two perfectly correlated copies of v ~ U(-2.5, 1.5)^100, r = [1, 0],
// true theta = [1, 1], labels 1{theta.x > 0}.
SyntheticDataset gen_two_feature_perfect(std::uint64_t seed);

// 10 groups x 30 features, 15 known each, group g at correlation g/10,
// 5000 rows, Bernoulli(sigmoid) labels.
SyntheticDataset gen_correlation_sweep(std::uint64_t seed);

// 11 groups x 10 features, group i with i known members, perfect intra-group
// correlation, 5000 rows, Bernoulli(sigmoid) labels.
SyntheticDataset gen_known_fraction_sweep(std::uint64_t seed);

// Group count ~ Poisson(10), per-group weight ~ N(0,1), size ~ Poisson(20),
// known flags ~ Bernoulli(0.5), intra-group correlation 0.95, 5000 rows,
// Bernoulli(sigmoid) labels. Zero draws from the Poissons are resampled.
SyntheticDataset gen_expert_mistake_process(std::uint64_t seed);

}  // namespace credible
