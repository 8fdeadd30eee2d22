#include "credible/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "credible/kernels.hpp"

namespace credible {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

FeatureGroups ranges_of(const std::vector<GroupSpec>& groups) {
  FeatureGroups fg;
  std::size_t first = 0;
  for (const GroupSpec& g : groups) {
    fg.ranges.emplace_back(first, first + g.size);
    first += g.size;
  }
  return fg;
}

KnowledgeVector knowledge_of(const std::vector<GroupSpec>& groups) {
  Vec r;
  for (const GroupSpec& g : groups) {
    for (std::size_t i = 0; i < g.size; ++i) r.push_back(i < g.n_known ? 1.0 : 0.0);
  }
  return KnowledgeVector(std::move(r));
}

Vec leading_mask(std::size_t size, std::size_t n_known) {
  Vec mask(size, 0.0);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(n_known), 1.0);
  return mask;
}

Vec theta_of(const std::vector<GroupSpec>& groups) {
  Vec theta;
  for (const GroupSpec& g : groups) {
    const Vec part = distribute_group_weight(g.group_weight, leading_mask(g.size, g.n_known));
    theta.insert(theta.end(), part.begin(), part.end());
  }
  return theta;
}

void bernoulli_sigmoid_labels(SyntheticDataset& sd, std::mt19937_64& rng) {
  Dataset& data = sd.dataset;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const double z = kernels::dot(data.row(i).data(), sd.true_theta.data(), data.cols());
    data.targets()[i] = unif(rng) < sigmoid(z) ? 1.0 : 0.0;
  }
}

SyntheticDataset assemble(std::vector<GroupSpec> groups, std::size_t n, std::mt19937_64& rng,
                          std::uint64_t sample_seed) {
  SyntheticDataset sd;
  sd.groups = std::move(groups);
  sd.ranges = ranges_of(sd.groups);
  sd.r = knowledge_of(sd.groups);
  sd.true_theta = theta_of(sd.groups);
  sd.dataset = sample_block_gaussian(sd.groups, n, sample_seed);
  sd.dataset.groups = sd.ranges;
  bernoulli_sigmoid_labels(sd, rng);
  return sd;
}

}  // namespace

Vec distribute_group_weight(double group_weight, const Vec& known_mask) {
  const std::size_t size = known_mask.size();
  if (size == 0) throw std::invalid_argument("group size must be positive");
  std::size_t n_known = 0;
  for (double m : known_mask) {
    if (m != 0.0 && m != 1.0) throw std::invalid_argument("known mask entries must be 0 or 1");
    n_known += (m == 1.0);
  }
  Vec theta(size, 0.0);
  if (n_known == 0) {
    // No known members: spread the relevance uniformly over the whole group.
    const double v = group_weight / static_cast<double>(size);
    std::fill(theta.begin(), theta.end(), v);
  } else {
    const double v = group_weight / static_cast<double>(n_known);
    for (std::size_t i = 0; i < size; ++i) theta[i] = known_mask[i] == 1.0 ? v : 0.0;
  }
  return theta;
}

Dataset sample_block_gaussian(const std::vector<GroupSpec>& groups, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample count must be positive");
  std::size_t d = 0;
  for (const GroupSpec& g : groups) {
    if (g.size == 0) throw std::invalid_argument("group size must be positive");
    if (!(g.correlation >= 0.0 && g.correlation <= 1.0)) {
      throw std::invalid_argument("group correlation must lie in [0, 1]");
    }
    d += g.size;
  }
  Dataset data(n, d);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = data.row(i);
    std::size_t j = 0;
    for (const GroupSpec& g : groups) {
      const double shared = normal(rng);
      if (g.correlation == 1.0) {
        // Exact duplication rather than a singular Gaussian.
        for (std::size_t k = 0; k < g.size; ++k) row[j++] = shared;
      } else {
        const double a = std::sqrt(g.correlation);
        const double b = std::sqrt(1.0 - g.correlation);
        for (std::size_t k = 0; k < g.size; ++k) row[j++] = a * shared + b * normal(rng);
      }
    }
  }
  return data;
}

SyntheticDataset gen_two_feature_perfect(std::uint64_t seed) {
  const std::size_t n = 100;
  SyntheticDataset sd;
  sd.groups = {GroupSpec{2, 1.0, 1, 2.0}};
  sd.ranges = ranges_of(sd.groups);
  sd.r = knowledge_of(sd.groups);
  sd.true_theta = {1.0, 1.0};
  sd.dataset = Dataset(n, 2);
  sd.dataset.groups = sd.ranges;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-2.5, 1.5);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = unif(rng);
    sd.dataset.at(i, 0) = v;
    sd.dataset.at(i, 1) = v;
    const double z = sd.true_theta[0] * v + sd.true_theta[1] * v;
    sd.dataset.targets()[i] = z > 0.0 ? 1.0 : 0.0;
  }
  return sd;
}

SyntheticDataset gen_correlation_sweep(std::uint64_t seed) {
  std::vector<GroupSpec> groups;
  for (std::size_t g = 0; g < 10; ++g) {
    groups.push_back(GroupSpec{30, static_cast<double>(g) / 10.0, 15, 1.0});
  }
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  return assemble(std::move(groups), 5000, rng, seed);
}

SyntheticDataset gen_known_fraction_sweep(std::uint64_t seed) {
  std::vector<GroupSpec> groups;
  for (std::size_t g = 0; g <= 10; ++g) {
    groups.push_back(GroupSpec{10, 1.0, g, 1.0});
  }
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  return assemble(std::move(groups), 5000, rng, seed);
}

SyntheticDataset gen_expert_mistake_process(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::poisson_distribution<int> group_count_dist(10.0);
  std::poisson_distribution<int> group_size_dist(20.0);
  std::normal_distribution<double> weight_dist(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  int n_groups = 0;
  while (n_groups == 0) n_groups = group_count_dist(rng);

  std::vector<GroupSpec> groups;
  groups.reserve(static_cast<std::size_t>(n_groups));
  for (int g = 0; g < n_groups; ++g) {
    GroupSpec spec;
    spec.correlation = 0.95;
    spec.group_weight = weight_dist(rng);
    int size = 0;
    while (size == 0) size = group_size_dist(rng);
    spec.size = static_cast<std::size_t>(size);
    spec.n_known = 0;
    for (std::size_t k = 0; k < spec.size; ++k) spec.n_known += (unif(rng) < 0.5);
    groups.push_back(spec);
  }
  return assemble(std::move(groups), 5000, rng, seed ^ 0xc2b2ae3d27d4eb4fULL);
}

}  // namespace credible
