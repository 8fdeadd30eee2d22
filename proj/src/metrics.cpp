#include "credible/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace credible {

namespace {

Vec floored_distribution(const Vec& v, double epsilon) {
  Vec p(v.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    p[i] = std::max(std::fabs(v[i]), epsilon);
    sum += p[i];
  }
  for (double& x : p) x /= sum;
  return p;
}

double kl(const Vec& p, const Vec& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * std::log(p[i] / q[i]);
  return s;
}

}  // namespace

double sym_kl(const Vec& theta_group, const Vec& r_group, double epsilon) {
  if (theta_group.empty() || theta_group.size() != r_group.size()) {
    throw std::invalid_argument("sym_kl requires two nonempty vectors of equal length");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("sym_kl epsilon must be positive");
  const Vec p = floored_distribution(theta_group, epsilon);
  const Vec q = floored_distribution(r_group, epsilon);
  return 0.5 * (kl(p, q) + kl(q, p));
}

std::vector<std::pair<std::size_t, double>> group_credibility(const WeightVector& weights,
                                                              const KnowledgeVector& r,
                                                              const FeatureGroups& groups,
                                                              double epsilon) {
  const std::size_t d = weights.dim();
  if (r.size() != d) throw std::invalid_argument("knowledge vector dimension mismatch");
  groups.validate(d);

  std::vector<std::pair<std::size_t, double>> out;
  out.reserve(groups.count());
  for (std::size_t g = 0; g < groups.count(); ++g) {
    const auto [first, last] = groups.ranges[g];
    const std::size_t m = last - first;
    Vec theta_g(weights.theta.begin() + static_cast<std::ptrdiff_t>(first),
                weights.theta.begin() + static_cast<std::ptrdiff_t>(last));
    Vec r_g(r.values().begin() + static_cast<std::ptrdiff_t>(first),
            r.values().begin() + static_cast<std::ptrdiff_t>(last));
    const bool has_known = std::any_of(r_g.begin(), r_g.end(), [](double v) { return v > 0.0; });
    double value;
    if (has_known) {
      value = sym_kl(theta_g, r_g, epsilon);
    } else {
      // No known factors: sparsity target, best one-hot explanation.
      value = std::numeric_limits<double>::infinity();
      Vec one_hot(m, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        one_hot[i] = 1.0;
        value = std::min(value, sym_kl(one_hot, theta_g, epsilon));
        one_hot[i] = 0.0;
      }
    }
    out.emplace_back(g, value);
  }
  return out;
}

double average_precision(const Vec& abs_weights, const KnowledgeVector& r) {
  const std::size_t d = abs_weights.size();
  if (r.size() != d) throw std::invalid_argument("knowledge vector dimension mismatch");
  if (r.count_known() == 0) {
    throw std::invalid_argument("average precision undefined: no known features");
  }
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(abs_weights[a]) > std::fabs(abs_weights[b]);
  });
  double hits = 0.0;
  double ap = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    if (r[order[k]] > 0.0) {
      hits += 1.0;
      ap += hits / static_cast<double>(k + 1);
    }
  }
  return ap / hits;
}

double roc_auc(const Vec& scores, const std::vector<int>& labels) {
  const std::size_t n = scores.size();
  if (labels.size() != n || n == 0) {
    throw std::invalid_argument("roc_auc requires matching nonempty scores and labels");
  }
  std::size_t n_pos = 0;
  for (int y : labels) {
    if (y != 0 && y != 1) throw std::invalid_argument("labels must be 0/1");
    n_pos += static_cast<std::size_t>(y);
  }
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw std::invalid_argument("roc_auc undefined for single-class labels");
  }

  // Rank-sum with average ranks over tied scores.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based
    for (std::size_t k = i; k <= j; ++k) {
      if (labels[order[k]] == 1) rank_sum_pos += avg_rank;
    }
    i = j + 1;
  }
  const double u = rank_sum_pos - 0.5 * static_cast<double>(n_pos) * static_cast<double>(n_pos + 1);
  return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

Vec max_aggregate_scores(const std::vector<Vec>& per_entity_scores) {
  Vec out;
  out.reserve(per_entity_scores.size());
  for (const Vec& s : per_entity_scores) {
    if (s.empty()) throw std::invalid_argument("entity with no scores");
    out.push_back(*std::max_element(s.begin(), s.end()));
  }
  return out;
}

double gini_sparsity(const WeightVector& weights) {
  const std::size_t d = weights.dim();
  if (d == 0) throw std::invalid_argument("gini_sparsity requires a nonempty weight vector");
  Vec c(d);
  for (std::size_t i = 0; i < d; ++i) c[i] = std::fabs(weights.theta[i]);
  std::sort(c.begin(), c.end());
  const double norm1 = std::accumulate(c.begin(), c.end(), 0.0);
  if (norm1 == 0.0) return 1.0;  // all-zero weights: maximally sparse by convention
  double s = 0.0;
  const double dd = static_cast<double>(d);
  for (std::size_t k = 1; k <= d; ++k) {
    s += (c[k - 1] / norm1) * ((dd - static_cast<double>(k) + 0.5) / dd);
  }
  return 1.0 - 2.0 * s;
}

double log_weight_ratio(const WeightVector& weights, const KnowledgeVector& r) {
  if (weights.dim() != 2 || r.size() != 2) {
    throw std::invalid_argument("log_weight_ratio is defined for exactly two features");
  }
  const bool k0 = r[0] == 1.0 && r[1] == 0.0;
  const bool k1 = r[0] == 0.0 && r[1] == 1.0;
  if (!k0 && !k1) throw std::invalid_argument("log_weight_ratio requires a one-hot knowledge vector");
  const double known = std::fabs(weights.theta[k0 ? 0 : 1]);
  const double unknown = std::fabs(weights.theta[k0 ? 1 : 0]);
  const double floor = 1e-12;
  return std::log(std::max(known, floor) / std::max(unknown, floor));
}

}  // namespace credible
