#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace credible {

using Vec = std::vector<double>;

inline bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

// Contiguous feature groups [first, last) that partition [0, d).
struct FeatureGroups {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;

  std::size_t count() const { return ranges.size(); }

  void validate(std::size_t dim) const {
    std::size_t expect = 0;
    for (const auto& [first, last] : ranges) {
      if (first != expect || last <= first) {
        throw std::invalid_argument("feature groups must be nonempty contiguous ranges partitioning the feature set");
      }
      expect = last;
    }
    if (expect != dim) {
      throw std::invalid_argument("feature groups do not cover all features");
    }
  }
};

// Expert indicator over features: r[i] in [0, 1], binary in standard use.
class KnowledgeVector {
 public:
  KnowledgeVector() = default;
  explicit KnowledgeVector(Vec r) : r_(std::move(r)) {
    for (double v : r_) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("knowledge indicator entries must lie in [0, 1]");
      }
    }
    complement_.resize(r_.size());
    for (std::size_t i = 0; i < r_.size(); ++i) complement_[i] = 1.0 - r_[i];
  }

  static KnowledgeVector all_known(std::size_t d) { return KnowledgeVector(Vec(d, 1.0)); }
  static KnowledgeVector none_known(std::size_t d) { return KnowledgeVector(Vec(d, 0.0)); }

  std::size_t size() const { return r_.size(); }
  double operator[](std::size_t i) const { return r_[i]; }
  const Vec& values() const { return r_; }
  const double* data() const { return r_.data(); }
  // 1 - r, cached for the masked-norm kernels
  const Vec& complement() const { return complement_; }

  std::size_t count_known() const {
    std::size_t k = 0;
    for (double v : r_) k += (v > 0.0);
    return k;
  }

 private:
  Vec r_;
  Vec complement_;
};

// Model coefficients plus unpenalized intercept.
struct WeightVector {
  Vec theta;
  double intercept = 0.0;

  std::size_t dim() const { return theta.size(); }
};

// Row-major design matrix with targets and optional group annotation.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::size_t rows, std::size_t cols)
      : n_(rows), d_(cols), x_(rows * cols, 0.0), y_(rows, 0.0) {}

  std::size_t rows() const { return n_; }
  std::size_t cols() const { return d_; }

  double& at(std::size_t i, std::size_t j) { return x_[i * d_ + j]; }
  double at(std::size_t i, std::size_t j) const { return x_[i * d_ + j]; }

  std::span<const double> row(std::size_t i) const { return {x_.data() + i * d_, d_}; }
  std::span<double> row(std::size_t i) { return {x_.data() + i * d_, d_}; }

  const Vec& targets() const { return y_; }
  Vec& targets() { return y_; }

  const Vec& raw() const { return x_; }
  Vec& raw() { return x_; }

  Vec column(std::size_t j) const {
    Vec c(n_);
    for (std::size_t i = 0; i < n_; ++i) c[i] = x_[i * d_ + j];
    return c;
  }

  std::optional<FeatureGroups> groups;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  Vec x_;
  Vec y_;
};

enum class PenaltyKind {
  Eye,
  NaiveQ,
  Lasso,
  Ridge,
  ElasticNet,
  Owl,
  WeightedLasso,
  WeightedRidge,
};

const char* penalty_kind_name(PenaltyKind kind);
PenaltyKind penalty_kind_from_name(const std::string& name);

// Tagged penalty choice with its hyperparameters. beta is meaningful only for
// NaiveQ (strictly inside (0,1)) and ElasticNet ([0,1]); owl_weights only for
// Owl; feature_weights only for the weighted variants.
struct PenaltySpec {
  PenaltyKind kind = PenaltyKind::Eye;
  double beta = 0.0;
  Vec owl_weights;
  Vec feature_weights;

  void validate(std::size_t dim) const;

  static PenaltySpec eye() { return {PenaltyKind::Eye}; }
  static PenaltySpec naive_q(double beta) { return {PenaltyKind::NaiveQ, beta}; }
  static PenaltySpec lasso() { return {PenaltyKind::Lasso}; }
  static PenaltySpec ridge() { return {PenaltyKind::Ridge}; }
  static PenaltySpec elastic_net(double beta) { return {PenaltyKind::ElasticNet, beta}; }
  static PenaltySpec owl(Vec weights) {
    PenaltySpec s{PenaltyKind::Owl};
    s.owl_weights = std::move(weights);
    return s;
  }
  static PenaltySpec weighted_lasso(Vec weights) {
    PenaltySpec s{PenaltyKind::WeightedLasso};
    s.feature_weights = std::move(weights);
    return s;
  }
  static PenaltySpec weighted_ridge(Vec weights) {
    PenaltySpec s{PenaltyKind::WeightedRidge};
    s.feature_weights = std::move(weights);
    return s;
  }
};

}  // namespace credible
