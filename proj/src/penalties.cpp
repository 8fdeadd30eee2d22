#include "credible/penalties.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "credible/kernels.hpp"

namespace credible {

namespace {

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

void check_theta(const WeightVector& theta) {
  if (!all_finite(theta.theta) || !std::isfinite(theta.intercept)) {
    throw std::invalid_argument("weight vector has non-finite entries");
  }
}

void check_pair(const WeightVector& theta, const KnowledgeVector& r) {
  if (theta.dim() != r.size()) {
    throw std::invalid_argument("weight vector and knowledge vector dimensions differ");
  }
  check_theta(theta);
}

// Indices sorted by descending |theta|, ties keeping the lower index first so
// it receives the larger (earlier) OWL weight.
std::vector<std::size_t> magnitude_order(const Vec& theta) {
  std::vector<std::size_t> idx(theta.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(theta[a]) > std::fabs(theta[b]);
  });
  return idx;
}

}  // namespace

const char* penalty_kind_name(PenaltyKind kind) {
  switch (kind) {
    case PenaltyKind::Eye: return "eye";
    case PenaltyKind::NaiveQ: return "naive_q";
    case PenaltyKind::Lasso: return "lasso";
    case PenaltyKind::Ridge: return "ridge";
    case PenaltyKind::ElasticNet: return "elastic_net";
    case PenaltyKind::Owl: return "owl";
    case PenaltyKind::WeightedLasso: return "weighted_lasso";
    case PenaltyKind::WeightedRidge: return "weighted_ridge";
  }
  return "unknown";
}

PenaltyKind penalty_kind_from_name(const std::string& name) {
  if (name == "eye") return PenaltyKind::Eye;
  if (name == "naive_q") return PenaltyKind::NaiveQ;
  if (name == "lasso") return PenaltyKind::Lasso;
  if (name == "ridge") return PenaltyKind::Ridge;
  if (name == "elastic_net") return PenaltyKind::ElasticNet;
  if (name == "owl") return PenaltyKind::Owl;
  if (name == "weighted_lasso") return PenaltyKind::WeightedLasso;
  if (name == "weighted_ridge") return PenaltyKind::WeightedRidge;
  throw std::invalid_argument("unknown penalty kind: " + name);
}

void PenaltySpec::validate(std::size_t dim) const {
  switch (kind) {
    case PenaltyKind::NaiveQ:
      if (!(beta > 0.0 && beta < 1.0)) {
        throw std::invalid_argument("naive penalty requires beta strictly inside (0, 1)");
      }
      break;
    case PenaltyKind::ElasticNet:
      if (!(beta >= 0.0 && beta <= 1.0)) {
        throw std::invalid_argument("elastic net requires beta in [0, 1]");
      }
      break;
    case PenaltyKind::Owl: {
      if (owl_weights.size() != dim) {
        throw std::invalid_argument("owl weights must have one entry per feature");
      }
      double prev = std::numeric_limits<double>::infinity();
      for (double w : owl_weights) {
        if (!(w >= 0.0) || w > prev) {
          throw std::invalid_argument("owl weights must be nonnegative and nonincreasing");
        }
        prev = w;
      }
      break;
    }
    case PenaltyKind::WeightedLasso:
    case PenaltyKind::WeightedRidge:
      if (feature_weights.size() != dim) {
        throw std::invalid_argument("feature weights must have one entry per feature");
      }
      for (double w : feature_weights) {
        if (!(w >= 0.0)) throw std::invalid_argument("feature weights must be nonnegative");
      }
      break;
    case PenaltyKind::Eye:
    case PenaltyKind::Lasso:
    case PenaltyKind::Ridge:
      break;
  }
}

EyeDecomposition eye_decompose(const WeightVector& theta, const KnowledgeVector& r) {
  check_pair(theta, r);
  const std::size_t d = theta.dim();
  const double l1 = kernels::weighted_abs_sum(r.complement().data(), theta.theta.data(), d);
  const double l2sq = kernels::weighted_sq_sum(r.data(), theta.theta.data(), d);
  EyeDecomposition parts;
  parts.l1_unknown = l1;
  parts.l2sq_known = l2sq;
  parts.z = std::sqrt(l1 * l1 + l2sq);
  return parts;
}

double eye_value(const WeightVector& theta, const KnowledgeVector& r) {
  return eye_decompose(theta, r).value();
}

Vec eye_subgradient(const WeightVector& theta, const KnowledgeVector& r) {
  const EyeDecomposition parts = eye_decompose(theta, r);
  const std::size_t d = theta.dim();
  Vec g(d, 0.0);
  if (parts.z == 0.0) return g;  // theta == 0: pick the zero subgradient
  for (std::size_t i = 0; i < d; ++i) {
    const double s = sgn(theta.theta[i]);
    const double u = (1.0 - r[i]) * s;
    g[i] = u + (parts.l1_unknown * u + r[i] * r[i] * theta.theta[i]) / parts.z;
  }
  return g;
}

double naive_q_value(const WeightVector& theta, const KnowledgeVector& r, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("naive penalty requires beta strictly inside (0, 1)");
  }
  check_pair(theta, r);
  const std::size_t d = theta.dim();
  const double l1 = kernels::weighted_abs_sum(r.complement().data(), theta.theta.data(), d);
  const double l2sq = kernels::weighted_sq_sum(r.data(), theta.theta.data(), d);
  return (1.0 - beta) * l2sq + 2.0 * beta * l1;
}

Vec naive_q_subgradient(const WeightVector& theta, const KnowledgeVector& r, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("naive penalty requires beta strictly inside (0, 1)");
  }
  check_pair(theta, r);
  const std::size_t d = theta.dim();
  Vec g(d);
  for (std::size_t i = 0; i < d; ++i) {
    g[i] = 2.0 * (1.0 - beta) * r[i] * r[i] * theta.theta[i] +
           2.0 * beta * (1.0 - r[i]) * sgn(theta.theta[i]);
  }
  return g;
}

double baseline_value(const PenaltySpec& spec, const WeightVector& theta) {
  check_theta(theta);
  spec.validate(theta.dim());
  const std::size_t d = theta.dim();
  const double* t = theta.theta.data();
  switch (spec.kind) {
    case PenaltyKind::Lasso:
      return kernels::abs_sum(t, d);
    case PenaltyKind::Ridge:
      return 0.5 * kernels::dot(t, t, d);
    case PenaltyKind::ElasticNet:
      return spec.beta * kernels::abs_sum(t, d) + 0.5 * (1.0 - spec.beta) * kernels::dot(t, t, d);
    case PenaltyKind::Owl: {
      const auto order = magnitude_order(theta.theta);
      double v = 0.0;
      for (std::size_t rank = 0; rank < d; ++rank) {
        v += spec.owl_weights[rank] * std::fabs(theta.theta[order[rank]]);
      }
      return v;
    }
    case PenaltyKind::WeightedLasso:
      return kernels::weighted_abs_sum(spec.feature_weights.data(), t, d);
    case PenaltyKind::WeightedRidge:
      return 0.5 * kernels::weighted_sq_sum(spec.feature_weights.data(), t, d);
    case PenaltyKind::Eye:
    case PenaltyKind::NaiveQ:
      break;
  }
  throw std::invalid_argument("baseline_value does not handle knowledge-bearing penalties");
}

Vec baseline_subgradient(const PenaltySpec& spec, const WeightVector& theta) {
  check_theta(theta);
  spec.validate(theta.dim());
  const std::size_t d = theta.dim();
  Vec g(d, 0.0);
  switch (spec.kind) {
    case PenaltyKind::Lasso:
      for (std::size_t i = 0; i < d; ++i) g[i] = sgn(theta.theta[i]);
      return g;
    case PenaltyKind::Ridge:
      return theta.theta;
    case PenaltyKind::ElasticNet:
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = spec.beta * sgn(theta.theta[i]) + (1.0 - spec.beta) * theta.theta[i];
      }
      return g;
    case PenaltyKind::Owl: {
      const auto order = magnitude_order(theta.theta);
      for (std::size_t rank = 0; rank < d; ++rank) {
        const std::size_t i = order[rank];
        g[i] = spec.owl_weights[rank] * sgn(theta.theta[i]);
      }
      return g;
    }
    case PenaltyKind::WeightedLasso:
      for (std::size_t i = 0; i < d; ++i) g[i] = spec.feature_weights[i] * sgn(theta.theta[i]);
      return g;
    case PenaltyKind::WeightedRidge:
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = spec.feature_weights[i] * spec.feature_weights[i] * theta.theta[i];
      }
      return g;
    case PenaltyKind::Eye:
    case PenaltyKind::NaiveQ:
      break;
  }
  throw std::invalid_argument("baseline_subgradient does not handle knowledge-bearing penalties");
}

double penalty_value(const PenaltySpec& spec, const WeightVector& theta, const KnowledgeVector& r) {
  switch (spec.kind) {
    case PenaltyKind::Eye:
      return eye_value(theta, r);
    case PenaltyKind::NaiveQ:
      return naive_q_value(theta, r, spec.beta);
    default:
      return baseline_value(spec, theta);
  }
}

Vec penalty_subgradient(const PenaltySpec& spec, const WeightVector& theta, const KnowledgeVector& r) {
  switch (spec.kind) {
    case PenaltyKind::Eye:
      return eye_subgradient(theta, r);
    case PenaltyKind::NaiveQ:
      return naive_q_subgradient(theta, r, spec.beta);
    default:
      return baseline_subgradient(spec, theta);
  }
}

Vec penalty_kink_halfwidth(const PenaltySpec& spec, const WeightVector& theta, const KnowledgeVector& r) {
  check_theta(theta);
  const std::size_t d = theta.dim();
  Vec k(d, 0.0);
  switch (spec.kind) {
    case PenaltyKind::Eye: {
      if (theta.dim() != r.size()) {
        throw std::invalid_argument("weight vector and knowledge vector dimensions differ");
      }
      const EyeDecomposition parts = eye_decompose(theta, r);
      // At the exact origin (z == 0) fall back to the conservative width
      // (1 - r[i]); it underestimates the interval, so no coordinate that
      // must move is ever held.
      const double coupling = parts.z > 0.0 ? 1.0 + parts.l1_unknown / parts.z : 1.0;
      for (std::size_t i = 0; i < d; ++i) k[i] = (1.0 - r[i]) * coupling;
      return k;
    }
    case PenaltyKind::NaiveQ:
      if (theta.dim() != r.size()) {
        throw std::invalid_argument("weight vector and knowledge vector dimensions differ");
      }
      for (std::size_t i = 0; i < d; ++i) k[i] = 2.0 * spec.beta * (1.0 - r[i]);
      return k;
    case PenaltyKind::Lasso:
      std::fill(k.begin(), k.end(), 1.0);
      return k;
    case PenaltyKind::ElasticNet:
      std::fill(k.begin(), k.end(), spec.beta);
      return k;
    case PenaltyKind::Owl: {
      spec.validate(d);
      const auto order = magnitude_order(theta.theta);
      for (std::size_t rank = 0; rank < d; ++rank) k[order[rank]] = spec.owl_weights[rank];
      return k;
    }
    case PenaltyKind::WeightedLasso:
      spec.validate(d);
      return spec.feature_weights;
    case PenaltyKind::Ridge:
    case PenaltyKind::WeightedRidge:
      return k;  // smooth everywhere
  }
  return k;
}

}  // namespace credible
