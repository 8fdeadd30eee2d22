#pragma once

// Penalty values and subgradients for the EYE penalty and its benchmarks.
// All functions are pure; inputs are validated (dimension match, finiteness)
// and violations throw std::invalid_argument.
//
// Subgradient convention: at theta[i] == 0 the sign term is chosen as 0, the
// interior of the subdifferential interval. At theta == 0 exactly the EYE
// subgradient is the zero vector.

#include "credible/types.hpp"

namespace credible {

// eye(theta) = ||(1-r) o theta||_1 + sqrt(||(1-r) o theta||_1^2 + ||r o theta||_2^2)
struct EyeDecomposition {
  double l1_unknown = 0.0;  // ||(1-r) o theta||_1
  double l2sq_known = 0.0;  // ||r o theta||_2^2
  double z = 0.0;           // sqrt(l1_unknown^2 + l2sq_known)

  double value() const { return l1_unknown + z; }
};

EyeDecomposition eye_decompose(const WeightVector& theta, const KnowledgeVector& r);
double eye_value(const WeightVector& theta, const KnowledgeVector& r);
Vec eye_subgradient(const WeightVector& theta, const KnowledgeVector& r);

// q(theta) = (1-beta) ||r o theta||_2^2 + 2 beta ||(1-r) o theta||_1, beta in (0,1).
// Non-homogeneous; kept as the contrast case for EYE.
double naive_q_value(const WeightVector& theta, const KnowledgeVector& r, double beta);
Vec naive_q_subgradient(const WeightVector& theta, const KnowledgeVector& r, double beta);

// Table penalties: LASSO, ridge, elastic net, OWL, weighted LASSO/ridge.
// Rejects Eye and NaiveQ specs (those carry the knowledge vector).
double baseline_value(const PenaltySpec& spec, const WeightVector& theta);
Vec baseline_subgradient(const PenaltySpec& spec, const WeightVector& theta);

// Unified dispatch across all kinds, used by the trainer.
double penalty_value(const PenaltySpec& spec, const WeightVector& theta, const KnowledgeVector& r);
Vec penalty_subgradient(const PenaltySpec& spec, const WeightVector& theta, const KnowledgeVector& r);

// Half-width of the subdifferential interval of the penalty at theta[i] = 0,
// evaluated at the current iterate (0 for coordinates where the penalty is
// smooth). The trainer uses it to hold coordinates at exact zero while the
// loss gradient stays inside the interval.
Vec penalty_kink_halfwidth(const PenaltySpec& spec, const WeightVector& theta, const KnowledgeVector& r);

}  // namespace credible
