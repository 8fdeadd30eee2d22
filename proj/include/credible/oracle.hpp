#pragma once

// Closed-form and structural checks for EYE-penalized least squares, used to
// validate the trainer independently: the orthonormal-design fixed point, the
// correlated-pair weight bound, and the perfect-correlation structure audit.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "credible/types.hpp"

namespace credible {

class FixedPointError : public std::runtime_error {
 public:
  FixedPointError(double residual, int iterations)
      : std::runtime_error("fixed point did not converge after " + std::to_string(iterations) +
                           " iterations (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct FixedPointResult {
  Vec theta;
  bool z_degenerate = false;  // iterate collapsed to zero; problem reverts to OLS
  int iterations = 0;
  double residual = 0.0;
};

// Solves the implicit shrinkage/threshold equation characterizing the EYE
// least-squares optimum when X^T X = I, by damped fixed-point iteration
// (damping 0.5, initialized at theta_ols, capped at 10000 iterations).
FixedPointResult orthonormal_fixed_point(const Vec& theta_ols, const KnowledgeVector& r,
                                         double n_lambda, double tol);

struct GroupingBoundReport {
  std::size_t i = 0;
  std::size_t j = 0;
  double lhs = 0.0;  // |r_i^2 theta_i - r_j^2 theta_j| / Z
  double rhs = 0.0;
  double rho = 0.0;  // sample correlation of columns i and j
  bool holds = false;
  // Same-indicator pairs (r_i == r_j != 0) also get the tighter form bounding
  // |theta_i - theta_j| / Z directly.
  bool corollary_applies = false;
  double corollary_lhs = 0.0;
  double corollary_rhs = 0.0;
  bool corollary_holds = true;
};

// One report per pair (i <= j) with theta_i * theta_j > 0. Requires the
// dataset columns standardized to zero mean and unit variance (checked to
// 1e-6) and weights at an optimum of the EYE least-squares objective with
// penalty multiplier n_lambda.
std::vector<GroupingBoundReport> grouping_bound_audit(const WeightVector& weights,
                                                      const KnowledgeVector& r,
                                                      const Dataset& data, double n_lambda);

enum class GroupStructureCase { KnownVsUnknown, AllKnown, AllUnknown };

struct StructureAuditReport {
  std::size_t group_id = 0;
  GroupStructureCase audit_case = GroupStructureCase::AllUnknown;
  double max_unknown_abs = 0.0;  // largest |theta| over unknown members
  double known_spread = 0.0;     // max pairwise |theta_i - theta_j| over known
                                 // members, relative to the group's max |theta|
  bool passes = true;
};

// Structure expected of an EYE optimum when each group's features are
// perfectly correlated: unknown members at zero next to known ones, known
// members sharing one weight. Groups with no known members carry no
// structural assertion.
std::vector<StructureAuditReport> perfect_correlation_audit(const WeightVector& weights,
                                                            const KnowledgeVector& r,
                                                            const FeatureGroups& groups,
                                                            double tol);

}  // namespace credible
