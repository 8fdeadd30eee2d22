#include "credible/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "credible/kernels.hpp"

namespace credible {

namespace {

struct EyeParts {
  double l1_unknown = 0.0;
  double z = 0.0;
};

EyeParts eye_parts(const Vec& theta, const KnowledgeVector& r) {
  const std::size_t d = theta.size();
  EyeParts p;
  p.l1_unknown = kernels::weighted_abs_sum(r.complement().data(), theta.data(), d);
  const double l2sq = kernels::weighted_sq_sum(r.data(), theta.data(), d);
  p.z = std::sqrt(p.l1_unknown * p.l1_unknown + l2sq);
  return p;
}

}  // namespace

FixedPointResult orthonormal_fixed_point(const Vec& theta_ols, const KnowledgeVector& r,
                                         double n_lambda, double tol) {
  const std::size_t d = theta_ols.size();
  if (r.size() != d) throw std::invalid_argument("knowledge vector dimension mismatch");
  if (!all_finite(theta_ols)) throw std::invalid_argument("theta_ols has non-finite entries");
  if (!(n_lambda >= 0.0)) throw std::invalid_argument("n_lambda must be nonnegative");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

  FixedPointResult result;
  if (n_lambda == 0.0) {
    result.theta = theta_ols;
    return result;
  }

  const int cap = 10000;
  double scale = 0.0;
  for (double v : theta_ols) scale = std::max(scale, std::fabs(v));
  const double z_floor = 1e-14 * std::max(1.0, scale);

  Vec theta = theta_ols;
  Vec mapped(d);
  double residual = 0.0;
  for (int iter = 1; iter <= cap; ++iter) {
    const EyeParts parts = eye_parts(theta, r);
    if (parts.z <= z_floor) {
      result.theta.assign(d, 0.0);
      result.z_degenerate = true;
      result.iterations = iter;
      return result;
    }
    for (std::size_t i = 0; i < d; ++i) {
      const double ols = theta_ols[i];
      if (ols == 0.0) {
        mapped[i] = 0.0;
        continue;
      }
      const double ri = r[i];
      const double shrink = 1.0 + n_lambda * ri * ri / parts.z;
      const double threshold =
          n_lambda * (1.0 - ri) * (1.0 + parts.l1_unknown / parts.z) / std::fabs(ols);
      mapped[i] = (ols / shrink) * std::max(0.0, 1.0 - threshold);
    }
    residual = 0.0;
    for (std::size_t i = 0; i < d; ++i) residual = std::max(residual, std::fabs(mapped[i] - theta[i]));
    for (std::size_t i = 0; i < d; ++i) theta[i] = 0.5 * theta[i] + 0.5 * mapped[i];
    if (residual < tol) {
      // Land exactly on the map so thresholded coordinates are exact zeros.
      result.theta = mapped;
      result.iterations = iter;
      result.residual = residual;
      return result;
    }
  }
  throw FixedPointError(residual, cap);
}

std::vector<GroupingBoundReport> grouping_bound_audit(const WeightVector& weights,
                                                      const KnowledgeVector& r, const Dataset& data,
                                                      double n_lambda) {
  const std::size_t n = data.rows();
  const std::size_t d = data.cols();
  if (weights.dim() != d || r.size() != d) {
    throw std::invalid_argument("weights/knowledge dimension does not match dataset");
  }
  if (!(n_lambda > 0.0)) throw std::invalid_argument("n_lambda must be positive");

  // Column-major copy; the audit is all column dot products.
  Vec cols(d * n);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < n; ++i) cols[j * n + i] = data.at(i, j);
  }
  const double nn = static_cast<double>(n);
  for (std::size_t j = 0; j < d; ++j) {
    const double* c = cols.data() + j * n;
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += c[i];
    mean /= nn;
    const double var = kernels::dot(c, c, n) / nn - mean * mean;
    if (std::fabs(mean) > 1e-6 || std::fabs(var - 1.0) > 1e-6) {
      throw std::invalid_argument("grouping bound audit requires standardized columns (zero mean, unit variance)");
    }
  }

  const EyeParts parts = eye_parts(weights.theta, r);
  const double y_norm = std::sqrt(kernels::dot(data.targets().data(), data.targets().data(), n));
  // The pair bound is stated for unit-norm columns; on unit-variance columns
  // the residual term picks up a factor sqrt(n).
  const double residual_scale = std::sqrt(2.0) * y_norm * std::sqrt(nn) / n_lambda;

  std::vector<GroupingBoundReport> reports;
  if (parts.z == 0.0) return reports;  // all-zero weights: no eligible pairs
  for (std::size_t i = 0; i < d; ++i) {
    if (weights.theta[i] == 0.0) continue;
    for (std::size_t j = i; j < d; ++j) {
      if (weights.theta[i] * weights.theta[j] <= 0.0) continue;
      GroupingBoundReport rep;
      rep.i = i;
      rep.j = j;
      rep.rho = kernels::dot(cols.data() + i * n, cols.data() + j * n, n) / nn;
      const double ri = r[i];
      const double rj = r[j];
      rep.lhs = std::fabs(ri * ri * weights.theta[i] - rj * rj * weights.theta[j]) / parts.z;
      const double corr_term = residual_scale * std::sqrt(std::max(0.0, 1.0 - rep.rho));
      rep.rhs = corr_term + std::fabs(ri - rj) * (1.0 + parts.l1_unknown / parts.z);
      rep.holds = rep.lhs <= rep.rhs + 1e-9;
      if (ri == rj && ri != 0.0) {
        rep.corollary_applies = true;
        rep.corollary_lhs = std::fabs(weights.theta[i] - weights.theta[j]) / parts.z;
        rep.corollary_rhs = corr_term / (ri * ri);
        rep.corollary_holds = rep.corollary_lhs <= rep.corollary_rhs + 1e-9;
      }
      reports.push_back(rep);
    }
  }
  return reports;
}

std::vector<StructureAuditReport> perfect_correlation_audit(const WeightVector& weights,
                                                            const KnowledgeVector& r,
                                                            const FeatureGroups& groups,
                                                            double tol) {
  const std::size_t d = weights.dim();
  if (r.size() != d) throw std::invalid_argument("knowledge vector dimension mismatch");
  groups.validate(d);
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

  double global_max = 0.0;
  for (double v : weights.theta) global_max = std::max(global_max, std::fabs(v));

  std::vector<StructureAuditReport> reports;
  reports.reserve(groups.count());
  for (std::size_t g = 0; g < groups.count(); ++g) {
    const auto [first, last] = groups.ranges[g];
    StructureAuditReport rep;
    rep.group_id = g;

    double group_max = 0.0;
    double known_min = std::numeric_limits<double>::infinity();
    double known_max = -std::numeric_limits<double>::infinity();
    bool any_known = false;
    bool any_unknown = false;
    for (std::size_t i = first; i < last; ++i) {
      const double v = weights.theta[i];
      group_max = std::max(group_max, std::fabs(v));
      if (r[i] > 0.0) {
        any_known = true;
        known_min = std::min(known_min, v);
        known_max = std::max(known_max, v);
      } else {
        any_unknown = true;
        rep.max_unknown_abs = std::max(rep.max_unknown_abs, std::fabs(v));
      }
    }
    rep.known_spread = any_known && group_max > 0.0 ? (known_max - known_min) / group_max : 0.0;

    if (any_known && any_unknown) {
      rep.audit_case = GroupStructureCase::KnownVsUnknown;
      rep.passes = rep.max_unknown_abs <= tol * global_max && rep.known_spread <= tol;
    } else if (any_known) {
      rep.audit_case = GroupStructureCase::AllKnown;
      rep.passes = rep.known_spread <= tol;
    } else {
      rep.audit_case = GroupStructureCase::AllUnknown;
      rep.passes = true;  // sparsity is on the LASSO continuum, nothing to pin
    }
    reports.push_back(rep);
  }
  return reports;
}

}  // namespace credible
