#include "credible/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "credible/kernels.hpp"

namespace credible {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow
double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::fabs(z))); }

void check_dataset(const WeightVector& weights, const Dataset& data) {
  if (data.rows() == 0) throw std::invalid_argument("dataset is empty");
  if (weights.dim() != data.cols()) {
    throw std::invalid_argument("weight vector dimension does not match dataset");
  }
  if (!all_finite(weights.theta) || !std::isfinite(weights.intercept)) {
    throw std::invalid_argument("weight vector has non-finite entries");
  }
}

// One pass over the rows: score each row, accumulate loss, and fold the
// per-row residual back into the gradient.
double loss_gradient_core(LossKind kind, const Vec& theta, double intercept,
                          const Dataset& data, Vec& grad_theta, double& grad_intercept) {
  const std::size_t n = data.rows();
  const std::size_t d = data.cols();
  std::fill(grad_theta.begin(), grad_theta.end(), 0.0);
  grad_intercept = 0.0;
  double loss = 0.0;
  const Vec& y = data.targets();
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = data.row(i).data();
    const double z = kernels::dot(row, theta.data(), d) + intercept;
    double resid;
    if (kind == LossKind::LeastSquares) {
      resid = z - y[i];
      loss += 0.5 * resid * resid;
    } else {
      loss += softplus(z) - y[i] * z;
      resid = sigmoid(z) - y[i];
    }
    kernels::axpy(resid, row, grad_theta.data(), d);
    grad_intercept += resid;
  }
  return loss;
}

}  // namespace

LossGradient loss_and_gradient(LossKind kind, const WeightVector& weights, const Dataset& data) {
  check_dataset(weights, data);
  LossGradient out;
  out.grad_theta.resize(weights.dim());
  out.loss = loss_gradient_core(kind, weights.theta, weights.intercept, data, out.grad_theta,
                                out.grad_intercept);
  return out;
}

Vec predict_scores(LossKind kind, const WeightVector& weights, const Dataset& data) {
  check_dataset(weights, data);
  const std::size_t n = data.rows();
  const std::size_t d = data.cols();
  Vec scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = kernels::dot(data.row(i).data(), weights.theta.data(), d) + weights.intercept;
    scores[i] = kind == LossKind::Logistic ? sigmoid(z) : z;
  }
  return scores;
}

double objective_value(const ObjectiveSpec& objective, const WeightVector& weights, const Dataset& data) {
  check_dataset(weights, data);
  Vec scratch(weights.dim());
  double gb = 0.0;
  const double loss = loss_gradient_core(objective.loss_kind, weights.theta, weights.intercept,
                                         data, scratch, gb);
  const double nl = static_cast<double>(data.rows()) * objective.lambda;
  return loss + nl * penalty_value(objective.penalty, weights, objective.knowledge);
}

FitResult adadelta_fit(const ObjectiveSpec& objective, const Dataset& data, const TrainConfig& config) {
  if (data.rows() == 0) throw std::invalid_argument("dataset is empty");
  const std::size_t d = data.cols();
  if (objective.knowledge.size() != d) {
    throw std::invalid_argument("knowledge vector dimension does not match dataset");
  }
  objective.penalty.validate(d);
  if (!(objective.lambda >= 0.0)) throw std::invalid_argument("lambda must be nonnegative");
  if (config.max_epochs < 1) throw std::invalid_argument("max_epochs must be at least 1");
  if (!(config.convergence_tol > 0.0)) throw std::invalid_argument("convergence_tol must be positive");
  if (!(config.adadelta_decay > 0.0 && config.adadelta_decay < 1.0)) {
    throw std::invalid_argument("adadelta_decay must lie in (0, 1)");
  }
  if (!(config.adadelta_epsilon > 0.0)) throw std::invalid_argument("adadelta_epsilon must be positive");

  const double nl = static_cast<double>(data.rows()) * objective.lambda;
  const double rho = config.adadelta_decay;
  const double eps = config.adadelta_epsilon;

  WeightVector w;
  w.theta.assign(d, 0.0);
  Vec grad(d, 0.0);
  Vec grad_sq_avg(d + 1, 0.0);
  Vec step_sq_avg(d + 1, 0.0);

  FitResult result;
  result.objective_trace.reserve(static_cast<std::size_t>(config.max_epochs));
  double best_obj = std::numeric_limits<double>::infinity();
  WeightVector best = w;
  double prev_obj = std::numeric_limits<double>::infinity();

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    double grad_intercept = 0.0;
    const double loss = loss_gradient_core(objective.loss_kind, w.theta, w.intercept, data, grad,
                                           grad_intercept);
    const double obj = loss + nl * penalty_value(objective.penalty, w, objective.knowledge);
    if (!std::isfinite(obj)) throw TrainingDivergedError(epoch);
    result.objective_trace.push_back(obj);
    result.epochs_run = epoch;
    if (obj < best_obj) {
      best_obj = obj;
      best = w;
    }
    if (epoch >= 2 &&
        std::fabs(obj - prev_obj) <= config.convergence_tol * std::max(1.0, std::fabs(prev_obj))) {
      result.converged = true;
      break;
    }
    prev_obj = obj;

    const Vec pen_sub = penalty_subgradient(objective.penalty, w, objective.knowledge);
    const Vec kink = nl > 0.0 ? penalty_kink_halfwidth(objective.penalty, w, objective.knowledge)
                              : Vec(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      double g;
      if (w.theta[i] == 0.0 && nl > 0.0 && kink[i] > 0.0) {
        // Minimum-norm subgradient at the kink: the coordinate stays at zero
        // while the loss gradient sits inside the subdifferential interval.
        const double width = nl * kink[i];
        const double lg = grad[i];
        g = lg > width ? lg - width : (lg < -width ? lg + width : 0.0);
      } else {
        g = grad[i] + nl * pen_sub[i];
      }
      grad_sq_avg[i] = rho * grad_sq_avg[i] + (1.0 - rho) * g * g;
      const double step = -std::sqrt(step_sq_avg[i] + eps) / std::sqrt(grad_sq_avg[i] + eps) * g;
      double next = w.theta[i] + step;
      if (w.theta[i] != 0.0 && next * w.theta[i] < 0.0) next = 0.0;  // stop at the kink
      const double applied = next - w.theta[i];
      step_sq_avg[i] = rho * step_sq_avg[i] + (1.0 - rho) * applied * applied;
      w.theta[i] = next;
    }
    if (objective.fit_intercept) {
      const double g = grad_intercept;
      grad_sq_avg[d] = rho * grad_sq_avg[d] + (1.0 - rho) * g * g;
      const double step = -std::sqrt(step_sq_avg[d] + eps) / std::sqrt(grad_sq_avg[d] + eps) * g;
      step_sq_avg[d] = rho * step_sq_avg[d] + (1.0 - rho) * step * step;
      w.intercept += step;
    }
  }

  result.weights = best;
  return result;
}

}  // namespace credible
