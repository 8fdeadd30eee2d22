#pragma once

// Full-batch subgradient training with ADADELTA step sizing, for logistic and
// least-squares losses. The objective is Loss(theta, X, y) + n*lambda*J(theta)
// with the intercept left unpenalized.

#include <cstdint>
#include <stdexcept>

#include "credible/penalties.hpp"
#include "credible/types.hpp"

namespace credible {

enum class LossKind { Logistic, LeastSquares };
enum class BatchMode { FullBatch };

struct ObjectiveSpec {
  LossKind loss_kind = LossKind::Logistic;
  PenaltySpec penalty;
  KnowledgeVector knowledge;
  double lambda = 0.0;  // penalty multiplier is n * lambda, n = training rows
  bool fit_intercept = true;
};

struct TrainConfig {
  int max_epochs = 5000;
  double adadelta_decay = 0.95;
  double adadelta_epsilon = 1e-6;
  double convergence_tol = 1e-7;  // relative objective change over one epoch
  BatchMode batch_mode = BatchMode::FullBatch;
  std::uint64_t seed = 0;
};

struct FitResult {
  WeightVector weights;
  Vec objective_trace;  // objective of the iterate entering each epoch
  bool converged = false;
  int epochs_run = 0;
};

class TrainingDivergedError : public std::runtime_error {
 public:
  explicit TrainingDivergedError(int epoch)
      : std::runtime_error("objective became non-finite at epoch " + std::to_string(epoch)),
        epoch_(epoch) {}
  int epoch() const { return epoch_; }

 private:
  int epoch_;
};

struct LossGradient {
  double loss = 0.0;
  Vec grad_theta;
  double grad_intercept = 0.0;
};

LossGradient loss_and_gradient(LossKind kind, const WeightVector& weights, const Dataset& data);

// Linear scores per row: theta.x + b for least squares, sigmoid(theta.x + b)
// for logistic.
Vec predict_scores(LossKind kind, const WeightVector& weights, const Dataset& data);

double objective_value(const ObjectiveSpec& objective, const WeightVector& weights, const Dataset& data);

FitResult adadelta_fit(const ObjectiveSpec& objective, const Dataset& data, const TrainConfig& config);

}  // namespace credible
