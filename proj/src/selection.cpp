#include "credible/selection.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <random>
#include <thread>

namespace credible {

namespace {

std::string format_param(const char* name, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s=%g", name, v);
  return buf;
}

std::vector<int> binary_labels(const Dataset& data) {
  std::vector<int> labels(data.rows());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    labels[i] = data.targets()[i] > 0.5 ? 1 : 0;
  }
  return labels;
}

}  // namespace

void GridSpec::validate() const {
  if (lambdas.empty()) throw std::invalid_argument("lambda grid must be nonempty");
  double prev = 0.0;
  for (double l : lambdas) {
    if (!(l > prev)) throw std::invalid_argument("lambda grid must be positive and ascending");
    prev = l;
  }
  for (double b : betas) {
    if (!(b >= 0.0 && b <= 1.0)) throw std::invalid_argument("beta grid entries must lie in [0, 1]");
  }
  for (double m : weight_multipliers) {
    if (!(m >= 1.0 && m <= 3.0)) {
      throw std::invalid_argument("weight multipliers must lie in [1, 3]");
    }
  }
}

GridSpec GridSpec::synthetic_default() {
  GridSpec g;
  for (int k = 0; k <= 12; ++k) g.lambdas.push_back(std::pow(10.0, -6.0 + 0.5 * k));
  g.betas = {0.1, 0.3, 0.5, 0.7, 0.9};
  g.weight_multipliers = {1.0, 2.0, 3.0};
  return g;
}

GridSpec GridSpec::wide_default() {
  GridSpec g;
  for (int k = -10; k <= 10; ++k) g.lambdas.push_back(std::pow(10.0, k));
  g.betas = {0.1, 0.3, 0.5, 0.7, 0.9};
  g.weight_multipliers = {1.0, 2.0, 3.0};
  return g;
}

std::vector<std::pair<PenaltySpec, std::string>> enumerate_grid(PenaltyKind kind,
                                                                const GridSpec& grid,
                                                                const KnowledgeVector& r) {
  const std::size_t d = r.size();
  std::vector<std::pair<PenaltySpec, std::string>> specs;
  switch (kind) {
    case PenaltyKind::Eye:
      specs.emplace_back(PenaltySpec::eye(), "");
      break;
    case PenaltyKind::Lasso:
      specs.emplace_back(PenaltySpec::lasso(), "");
      break;
    case PenaltyKind::Ridge:
      specs.emplace_back(PenaltySpec::ridge(), "");
      break;
    case PenaltyKind::NaiveQ:
      for (double b : grid.betas) {
        if (b > 0.0 && b < 1.0) specs.emplace_back(PenaltySpec::naive_q(b), format_param("beta", b));
      }
      break;
    case PenaltyKind::ElasticNet:
      for (double b : grid.betas) {
        specs.emplace_back(PenaltySpec::elastic_net(b), format_param("beta", b));
      }
      break;
    case PenaltyKind::Owl: {
      if (grid.owl_top_only) {
        Vec w(d, 0.0);
        if (!w.empty()) w[0] = 1.0;
        specs.emplace_back(PenaltySpec::owl(std::move(w)), "scheme=top_only");
      }
      if (grid.owl_top_m_double) {
        const std::size_t m = std::min(r.count_known(), d);
        Vec w(d, 1.0);
        for (std::size_t i = 0; i < m; ++i) w[i] = 2.0;
        specs.emplace_back(PenaltySpec::owl(std::move(w)), "scheme=top_m_double");
      }
      break;
    }
    case PenaltyKind::WeightedLasso:
    case PenaltyKind::WeightedRidge:
      for (double mult : grid.weight_multipliers) {
        Vec w(d);
        for (std::size_t i = 0; i < d; ++i) w[i] = r[i] > 0.0 ? 1.0 : mult;
        auto spec = kind == PenaltyKind::WeightedLasso ? PenaltySpec::weighted_lasso(std::move(w))
                                                       : PenaltySpec::weighted_ridge(std::move(w));
        specs.emplace_back(std::move(spec), format_param("multiplier", mult));
      }
      break;
  }
  return specs;
}

std::vector<std::size_t> bootstrap_indices(const std::vector<int>& labels, std::uint64_t seed) {
  const std::size_t n = labels.size();
  if (n == 0) throw std::invalid_argument("cannot bootstrap an empty set");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::size_t> idx(n);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    bool any_pos = false;
    bool any_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
      idx[i] = pick(rng);
      (labels[idx[i]] == 1 ? any_pos : any_neg) = true;
    }
    if (any_pos && any_neg) return idx;
  }
  throw std::invalid_argument("bootstrap could not draw a two-class resample");
}

TrainGridResult train_grid(PenaltyKind kind, const GridSpec& grid, const DataSplits& splits,
                           const KnowledgeVector& r, const TrainConfig& config, LossKind loss,
                           int n_bootstrap) {
  grid.validate();
  if (splits.train.rows() == 0 || splits.val.rows() == 0) {
    throw std::invalid_argument("train and validation splits must be nonempty");
  }
  if (n_bootstrap < 1) throw std::invalid_argument("need at least one bootstrap replicate");

  const auto specs = enumerate_grid(kind, grid, r);
  struct Point {
    PenaltySpec spec;
    std::string variant;
    double lambda;
  };
  std::vector<Point> points;
  for (const auto& [spec, variant] : specs) {
    for (double lambda : grid.lambdas) points.push_back({spec, variant, lambda});
  }

  const std::vector<int> val_labels = binary_labels(splits.val);
  // Replicate index sets are a function of (seed, labels) only, so every
  // candidate sees the same resamples.
  std::vector<std::vector<std::size_t>> replicate_idx(static_cast<std::size_t>(n_bootstrap));
  for (int b = 0; b < n_bootstrap; ++b) {
    replicate_idx[static_cast<std::size_t>(b)] =
        bootstrap_indices(val_labels, config.seed + static_cast<std::uint64_t>(b));
  }

  std::vector<std::optional<CandidateModel>> slots(points.size());
  std::vector<std::optional<FailedCandidate>> failed(points.size());

  auto run_point = [&](std::size_t p) {
    const Point& pt = points[p];
    ObjectiveSpec objective;
    objective.loss_kind = loss;
    objective.penalty = pt.spec;
    objective.knowledge = r;
    objective.lambda = pt.lambda;
    try {
      CandidateModel cand;
      cand.spec = pt.spec;
      cand.lambda = pt.lambda;
      cand.variant = pt.variant;
      cand.fit = adadelta_fit(objective, splits.train, config);
      cand.gini = gini_sparsity(cand.fit.weights);
      const Vec scores = predict_scores(loss, cand.fit.weights, splits.val);
      cand.val_auc_bootstrap.reserve(static_cast<std::size_t>(n_bootstrap));
      Vec s;
      std::vector<int> l;
      for (int b = 0; b < n_bootstrap; ++b) {
        const auto& idx = replicate_idx[static_cast<std::size_t>(b)];
        s.resize(idx.size());
        l.resize(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
          s[i] = scores[idx[i]];
          l[i] = val_labels[idx[i]];
        }
        cand.val_auc_bootstrap.push_back(roc_auc(s, l));
      }
      slots[p] = std::move(cand);
    } catch (const TrainingDivergedError& e) {
      failed[p] = FailedCandidate{pt.lambda, pt.variant, e.what()};
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), points.size());
  if (workers <= 1) {
    for (std::size_t p = 0; p < points.size(); ++p) run_point(p);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t p = next.fetch_add(1); p < points.size(); p = next.fetch_add(1)) {
          run_point(p);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  TrainGridResult result;
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (slots[p]) result.candidates.push_back(std::move(*slots[p]));
    if (failed[p]) result.failures.push_back(std::move(*failed[p]));
  }
  return result;
}

std::vector<CandidateModel> bootstrap_filter(const std::vector<CandidateModel>& candidates,
                                             double alpha) {
  if (candidates.empty()) throw std::invalid_argument("no candidates to filter");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  const std::size_t n_boot = candidates.front().val_auc_bootstrap.size();
  for (const auto& c : candidates) {
    if (c.val_auc_bootstrap.size() != n_boot || n_boot == 0) {
      throw std::invalid_argument("candidates carry mismatched bootstrap replicates");
    }
  }

  std::size_t best = 0;
  double best_mean = -1.0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    double mean = 0.0;
    for (double a : candidates[c].val_auc_bootstrap) mean += a;
    mean /= static_cast<double>(n_boot);
    if (mean > best_mean) {
      best_mean = mean;
      best = c;
    }
  }

  std::vector<CandidateModel> kept;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (c == best) {
      kept.push_back(candidates[c]);
      continue;
    }
    std::size_t losses = 0;
    for (std::size_t b = 0; b < n_boot; ++b) {
      if (candidates[best].val_auc_bootstrap[b] - candidates[c].val_auc_bootstrap[b] > 0.0) ++losses;
    }
    const double frac = static_cast<double>(losses) / static_cast<double>(n_boot);
    if (frac <= 1.0 - alpha) kept.push_back(candidates[c]);
  }
  return kept;
}

const CandidateModel& select_sparsest(const std::vector<CandidateModel>& filtered) {
  if (filtered.empty()) throw std::invalid_argument("no candidates to select from");
  std::size_t best = 0;
  for (std::size_t c = 1; c < filtered.size(); ++c) {
    if (filtered[c].gini > filtered[best].gini ||
        (filtered[c].gini == filtered[best].gini && filtered[c].lambda > filtered[best].lambda)) {
      best = c;
    }
  }
  return filtered[best];
}

}  // namespace credible
