#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lsat::inference {

/// Discrete prior / likelihood / posterior over an explicit parameter grid.
/// Values are immutable; updates return a new grid.
class PosteriorGrid {
 public:
  /// Normalizes `prior_weights` to sum 1. Throws on length mismatch, negative or
  /// non-finite weights, or an all-zero prior.
  static PosteriorGrid with_prior(std::vector<double> parameters, std::vector<double> prior_weights);

  const std::vector<double>& parameters() const noexcept { return parameters_; }
  const std::vector<double>& prior() const noexcept { return prior_; }
  const std::vector<double>& likelihood() const noexcept { return likelihood_; }
  const std::vector<double>& posterior() const noexcept { return posterior_; }
  double evidence() const noexcept { return evidence_; }
  std::size_t size() const noexcept { return parameters_.size(); }

  /// A fresh grid whose prior is this grid's posterior (for sequential updating).
  PosteriorGrid chained() const;

  double posterior_mean() const;
  double posterior_variance() const;
  std::size_t posterior_argmax() const;

 private:
  PosteriorGrid() = default;
  friend PosteriorGrid grid_posterior(const PosteriorGrid&, std::span<const double>);

  std::vector<double> parameters_;
  std::vector<double> prior_;
  std::vector<double> likelihood_;
  std::vector<double> posterior_;
  double evidence_ = 0.0;
};

/// posterior_i = prior_i * likelihood_i / sum_j prior_j * likelihood_j.
PosteriorGrid grid_posterior(const PosteriorGrid& grid, std::span<const double> likelihood);

struct SegmentWeight {
  double rho = 0.0;  // prediction weight, >= 0
  double p = 0.0;    // segment probability
};

/// sum_k (rho_k / sum rho) * p_k.
double weighted_prediction(std::span<const SegmentWeight> entries);

/// Maps a feature vector to a prediction. BaselineModel is the shipped implementation.
class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual std::size_t feature_count() const = 0;
  virtual double predict(std::span<const double> features) const = 0;
};

/// Ridge regression: weights[0..F) for the features, weights[F] the intercept.
struct BaselineModel final : Predictor {
  std::vector<double> weights;
  double lambda = 0.0;

  std::size_t feature_count() const override { return weights.empty() ? 0 : weights.size() - 1; }
  double intercept() const { return weights.back(); }
  double predict(std::span<const double> features) const override;
};

/// Row-major M x F design matrix.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Minimizes ||Xw + b - y||^2 + lambda ||w||^2 (intercept b unpenalized) through the
/// normal equations and a Cholesky factorization.
BaselineModel fit_baseline(const FeatureMatrix& features, std::span<const double> targets, double lambda);

double predict_baseline(const BaselineModel& model, std::span<const double> features);

/// ||Xw + b - y||^2 + lambda ||w||^2 for the given model.
double ridge_objective(const BaselineModel& model, const FeatureMatrix& features, std::span<const double> targets);

}  // namespace lsat::inference
