#include "lsat/inference.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <string>

#include "lsat/error.hpp"

namespace lsat::inference {

PosteriorGrid PosteriorGrid::with_prior(std::vector<double> parameters, std::vector<double> prior_weights) {
  if (parameters.empty()) throw Error(ErrorCode::EmptyInput, "grid has no points");
  if (parameters.size() != prior_weights.size()) {
    throw Error(ErrorCode::DimensionMismatch, "prior length differs from the grid");
  }
  double total = 0.0;
  for (double w : prior_weights) {
    if (!std::isfinite(w) || w < 0.0) throw Error(ErrorCode::InvalidArgument, "prior weights must be finite and >= 0");
    total += w;
  }
  if (!(total > 0.0)) throw Error(ErrorCode::InvalidArgument, "prior has no mass");

  PosteriorGrid grid;
  grid.parameters_ = std::move(parameters);
  grid.prior_ = std::move(prior_weights);
  for (double& w : grid.prior_) w /= total;
  grid.posterior_ = grid.prior_;
  grid.likelihood_.assign(grid.prior_.size(), 1.0);
  grid.evidence_ = 1.0;
  return grid;
}

PosteriorGrid PosteriorGrid::chained() const { return with_prior(parameters_, posterior_); }

double PosteriorGrid::posterior_mean() const {
  double mean = 0.0;
  for (std::size_t i = 0; i < size(); ++i) mean += posterior_[i] * parameters_[i];
  return mean;
}

double PosteriorGrid::posterior_variance() const {
  const double mean = posterior_mean();
  double var = 0.0;
  for (std::size_t i = 0; i < size(); ++i) var += posterior_[i] * (parameters_[i] - mean) * (parameters_[i] - mean);
  return var;
}

std::size_t PosteriorGrid::posterior_argmax() const {
  return static_cast<std::size_t>(std::max_element(posterior_.begin(), posterior_.end()) - posterior_.begin());
}

PosteriorGrid grid_posterior(const PosteriorGrid& grid, std::span<const double> likelihood) {
  if (likelihood.size() != grid.size()) {
    throw Error(ErrorCode::DimensionMismatch, "likelihood has " + std::to_string(likelihood.size()) +
                                                  " entries for a grid of " + std::to_string(grid.size()));
  }
  PosteriorGrid out = grid;
  out.likelihood_.assign(likelihood.begin(), likelihood.end());
  double evidence = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(likelihood[i]) || likelihood[i] < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "likelihood entries must be finite and >= 0");
    }
    out.posterior_[i] = grid.prior_[i] * likelihood[i];
    evidence += out.posterior_[i];
  }
  if (!(evidence > 0.0)) throw Error(ErrorCode::EvidenceZero, "prior and likelihood do not overlap");
  for (double& p : out.posterior_) p /= evidence;
  out.evidence_ = evidence;
  return out;
}

double weighted_prediction(std::span<const SegmentWeight> entries) {
  if (entries.empty()) throw Error(ErrorCode::EmptyInput, "no segment weights");
  double total = 0.0;
  for (const auto& e : entries) {
    if (!std::isfinite(e.rho) || e.rho < 0.0) throw Error(ErrorCode::InvalidArgument, "rho must be finite and >= 0");
    if (!std::isfinite(e.p)) throw Error(ErrorCode::NonFinite, "segment probability is not finite");
    total += e.rho;
  }
  if (!(total > 0.0)) throw Error(ErrorCode::AllZeroWeights, "all prediction weights are zero");

  double out = 0.0;
  double lo = entries.front().p;
  double hi = lo;
  for (const auto& e : entries) {
    out += (e.rho / total) * e.p;
    lo = std::min(lo, e.p);
    hi = std::max(hi, e.p);
  }
  return std::clamp(out, lo, hi);
}

double BaselineModel::predict(std::span<const double> features) const {
  if (weights.empty() || features.size() != feature_count()) {
    throw Error(ErrorCode::DimensionMismatch, "model expects " + std::to_string(feature_count()) + " features, got " +
                                                  std::to_string(features.size()));
  }
  double y = intercept();
  for (std::size_t j = 0; j < features.size(); ++j) y += weights[j] * features[j];
  return y;
}

BaselineModel fit_baseline(const FeatureMatrix& features, std::span<const double> targets, double lambda) {
  const std::size_t m = features.rows;
  const std::size_t f = features.cols;
  if (m == 0) throw Error(ErrorCode::EmptyInput, "no training rows");
  if (features.data.size() != m * f || targets.size() != m) {
    throw Error(ErrorCode::DimensionMismatch, "feature matrix and targets disagree in size");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw Error(ErrorCode::InvalidArgument, "lambda must be >= 0");

  // Design matrix with a trailing column of ones for the intercept.
  Eigen::MatrixXd x(m, f + 1);
  Eigen::VectorXd y(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < f; ++c) x(r, c) = features(r, c);
    x(r, f) = 1.0;
    y(r) = targets[r];
  }
  if (!x.allFinite() || !y.allFinite()) throw Error(ErrorCode::NonFinite, "training data is not finite");

  if (lambda == 0.0) {
    for (std::size_t c = 0; c < f; ++c) {
      if (x.col(c).cwiseAbs().maxCoeff() == 0.0) {
        throw Error(ErrorCode::SingularSystem, "feature column " + std::to_string(c) + " is identically zero");
      }
    }
  }

  Eigen::MatrixXd gram = x.transpose() * x;
  for (std::size_t c = 0; c < f; ++c) gram(c, c) += lambda;
  const Eigen::VectorXd rhs = x.transpose() * y;

  const Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::SingularSystem, "normal equations are not positive definite");
  const Eigen::VectorXd pivots = Eigen::MatrixXd(llt.matrixL()).diagonal();
  const double ratio = pivots.minCoeff() / pivots.maxCoeff();
  if (lambda == 0.0 && !(ratio * ratio > 1e-14)) throw Error(ErrorCode::SingularSystem, "normal equations are rank deficient");

  const Eigen::VectorXd w = llt.solve(rhs);
  BaselineModel model;
  model.lambda = lambda;
  model.weights.assign(w.data(), w.data() + w.size());
  return model;
}

double predict_baseline(const BaselineModel& model, std::span<const double> features) {
  return model.predict(features);
}

double ridge_objective(const BaselineModel& model, const FeatureMatrix& features, std::span<const double> targets) {
  double loss = 0.0;
  for (std::size_t r = 0; r < features.rows; ++r) {
    const std::span<const double> row(features.data.data() + r * features.cols, features.cols);
    const double residual = model.predict(row) - targets[r];
    loss += residual * residual;
  }
  for (std::size_t j = 0; j + 1 < model.weights.size(); ++j) loss += model.lambda * model.weights[j] * model.weights[j];
  return loss;
}

}  // namespace lsat::inference
