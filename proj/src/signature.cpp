#include "lsat/signature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lsat/error.hpp"

namespace lsat::signature {

namespace {

std::size_t bin_of(double v, double lo, double hi, std::size_t bins) {
  if (!(hi > lo)) return 0;
  const auto b = static_cast<std::size_t>(std::floor((v - lo) / (hi - lo) * static_cast<double>(bins)));
  return std::min(b, bins - 1);
}

void require_dims(const Dims& dims) {
  if (dims.intensity == 0 || dims.trajectory == 0 || dims.channels == 0) {
    throw Error(ErrorCode::InvalidArgument, "I, D and T must all be at least 1");
  }
}

}  // namespace

SignatureTensor::SignatureTensor(Dims dims, std::vector<double> values, std::vector<std::uint8_t> mask)
    : dims_(dims), values_(std::move(values)), mask_(std::move(mask)) {
  require_dims(dims_);
  if (values_.size() != dims_.size() || mask_.size() != dims_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "value/mask buffers do not match I*D*T");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) throw Error(ErrorCode::NonFinite, "tensor value is not finite");
    if (mask_[k] == 0 && values_[k] != 0.0) {
      throw Error(ErrorCode::InvalidArgument, "unpopulated cell holds a nonzero value");
    }
    if (mask_[k] > 1) throw Error(ErrorCode::InvalidArgument, "mask entries must be 0 or 1");
  }
}

std::size_t SignatureTensor::populated_count() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
}

SignatureTensor assemble_gamma(std::span<const Sample> samples, Dims dims) {
  require_dims(dims);
  if (samples.empty()) throw Error(ErrorCode::EmptyInput, "no samples to bin");

  double i_lo = std::numeric_limits<double>::infinity();
  double i_hi = -i_lo;
  double d_lo = i_lo;
  double d_hi = -i_lo;
  for (const auto& s : samples) {
    if (!std::isfinite(s.intensity) || !std::isfinite(s.trajectory)) {
      throw Error(ErrorCode::NonFinite, "sample is not finite");
    }
    if (s.channel >= dims.channels) {
      throw Error(ErrorCode::BadChannel, "channel " + std::to_string(s.channel) + " outside [0, " +
                                             std::to_string(dims.channels) + ")");
    }
    i_lo = std::min(i_lo, s.intensity);
    i_hi = std::max(i_hi, s.intensity);
    d_lo = std::min(d_lo, s.trajectory);
    d_hi = std::max(d_hi, s.trajectory);
  }

  const std::size_t n = dims.size();
  std::vector<double> sum(n, 0.0);
  std::vector<double> cell_lo(n, std::numeric_limits<double>::infinity());
  std::vector<double> cell_hi(n, -std::numeric_limits<double>::infinity());
  std::vector<std::size_t> hits(n, 0);
  for (const auto& s : samples) {
    const std::size_t i = bin_of(s.intensity, i_lo, i_hi, dims.intensity);
    const std::size_t d = bin_of(s.trajectory, d_lo, d_hi, dims.trajectory);
    const std::size_t k = (i * dims.trajectory + d) * dims.channels + s.channel;
    sum[k] += s.intensity;
    cell_lo[k] = std::min(cell_lo[k], s.intensity);
    cell_hi[k] = std::max(cell_hi[k], s.intensity);
    ++hits[k];
  }

  std::vector<double> values(n, 0.0);
  std::vector<std::uint8_t> mask(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    if (hits[k] == 0) continue;
    values[k] = std::clamp(sum[k] / static_cast<double>(hits[k]), cell_lo[k], cell_hi[k]);
    mask[k] = 1;
  }
  return SignatureTensor(dims, std::move(values), std::move(mask));
}

double signature_value(const SignatureTensor& gamma, const AdjustmentWeights& zeta, double cell_measure) {
  const Dims& dims = gamma.dims();
  if (zeta.weights.size() != dims.channels) {
    throw Error(ErrorCode::DimensionMismatch, "zeta has " + std::to_string(zeta.weights.size()) +
                                                  " weights for " + std::to_string(dims.channels) + " channels");
  }
  const auto values = gamma.values();
  double sum = 0.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < dims.intensity; ++i) {
    for (std::size_t d = 0; d < dims.trajectory; ++d) {
      for (std::size_t t = 0; t < dims.channels; ++t, ++k) sum += values[k] * zeta.weights[t];
    }
  }
  return cell_measure * sum;
}

AggregateSignature aggregate_phi(std::span<const SignatureTensor> tensors) {
  AggregateSignature out;
  if (tensors.empty()) return out;

  out.dims = tensors.front().dims();
  for (const auto& t : tensors) {
    if (!(t.dims() == out.dims)) throw Error(ErrorCode::DimensionMismatch, "tensors do not share dims");
  }

  std::vector<std::size_t> order(tensors.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto va = tensors[a].values();
    const auto vb = tensors[b].values();
    return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
  });

  out.values.assign(out.dims.size(), 0.0);
  for (std::size_t j : order) {
    const auto v = tensors[j].values();
    for (std::size_t k = 0; k < v.size(); ++k) out.values[k] += v[k];
  }
  out.count = tensors.size();
  return out;
}

AggregateSignature merge(const AggregateSignature& a, const AggregateSignature& b) {
  if (a.count == 0) return b;
  if (b.count == 0) return a;
  if (!(a.dims == b.dims)) throw Error(ErrorCode::DimensionMismatch, "aggregates do not share dims");
  AggregateSignature out = a;
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] += b.values[k];
  out.count += b.count;
  return out;
}

}  // namespace lsat::signature
