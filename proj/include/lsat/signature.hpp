#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lsat::signature {

struct Dims {
  std::size_t intensity = 0;     // I
  std::size_t trajectory = 0;    // D
  std::size_t channels = 0;      // T

  std::size_t size() const noexcept { return intensity * trajectory * channels; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Binned I x D x T signature tensor stored row-major (i, d, t). Unpopulated cells hold 0.
class SignatureTensor {
 public:
  SignatureTensor() = default;
  /// Throws InvalidArgument for zero dims, DimensionMismatch for wrong buffer sizes,
  /// NonFinite for non-finite values or a nonzero unpopulated cell.
  SignatureTensor(Dims dims, std::vector<double> values, std::vector<std::uint8_t> mask);

  const Dims& dims() const noexcept { return dims_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const std::uint8_t> mask() const noexcept { return mask_; }

  std::size_t index(std::size_t i, std::size_t d, std::size_t t) const noexcept {
    return (i * dims_.trajectory + d) * dims_.channels + t;
  }
  double at(std::size_t i, std::size_t d, std::size_t t) const { return values_[index(i, d, t)]; }
  bool populated(std::size_t i, std::size_t d, std::size_t t) const { return mask_[index(i, d, t)] != 0; }
  std::size_t populated_count() const;

  friend bool operator==(const SignatureTensor&, const SignatureTensor&) = default;

 private:
  Dims dims_;
  std::vector<double> values_;
  std::vector<std::uint8_t> mask_;
};

struct AdjustmentWeights {
  std::vector<double> weights;  // one per channel
};

struct AggregateSignature {
  Dims dims;
  std::vector<double> values;
  std::size_t count = 0;

  friend bool operator==(const AggregateSignature&, const AggregateSignature&) = default;
};

struct Sample {
  double intensity;
  double trajectory;
  std::size_t channel;
};

/// Equal-width bins over [min, max] of intensity and of trajectory; cell value is the
/// mean intensity of the samples that land in it.
SignatureTensor assemble_gamma(std::span<const Sample> samples, Dims dims);

/// cell_measure * sum_{i,d,t} values[i][d][t] * weights[t], summed row-major.
double signature_value(const SignatureTensor& gamma, const AdjustmentWeights& zeta,
                       double cell_measure = 1.0);

/// Elementwise sum of the tensors. Inputs are summed in a canonical (lexicographic by
/// values) order, so the result does not depend on input order.
AggregateSignature aggregate_phi(std::span<const SignatureTensor> tensors);

/// Sum of two partial aggregates.
AggregateSignature merge(const AggregateSignature& a, const AggregateSignature& b);

}  // namespace lsat::signature
