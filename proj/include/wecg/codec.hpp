#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wecg/dwt.hpp"
#include "wecg/signal_io.hpp"

namespace wecg {

// A: energy-threshold selection of the largest coefficients, then quantize.
// B: quantize every coefficient; the zero-quantized ones drop out.
enum class Mode : std::uint8_t { A = 0, B = 1 };

struct CodecParams {
  Mode mode = Mode::A;
  double delta = 35.0;
  double prd0_percent = 0.0;  // mode A only
  int levels = 4;
};

// Throws invalid_argument unless delta > 0, prd0 >= 0 and levels in range.
void validate(const CodecParams& p);

// Selected coefficients. Indices are 1-based positions into the flat array.
struct SparseCoeffs {
  std::vector<double> values;
  std::vector<std::uint64_t> indices;

  std::size_t size() const noexcept { return values.size(); }
};

// Everything the decoder needs. Arrays are in ascending-index order; the
// prefix sums of index_deltas recover the 1-based coefficient positions.
struct QuantizedSet {
  std::uint64_t n = 0;
  int levels = 0;
  double delta = 0.0;
  Mode mode = Mode::B;
  std::vector<std::uint64_t> magnitudes;
  std::vector<std::uint8_t> signs;  // 1 = positive, 0 = negative
  std::vector<std::uint64_t> index_deltas;
  std::uint64_t original_length = 0;

  std::size_t k() const noexcept { return magnitudes.size(); }
  friend bool operator==(const QuantizedSet&, const QuantizedSet&) = default;
};

// Throws corrupt_archive on any violated invariant.
void validate(const QuantizedSet& q);

namespace codec {

// Drops the longest prefix of the |w|-ascending order (stable; ties keep
// index order) whose energy stays below tol^2 and returns the rest, largest
// last.
SparseCoeffs select_largest(std::span<const double> w, double tol);
inline SparseCoeffs select_largest(const WaveletCoeffs& w, double tol) {
  return select_largest(w.coeffs, tol);
}

// Mid-tread quantizer: floor(c / delta + 1/2).
std::vector<std::int64_t> quantize(std::span<const double> values, double delta);

struct NonZero {
  std::vector<std::int64_t> values;
  std::vector<std::uint64_t> indices;
};
NonZero drop_zeros(std::span<const std::int64_t> q, std::span<const std::uint64_t> indices);

struct DeltaIndices {
  std::vector<std::uint64_t> deltas;
  // 1-based positions into the input: sorted[i] = indices[permutation[i] - 1].
  std::vector<std::size_t> permutation;
};
// Sorts ascending and differences. Throws invalid_argument on duplicates or a
// zero index.
DeltaIndices delta_encode_indices(std::span<const std::uint64_t> indices);

// Prefix sums. Throws corrupt_archive on a delta below 1 or on overflow.
std::vector<std::uint64_t> delta_decode_indices(std::span<const std::uint64_t> deltas);

QuantizedSet encode(const Signal& s, const CodecParams& p);

// Encodes precomputed coefficients of a padded signal; `signal_norm` is the
// 2-norm used for the mode-A threshold. `warn_if_empty` controls the K = 0
// warning.
QuantizedSet encode_coeffs(std::span<const double> coeffs, int levels, double signal_norm,
                           std::uint64_t original_length, const CodecParams& p, bool warn_if_empty = true);

// Reconstructs the coefficient vector (length n) without inverting.
std::vector<double> dequantize(const QuantizedSet& q);

Signal decode(const QuantizedSet& q);

}  // namespace codec
}  // namespace wecg
