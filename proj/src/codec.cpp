#include "wecg/codec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "wecg/error.hpp"
#include "wecg/kernels.hpp"
#include "wecg/log.hpp"

namespace wecg {

void validate(const CodecParams& p) {
  if (!(p.delta > 0.0) || !std::isfinite(p.delta))
    fail(ErrorCode::invalid_argument, "quantization step delta must be positive and finite");
  if (!(p.prd0_percent >= 0.0) || !std::isfinite(p.prd0_percent))
    fail(ErrorCode::invalid_argument, "prd0 must be non-negative");
  if (p.levels < 1 || p.levels > dwt::kMaxLevels)
    fail(ErrorCode::invalid_argument, "decomposition level out of range");
  if (p.mode != Mode::A && p.mode != Mode::B) fail(ErrorCode::invalid_argument, "unknown mode");
}

void validate(const QuantizedSet& q) {
  auto corrupt = [](const std::string& what) { fail(ErrorCode::corrupt_archive, what); };
  if (q.n == 0) corrupt("signal length is zero");
  if (q.levels < 1 || q.levels > dwt::kMaxLevels) corrupt("decomposition level out of range");
  if (!dwt::divisible(q.n, q.levels)) corrupt("signal length is not a multiple of 2^levels");
  if (q.original_length == 0 || q.original_length > q.n) corrupt("original length out of range");
  if (!(q.delta > 0.0) || !std::isfinite(q.delta)) corrupt("quantization step is not positive");
  if (q.mode != Mode::A && q.mode != Mode::B) corrupt("unknown mode");
  const std::size_t k = q.magnitudes.size();
  if (q.signs.size() != k || q.index_deltas.size() != k) corrupt("array lengths disagree");
  if (k > q.n) corrupt("more coefficients than samples");
  std::uint64_t position = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (q.magnitudes[i] == 0) corrupt("zero magnitude stored");
    if (q.signs[i] > 1) corrupt("sign value is not a bit");
    if (q.index_deltas[i] == 0) corrupt("index delta below 1");
    if (q.index_deltas[i] > q.n - position) corrupt("recovered index exceeds signal length");
    position += q.index_deltas[i];
  }
}

namespace codec {

SparseCoeffs select_largest(std::span<const double> w, double tol) {
  if (!(tol >= 0.0)) fail(ErrorCode::invalid_argument, "tolerance must be non-negative");
  const std::size_t n = w.size();
  std::vector<std::pair<double, std::size_t>> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = {std::abs(w[i]), i};
  // Sorting on (|w|, index) is the stable ascending order on |w|.
  std::sort(order.begin(), order.end());

  const double threshold = tol * tol;
  double energy = 0.0;
  std::size_t first_kept = n;
  for (std::size_t p = 0; p < n; ++p) {
    energy += order[p].first * order[p].first;
    if (energy >= threshold) {
      first_kept = p;
      break;
    }
  }

  SparseCoeffs out;
  out.values.reserve(n - first_kept);
  out.indices.reserve(n - first_kept);
  for (std::size_t p = first_kept; p < n; ++p) {
    out.values.push_back(w[order[p].second]);
    out.indices.push_back(order[p].second + 1);
  }
  return out;
}

std::vector<std::int64_t> quantize(std::span<const double> values, double delta) {
  if (!(delta > 0.0)) fail(ErrorCode::invalid_argument, "quantization step delta must be positive");
  std::vector<std::int64_t> out(values.size());
  kernels::quantize(values, delta, out);
  return out;
}

NonZero drop_zeros(std::span<const std::int64_t> q, std::span<const std::uint64_t> indices) {
  if (q.size() != indices.size()) fail(ErrorCode::invalid_argument, "drop_zeros: length mismatch");
  NonZero out;
  const auto nonzero = static_cast<std::size_t>(std::count_if(q.begin(), q.end(), [](auto v) { return v != 0; }));
  out.values.reserve(nonzero);
  out.indices.reserve(nonzero);
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0) continue;
    out.values.push_back(q[i]);
    out.indices.push_back(indices[i]);
  }
  return out;
}

DeltaIndices delta_encode_indices(std::span<const std::uint64_t> indices) {
  const std::size_t k = indices.size();
  DeltaIndices out;
  out.permutation.resize(k);
  std::iota(out.permutation.begin(), out.permutation.end(), std::size_t{1});
  if (!std::is_sorted(indices.begin(), indices.end())) {
    std::sort(out.permutation.begin(), out.permutation.end(),
              [&](std::size_t a, std::size_t b) { return indices[a - 1] < indices[b - 1]; });
  }
  out.deltas.resize(k);
  std::uint64_t previous = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t current = indices[out.permutation[i] - 1];
    if (current == 0) fail(ErrorCode::invalid_argument, "indices are 1-based; got 0");
    if (i > 0 && current == previous)
      fail(ErrorCode::invalid_argument, "duplicate index " + std::to_string(current));
    out.deltas[i] = current - previous;
    previous = current;
  }
  return out;
}

std::vector<std::uint64_t> delta_decode_indices(std::span<const std::uint64_t> deltas) {
  std::vector<std::uint64_t> out(deltas.size());
  std::uint64_t position = 0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i] == 0) fail(ErrorCode::corrupt_archive, "index delta below 1 at position " + std::to_string(i + 1));
    if (deltas[i] > std::numeric_limits<std::uint64_t>::max() - position)
      fail(ErrorCode::corrupt_archive, "index overflow");
    position += deltas[i];
    out[i] = position;
  }
  return out;
}

QuantizedSet encode_coeffs(std::span<const double> coeffs, int levels, double signal_norm,
                           std::uint64_t original_length, const CodecParams& p, bool warn_if_empty) {
  validate(p);
  if (levels != p.levels) fail(ErrorCode::invalid_argument, "coefficient level does not match params");
  const std::size_t n = coeffs.size();

  std::vector<std::int64_t> quantized;
  std::vector<std::uint64_t> positions;
  if (p.mode == Mode::A) {
    const double tol = p.prd0_percent / 100.0 * signal_norm;
    SparseCoeffs selected = select_largest(coeffs, tol);
    quantized = quantize(selected.values, p.delta);
    positions = std::move(selected.indices);
  } else {
    quantized = quantize(coeffs, p.delta);
    positions.resize(n);
    std::iota(positions.begin(), positions.end(), std::uint64_t{1});
  }

  const NonZero kept = drop_zeros(quantized, positions);
  const DeltaIndices ordered = delta_encode_indices(kept.indices);

  QuantizedSet q;
  q.n = n;
  q.levels = levels;
  q.delta = p.delta;
  q.mode = p.mode;
  q.original_length = original_length;
  q.index_deltas = ordered.deltas;
  const std::size_t k = kept.values.size();
  q.magnitudes.resize(k);
  q.signs.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::int64_t v = kept.values[ordered.permutation[i] - 1];
    q.magnitudes[i] = static_cast<std::uint64_t>(v < 0 ? -v : v);
    q.signs[i] = v > 0 ? 1 : 0;
  }
  if (k == 0 && warn_if_empty) log::warn("every coefficient quantized to zero; the archive decodes to silence");
  return q;
}

QuantizedSet encode(const Signal& s, const CodecParams& p) {
  validate(s);
  validate(p);
  const dwt::Padded padded = dwt::pad_to_multiple(s, p.levels);
  const double norm = std::sqrt(kernels::sum_squares(padded.signal.samples));
  std::vector<double> coeffs = padded.signal.samples;
  dwt::forward_in_place(coeffs, p.levels);
  return encode_coeffs(coeffs, p.levels, norm, padded.original_length, p);
}

std::vector<double> dequantize(const QuantizedSet& q) {
  validate(q);
  std::vector<double> w(q.n, 0.0);
  std::uint64_t position = 0;
  for (std::size_t i = 0; i < q.k(); ++i) {
    position += q.index_deltas[i];
    const double sign = 2.0 * q.signs[i] - 1.0;
    w[position - 1] = sign * (q.delta * static_cast<double>(q.magnitudes[i]));
  }
  return w;
}

Signal decode(const QuantizedSet& q) {
  Signal s;
  s.samples = dequantize(q);
  dwt::inverse_in_place(s.samples, q.levels);
  s.samples.resize(q.original_length);
  return s;
}

}  // namespace codec
}  // namespace wecg
