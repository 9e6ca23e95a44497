#include "wecg/dwt.hpp"

#include <algorithm>
#include <string>

#include "wecg/cdf97.hpp"
#include "wecg/error.hpp"
#include "wecg/kernels.hpp"

namespace wecg::dwt {
namespace {

void check_levels(int levels) {
  if (levels < 1 || levels > kMaxLevels)
    fail(ErrorCode::invalid_argument, "decomposition level must be in [1, " +
                                          std::to_string(kMaxLevels) + "]");
}

void check_length(std::size_t n, int levels) {
  check_levels(levels);
  if (n == 0 || !divisible(n, levels))
    fail(ErrorCode::invalid_argument,
         "signal length " + std::to_string(n) + " is not a multiple of 2^" + std::to_string(levels) +
             "; pad it with pad_to_multiple first");
}

// One analysis level on x (even length): returns [lowpass | highpass] in x.
void analyze_level(std::span<double> x, std::vector<double>& scratch) {
  const std::size_t h = x.size() / 2;
  scratch.resize(x.size());
  std::span<double> even(scratch.data(), h);
  std::span<double> odd(scratch.data() + h, h);
  kernels::split_even_odd(x, even, odd);
  kernels::lift_predict(odd, even, cdf97::kAlpha);
  kernels::lift_update(even, odd, cdf97::kBeta);
  kernels::lift_predict(odd, even, cdf97::kGamma);
  kernels::lift_update(even, odd, cdf97::kDelta);
  kernels::scale(even, cdf97::kZeta);
  kernels::scale(odd, 1.0 / cdf97::kZeta);
  std::copy(scratch.begin(), scratch.end(), x.begin());
}

void synthesize_level(std::span<double> x, std::vector<double>& scratch) {
  const std::size_t h = x.size() / 2;
  scratch.assign(x.begin(), x.end());
  std::span<double> even(scratch.data(), h);
  std::span<double> odd(scratch.data() + h, h);
  kernels::scale(even, 1.0 / cdf97::kZeta);
  kernels::scale(odd, cdf97::kZeta);
  kernels::lift_update(even, odd, -cdf97::kDelta);
  kernels::lift_predict(odd, even, -cdf97::kGamma);
  kernels::lift_update(even, odd, -cdf97::kBeta);
  kernels::lift_predict(odd, even, -cdf97::kAlpha);
  kernels::merge_even_odd(even, odd, x);
}

}  // namespace

bool divisible(std::size_t n, int levels) {
  return levels >= 0 && levels <= kMaxLevels && n % (std::size_t{1} << levels) == 0;
}

std::vector<Band> band_layout(std::size_t n, int levels) {
  check_length(n, levels);
  std::vector<Band> bands;
  bands.reserve(static_cast<std::size_t>(levels) + 1);
  const std::size_t approx = n >> levels;
  bands.push_back({0, approx});
  std::size_t offset = approx;
  for (int level = levels; level >= 1; --level) {
    const std::size_t len = n >> level;
    bands.push_back({offset, len});
    offset += len;
  }
  return bands;
}

void forward_in_place(std::span<double> x, int levels) {
  check_length(x.size(), levels);
  std::vector<double> scratch;
  std::size_t m = x.size();
  for (int level = 0; level < levels; ++level) {
    analyze_level(x.first(m), scratch);
    m /= 2;
  }
}

void inverse_in_place(std::span<double> x, int levels) {
  check_length(x.size(), levels);
  std::vector<double> scratch;
  for (int level = levels - 1; level >= 0; --level) synthesize_level(x.first(x.size() >> level), scratch);
}

WaveletCoeffs forward(std::span<const double> samples, int levels) {
  WaveletCoeffs w;
  w.coeffs.assign(samples.begin(), samples.end());
  forward_in_place(w.coeffs, levels);
  w.levels = levels;
  w.band_bounds = band_layout(w.coeffs.size(), levels);
  return w;
}

WaveletCoeffs forward(const Signal& s, int levels) { return forward(s.samples, levels); }

std::vector<double> inverse(const WaveletCoeffs& w) {
  check_levels(w.levels);
  if (w.coeffs.empty() || !divisible(w.coeffs.size(), w.levels))
    fail(ErrorCode::invalid_argument, "coefficient count is inconsistent with the decomposition level");
  if (w.band_bounds != band_layout(w.coeffs.size(), w.levels))
    fail(ErrorCode::invalid_argument, "inconsistent band bounds");
  std::vector<double> x = w.coeffs;
  inverse_in_place(x, w.levels);
  return x;
}

Padded pad_to_multiple(const Signal& s, int levels) {
  check_levels(levels);
  validate(s);
  const std::size_t n = s.samples.size();
  const std::size_t block = std::size_t{1} << levels;
  const std::size_t target = (n + block - 1) / block * block;
  Padded out{s, n};
  out.signal.samples.resize(target);
  for (std::size_t i = n; i < target; ++i) {
    std::size_t j = 0;
    if (n > 1) {
      // Whole-point reflection about the last sample, periodic with 2(n-1).
      const std::size_t period = 2 * (n - 1);
      const std::size_t k = i % period;
      j = k < n ? k : period - k;
    }
    out.signal.samples[i] = s.samples[j];
  }
  return out;
}

}  // namespace wecg::dwt
