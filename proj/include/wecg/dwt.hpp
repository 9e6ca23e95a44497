#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wecg/signal_io.hpp"

namespace wecg {

struct Band {
  std::size_t offset = 0;
  std::size_t length = 0;

  friend bool operator==(const Band&, const Band&) = default;
};

// Flat coefficient vector laid out coarse to fine:
//   [approx_lv | detail_lv | detail_lv-1 | ... | detail_1]
struct WaveletCoeffs {
  std::vector<double> coeffs;
  int levels = 0;
  std::vector<Band> band_bounds;

  std::size_t size() const noexcept { return coeffs.size(); }
};

namespace dwt {

inline constexpr int kMaxLevels = 30;

// Band layout of an n-sample, lv-level decomposition. Requires n % 2^lv == 0.
std::vector<Band> band_layout(std::size_t n, int levels);

bool divisible(std::size_t n, int levels);

// Multi-level CDF 9/7 lifting analysis with whole-point symmetric extension.
// Throws invalid_argument when n is not a multiple of 2^levels; pad first.
WaveletCoeffs forward(const Signal& s, int levels);
WaveletCoeffs forward(std::span<const double> samples, int levels);

// Exact inverse of forward up to round-off. Throws invalid_argument when the
// band layout does not match the coefficient count and level.
std::vector<double> inverse(const WaveletCoeffs& w);

// In-place variants over a flat array; the codec works on these directly.
void forward_in_place(std::span<double> x, int levels);
void inverse_in_place(std::span<double> x, int levels);

struct Padded {
  Signal signal;
  std::size_t original_length = 0;
};

// Extends the tail by whole-point reflection up to the next multiple of 2^lv.
Padded pad_to_multiple(const Signal& s, int levels);

}  // namespace dwt
}  // namespace wecg
