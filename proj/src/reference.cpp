#include "wecg/reference.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "wecg/cdf97.hpp"

namespace wecg::reference {
namespace {

// Whole-point symmetric extension of an index into [0, m).
std::size_t reflect(std::ptrdiff_t j, std::ptrdiff_t m) {
  if (j < 0) j = -j;
  if (j >= m) j = 2 * (m - 1) - j;
  return static_cast<std::size_t>(j);
}

void lift(std::span<double> x, std::size_t first, double c) {
  const auto m = static_cast<std::ptrdiff_t>(x.size());
  for (auto i = static_cast<std::ptrdiff_t>(first); i < m; i += 2)
    x[static_cast<std::size_t>(i)] += c * (x[reflect(i - 1, m)] + x[reflect(i + 1, m)]);
}

void analyze_level(std::span<double> x) {
  lift(x, 1, cdf97::kAlpha);
  lift(x, 0, cdf97::kBeta);
  lift(x, 1, cdf97::kGamma);
  lift(x, 0, cdf97::kDelta);
  const std::size_t h = x.size() / 2;
  std::vector<double> tmp(x.size());
  for (std::size_t i = 0; i < h; ++i) {
    tmp[i] = x[2 * i] * cdf97::kZeta;
    tmp[h + i] = x[2 * i + 1] / cdf97::kZeta;
  }
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = tmp[i];
}

void synthesize_level(std::span<double> x) {
  const std::size_t h = x.size() / 2;
  std::vector<double> tmp(x.size());
  for (std::size_t i = 0; i < h; ++i) {
    tmp[2 * i] = x[i] / cdf97::kZeta;
    tmp[2 * i + 1] = x[h + i] * cdf97::kZeta;
  }
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = tmp[i];
  lift(x, 0, -cdf97::kDelta);
  lift(x, 1, -cdf97::kGamma);
  lift(x, 0, -cdf97::kBeta);
  lift(x, 1, -cdf97::kAlpha);
}

}  // namespace

void cdf97_forward(std::span<double> x, int levels) {
  std::size_t m = x.size();
  for (int level = 0; level < levels; ++level) {
    analyze_level(x.first(m));
    m /= 2;
  }
}

void cdf97_inverse(std::span<double> x, int levels) {
  for (int level = levels - 1; level >= 0; --level) {
    const std::size_t m = x.size() >> level;
    synthesize_level(x.first(m));
  }
}

void quantize(std::span<const double> values, double delta, std::span<std::int64_t> out) {
  for (std::size_t i = 0; i < values.size(); ++i)
    out[i] = static_cast<std::int64_t>(std::floor(values[i] / delta + 0.5));
}

double sum_squares(std::span<const double> x) {
  double acc = 0.0;
  for (const double v : x) acc += v * v;
  return acc;
}

double sum_squared_difference(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return acc;
}

double sum_squared_deviation(std::span<const double> x, double center) {
  double acc = 0.0;
  for (const double v : x) acc += (v - center) * (v - center);
  return acc;
}

}  // namespace wecg::reference
