#pragma once

// Data-parallel inner loops shared by the transform, the quantizer and the
// metrics. Every kernel here has a serial twin in reference.hpp that the tests
// compare against and the benchmark races.

#include <cstddef>
#include <cstdint>
#include <span>

namespace wecg::kernels {

// Below this many elements the loops run single-threaded.
inline constexpr std::size_t kParallelThreshold = 1 << 14;

void split_even_odd(std::span<const double> x, std::span<double> even, std::span<double> odd);
void merge_even_odd(std::span<const double> even, std::span<const double> odd, std::span<double> x);

// odd[i] += c * (even[i] + even[i + 1]), with even[h] mirrored onto even[h - 1].
void lift_predict(std::span<double> odd, std::span<const double> even, double c);
// even[i] += c * (odd[i - 1] + odd[i]), with odd[-1] mirrored onto odd[0].
void lift_update(std::span<double> even, std::span<const double> odd, double c);

void scale(std::span<double> x, double factor);

// out[i] = floor(values[i] / delta + 1/2)
void quantize(std::span<const double> values, double delta, std::span<std::int64_t> out);

double sum(std::span<const double> x);
double sum_squares(std::span<const double> x);
double sum_squared_difference(std::span<const double> a, std::span<const double> b);
double sum_squared_deviation(std::span<const double> x, double center);

}  // namespace wecg::kernels
