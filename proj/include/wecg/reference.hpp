#pragma once

// Serial reference implementations. They are written independently of the
// parallel kernels (the transform works in place on the interleaved signal
// with explicit index reflection) and exist for tests and benchmarks.

#include <cstdint>
#include <span>

namespace wecg::reference {

// Multi-level CDF 9/7 analysis in place; output layout matches dwt::forward.
void cdf97_forward(std::span<double> x, int levels);
void cdf97_inverse(std::span<double> x, int levels);

void quantize(std::span<const double> values, double delta, std::span<std::int64_t> out);

double sum_squares(std::span<const double> x);
double sum_squared_difference(std::span<const double> a, std::span<const double> b);
double sum_squared_deviation(std::span<const double> x, double center);

}  // namespace wecg::reference
