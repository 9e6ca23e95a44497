#include "wecg/kernels.hpp"

#include <cmath>

namespace wecg::kernels {
namespace {

using index_t = std::ptrdiff_t;

bool go_parallel(std::size_t n) { return n >= kParallelThreshold; }

}  // namespace

void split_even_odd(std::span<const double> x, std::span<double> even, std::span<double> odd) {
  const auto h = static_cast<index_t>(odd.size());
  const double* src = x.data();
  double* e = even.data();
  double* o = odd.data();
#pragma omp parallel for schedule(static) if (go_parallel(x.size()))
  for (index_t i = 0; i < h; ++i) {
    e[i] = src[2 * i];
    o[i] = src[2 * i + 1];
  }
}

void merge_even_odd(std::span<const double> even, std::span<const double> odd, std::span<double> x) {
  const auto h = static_cast<index_t>(odd.size());
  const double* e = even.data();
  const double* o = odd.data();
  double* dst = x.data();
#pragma omp parallel for schedule(static) if (go_parallel(x.size()))
  for (index_t i = 0; i < h; ++i) {
    dst[2 * i] = e[i];
    dst[2 * i + 1] = o[i];
  }
}

void lift_predict(std::span<double> odd, std::span<const double> even, double c) {
  const auto h = static_cast<index_t>(odd.size());
  if (h == 0) return;
  double* o = odd.data();
  const double* e = even.data();
#pragma omp parallel for schedule(static) if (go_parallel(odd.size()))
  for (index_t i = 0; i < h - 1; ++i) o[i] += c * (e[i] + e[i + 1]);
  o[h - 1] += c * (e[h - 1] + e[h - 1]);
}

void lift_update(std::span<double> even, std::span<const double> odd, double c) {
  const auto h = static_cast<index_t>(even.size());
  if (h == 0) return;
  double* e = even.data();
  const double* o = odd.data();
  e[0] += c * (o[0] + o[0]);
#pragma omp parallel for schedule(static) if (go_parallel(even.size()))
  for (index_t i = 1; i < h; ++i) e[i] += c * (o[i - 1] + o[i]);
}

void scale(std::span<double> x, double factor) {
  const auto n = static_cast<index_t>(x.size());
  double* p = x.data();
#pragma omp parallel for schedule(static) if (go_parallel(x.size()))
  for (index_t i = 0; i < n; ++i) p[i] *= factor;
}

void quantize(std::span<const double> values, double delta, std::span<std::int64_t> out) {
  const auto n = static_cast<index_t>(values.size());
  const double* v = values.data();
  std::int64_t* q = out.data();
#pragma omp parallel for schedule(static) if (go_parallel(values.size()))
  for (index_t i = 0; i < n; ++i) q[i] = static_cast<std::int64_t>(std::floor(v[i] / delta + 0.5));
}

double sum(std::span<const double> x) {
  const auto n = static_cast<index_t>(x.size());
  const double* p = x.data();
  double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc) if (go_parallel(x.size()))
  for (index_t i = 0; i < n; ++i) acc += p[i];
  return acc;
}

double sum_squares(std::span<const double> x) {
  const auto n = static_cast<index_t>(x.size());
  const double* p = x.data();
  double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc) if (go_parallel(x.size()))
  for (index_t i = 0; i < n; ++i) acc += p[i] * p[i];
  return acc;
}

double sum_squared_difference(std::span<const double> a, std::span<const double> b) {
  const auto n = static_cast<index_t>(a.size());
  const double* pa = a.data();
  const double* pb = b.data();
  double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc) if (go_parallel(a.size()))
  for (index_t i = 0; i < n; ++i) {
    const double d = pa[i] - pb[i];
    acc += d * d;
  }
  return acc;
}

double sum_squared_deviation(std::span<const double> x, double center) {
  const auto n = static_cast<index_t>(x.size());
  const double* p = x.data();
  double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc) if (go_parallel(x.size()))
  for (index_t i = 0; i < n; ++i) {
    const double d = p[i] - center;
    acc += d * d;
  }
  return acc;
}

}  // namespace wecg::kernels
