// Parallel kernels against their serial references.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "synthetic.hpp"
#include "wecg/dwt.hpp"
#include "wecg/kernels.hpp"
#include "wecg/reference.hpp"

namespace wecg {
namespace {

TEST(Kernels, TransformMatchesReference) {
  std::mt19937_64 rng(42);
  for (const std::size_t n : {2u, 16u, 256u, 4096u, 1u << 16, 650000u}) {
    for (int lv = 1; lv <= 5; ++lv) {
      if (!dwt::divisible(n, lv)) continue;
      const std::vector<double> x = testing::uniform_signal(n, rng, -1000.0, 1000.0);
      std::vector<double> fast = x, slow = x;
      dwt::forward_in_place(fast, lv);
      reference::cdf97_forward(slow, lv);
      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(fast[i] - slow[i]));
      EXPECT_LE(err, 1e-9) << "n=" << n << " lv=" << lv;

      dwt::inverse_in_place(fast, lv);
      reference::cdf97_inverse(slow, lv);
      for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(fast[i], slow[i], 1e-9);
    }
  }
}

TEST(Kernels, QuantizeMatchesReferenceExactly) {
  std::mt19937_64 rng(3);
  const std::vector<double> v = testing::uniform_signal(100000, rng, -5000.0, 5000.0);
  for (const double delta : {0.5, 1.0, 35.0, 117.25}) {
    std::vector<std::int64_t> a(v.size()), b(v.size());
    kernels::quantize(v, delta, a);
    reference::quantize(v, delta, b);
    EXPECT_EQ(a, b);
  }
}

TEST(Kernels, ReductionsMatchReference) {
  std::mt19937_64 rng(5);
  const std::vector<double> a = testing::uniform_signal(300001, rng);
  const std::vector<double> b = testing::uniform_signal(300001, rng);
  const double ss = reference::sum_squares(a);
  EXPECT_NEAR(kernels::sum_squares(a), ss, 1e-12 * ss);
  const double sd = reference::sum_squared_difference(a, b);
  EXPECT_NEAR(kernels::sum_squared_difference(a, b), sd, 1e-12 * sd);
  const double dev = reference::sum_squared_deviation(a, 0.25);
  EXPECT_NEAR(kernels::sum_squared_deviation(a, 0.25), dev, 1e-12 * dev);
}

TEST(Kernels, LiftingBoundaryMirrorsEdges) {
  std::vector<double> odd{1.0, 2.0};
  const std::vector<double> even{10.0, 20.0};
  kernels::lift_predict(odd, even, 0.5);
  EXPECT_DOUBLE_EQ(odd[0], 1.0 + 0.5 * 30.0);
  EXPECT_DOUBLE_EQ(odd[1], 2.0 + 0.5 * 40.0);

  std::vector<double> e{10.0, 20.0};
  const std::vector<double> o{1.0, 2.0};
  kernels::lift_update(e, o, 0.5);
  EXPECT_DOUBLE_EQ(e[0], 10.0 + 0.5 * 2.0);
  EXPECT_DOUBLE_EQ(e[1], 20.0 + 0.5 * 3.0);
}

}  // namespace
}  // namespace wecg
