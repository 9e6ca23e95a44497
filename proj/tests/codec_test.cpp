#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "synthetic.hpp"
#include "wecg/codec.hpp"
#include "wecg/dwt.hpp"
#include "wecg/error.hpp"
#include "wecg/log.hpp"
#include "wecg/metrics.hpp"

namespace wecg {
namespace {

TEST(SelectLargest, Examples) {
  const std::vector<double> w{3.0, -1.0, 2.0};
  SparseCoeffs s = codec::select_largest(w, std::sqrt(2.0));
  EXPECT_EQ(s.values, (std::vector<double>{2.0, 3.0}));
  EXPECT_EQ(s.indices, (std::vector<std::uint64_t>{3, 1}));

  s = codec::select_largest(w, 0.0);
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.indices, (std::vector<std::uint64_t>{2, 3, 1}));

  const std::vector<double> z{0.0, 0.0, 5.0};
  s = codec::select_largest(z, std::sqrt(0.5));
  EXPECT_EQ(s.values, (std::vector<double>{5.0}));
  EXPECT_EQ(s.indices, (std::vector<std::uint64_t>{3}));

  EXPECT_THROW(codec::select_largest(w, -1.0), Error);
}

// Brute force over all subsets: the largest dropped set whose energy stays
// below tol^2 determines how many coefficients must be kept.
TEST(SelectLargest, MatchesExhaustiveOracle) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(1, 12);
  std::uniform_int_distribution<int> small(-4, 4);
  std::uniform_real_distribution<double> frac(0.0, 1.2);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = len(rng);
    std::vector<double> w(n);
    for (double& v : w) v = small(rng) * 0.5;
    double total = 0.0;
    for (const double v : w) total += v * v;
    const double tol = std::sqrt(frac(rng) * total);

    std::size_t best_dropped = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      double e = 0.0;
      std::size_t count = 0;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) {
          e += w[i] * w[i];
          ++count;
        }
      if (e < tol * tol) best_dropped = std::max(best_dropped, count);
    }
    const SparseCoeffs s = codec::select_largest(w, tol);
    ASSERT_EQ(s.size(), static_cast<std::size_t>(n) - best_dropped) << "trial " << trial;

    // The kept coefficients are the largest magnitudes, ascending, ties by index.
    std::vector<std::size_t> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return std::abs(w[a]) < std::abs(w[b]); });
    for (std::size_t j = 0; j < s.size(); ++j) {
      const std::size_t expected = order[best_dropped + j];
      EXPECT_EQ(s.indices[j], expected + 1);
      EXPECT_EQ(s.values[j], w[expected]);
    }
  }
}

TEST(Quantize, Examples) {
  const std::vector<double> c{100.0, -100.0, 17.5, 0.0, -17.5, 52.5};
  const auto q = codec::quantize(c, 35.0);
  EXPECT_EQ(q, (std::vector<std::int64_t>{3, -3, 1, 0, 0, 2}));
  EXPECT_THROW(codec::quantize(c, 0.0), Error);
  EXPECT_THROW(codec::quantize(c, -1.0), Error);
}

TEST(Quantize, ErrorBoundedByHalfStep) {
  std::mt19937_64 rng(12);
  const std::vector<double> c = testing::uniform_signal(10000, rng, -1e4, 1e4);
  for (const double delta : {0.1, 3.0, 35.0, 177.0}) {
    const auto q = codec::quantize(c, delta);
    for (std::size_t i = 0; i < c.size(); ++i)
      ASSERT_LE(std::abs(c[i] - delta * static_cast<double>(q[i])), delta / 2 * (1 + 1e-12));
  }
}

TEST(DropZeros, KeepsNonZeroWithIndices) {
  const std::vector<std::int64_t> q{0, 3, 0, -2, 0};
  const std::vector<std::uint64_t> idx{5, 4, 3, 2, 1};
  const codec::NonZero nz = codec::drop_zeros(q, idx);
  EXPECT_EQ(nz.values, (std::vector<std::int64_t>{3, -2}));
  EXPECT_EQ(nz.indices, (std::vector<std::uint64_t>{4, 2}));
}

TEST(DeltaIndices, Examples) {
  const std::vector<std::uint64_t> idx{7, 2, 3};
  const codec::DeltaIndices d = codec::delta_encode_indices(idx);
  EXPECT_EQ(d.deltas, (std::vector<std::uint64_t>{2, 1, 4}));
  EXPECT_EQ(d.permutation, (std::vector<std::size_t>{2, 3, 1}));
  EXPECT_EQ(codec::delta_decode_indices(d.deltas), (std::vector<std::uint64_t>{2, 3, 7}));

  EXPECT_THROW(codec::delta_encode_indices(std::vector<std::uint64_t>{1, 1}), Error);
  EXPECT_THROW(codec::delta_encode_indices(std::vector<std::uint64_t>{0, 4}), Error);
  EXPECT_THROW(codec::delta_decode_indices(std::vector<std::uint64_t>{1, 0}), Error);
  EXPECT_TRUE(codec::delta_decode_indices({}).empty());
}

// Recovery must be the running sum of deltas; adding each delta to the
// previous delta instead of the previous index breaks after three entries.
TEST(DeltaIndices, RecoveryIsPrefixSum) {
  const std::vector<std::uint64_t> idx{1, 4, 6, 10};
  const auto d = codec::delta_encode_indices(idx);
  EXPECT_EQ(d.deltas, (std::vector<std::uint64_t>{1, 3, 2, 4}));
  const auto back = codec::delta_decode_indices(d.deltas);
  EXPECT_EQ(back, idx);
  std::vector<std::uint64_t> pairwise(d.deltas.size());
  pairwise[0] = d.deltas[0];
  for (std::size_t i = 1; i < d.deltas.size(); ++i) pairwise[i] = d.deltas[i] + d.deltas[i - 1];
  EXPECT_NE(pairwise, idx);
}

TEST(DeltaIndices, RoundTripProperty) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    std::uniform_int_distribution<std::uint64_t> pos(1, 100000);
    std::vector<std::uint64_t> idx(trial % 50);
    for (auto& v : idx) v = pos(rng);
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto d = codec::delta_encode_indices(idx);
    const auto back = codec::delta_decode_indices(d.deltas);
    std::vector<std::uint64_t> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    ASSERT_EQ(back, sorted);
    for (std::size_t i = 0; i < idx.size(); ++i) ASSERT_EQ(back[i], idx[d.permutation[i] - 1]);
  }
}

TEST(Codec, ModesCoincideWithoutThreshold) {
  const Signal s = testing::synthetic_ecg(8192, 3);
  CodecParams a{Mode::A, 20.0, 0.0, 4};
  CodecParams b{Mode::B, 20.0, 0.0, 4};
  QuantizedSet qa = codec::encode(s, a);
  const QuantizedSet qb = codec::encode(s, b);
  EXPECT_EQ(qa.mode, Mode::A);
  qa.mode = Mode::B;
  EXPECT_EQ(qa, qb);
}

TEST(Codec, CoefficientCountMonotoneInDelta) {
  const Signal s = testing::synthetic_ecg(16384, 4);
  for (const Mode mode : {Mode::A, Mode::B}) {
    std::size_t previous = std::numeric_limits<std::size_t>::max();
    for (const double delta : {1.0, 2.0, 5.0, 10.0, 35.0, 100.0, 300.0}) {
      const QuantizedSet q = codec::encode(s, CodecParams{mode, delta, 0.3, 4});
      EXPECT_LE(q.k(), previous) << "delta=" << delta;
      previous = q.k();
    }
  }
}

TEST(Codec, DequantizedCoefficientsWithinHalfStep) {
  const Signal s = testing::synthetic_ecg(4096, 5);
  const CodecParams p{Mode::B, 17.0, 0.0, 4};
  const QuantizedSet q = codec::encode(s, p);
  const WaveletCoeffs w = dwt::forward(s, 4);
  const std::vector<double> back = codec::dequantize(q);
  ASSERT_EQ(back.size(), w.size());
  for (std::size_t i = 0; i < w.size(); ++i) ASSERT_LE(std::abs(back[i] - w.coeffs[i]), p.delta / 2 + 1e-9);
}

TEST(Codec, TinyDeltaReconstructsAlmostExactly) {
  const Signal s = testing::synthetic_ecg(4096, 6);
  const QuantizedSet q = codec::encode(s, CodecParams{Mode::B, 1e-6, 0.0, 4});
  const Signal r = codec::decode(q);
  ASSERT_EQ(r.size(), 4096u);
  double err = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) err = std::max(err, std::abs(r.samples[i] - s.samples[i]));
  EXPECT_LE(err, 1e-5);
}

TEST(Codec, ModeAThresholdBoundsDiscardedEnergy) {
  const Signal s = testing::synthetic_ecg(8192, 7);
  const QuantizedSet q = codec::encode(s, CodecParams{Mode::A, 1e-6, 0.4, 4});
  EXPECT_LT(q.k(), 8192u);
  const WaveletCoeffs w = dwt::forward(s, 4);
  const std::vector<double> kept = codec::dequantize(q);
  double discarded = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (kept[i] == 0.0) discarded += w.coeffs[i] * w.coeffs[i];
    else EXPECT_NEAR(kept[i], w.coeffs[i], 1e-6);
  }
  for (const double v : s.samples) norm += v * v;
  const double tol = 0.4 / 100.0 * std::sqrt(norm);
  EXPECT_LT(discarded, tol * tol);
  // The transform is biorthogonal, so PRD only approximates the threshold.
  const Signal r = codec::decode(q);
  EXPECT_NEAR(metrics::prd(s.samples, r.samples), 0.4, 0.04);
}

TEST(Codec, AllZeroWarnsAndDecodesToSilence) {
  // Zero-mean and small compared to the step.
  Signal s;
  s.samples.assign(64, 0.0);
  for (std::size_t i = 0; i < 64; ++i) s.samples[i] = (i % 2 ? 1.0 : -1.0);
  std::vector<std::string> warnings;
  log::ScopedWarningHandler guard([&](std::string_view m) { warnings.emplace_back(m); });
  const QuantizedSet q = codec::encode(s, CodecParams{Mode::B, 1000.0, 0.0, 2});
  EXPECT_EQ(q.k(), 0u);
  EXPECT_EQ(warnings.size(), 1u);
  const Signal r = codec::decode(q);
  ASSERT_EQ(r.size(), 64u);
  for (const double v : r.samples) EXPECT_EQ(v, 0.0);
}

TEST(Codec, PaddedLengthRecorded) {
  const Signal s = testing::synthetic_ecg(1001, 8);
  const QuantizedSet q = codec::encode(s, CodecParams{Mode::B, 5.0, 0.0, 3});
  EXPECT_EQ(q.n, 1008u);
  EXPECT_EQ(q.original_length, 1001u);
}

TEST(Codec, Deterministic) {
  const Signal s = testing::synthetic_ecg(20000, 9);
  const CodecParams p{Mode::A, 30.0, 0.35, 4};
  EXPECT_EQ(codec::encode(s, p), codec::encode(s, p));
}

TEST(Codec, RejectsBadParams) {
  const Signal s = testing::synthetic_ecg(256, 10);
  EXPECT_THROW(codec::encode(s, CodecParams{Mode::B, 0.0, 0.0, 4}), Error);
  EXPECT_THROW(codec::encode(s, CodecParams{Mode::A, 1.0, -1.0, 4}), Error);
  EXPECT_THROW(codec::encode(s, CodecParams{Mode::B, 1.0, 0.0, 0}), Error);
  Signal empty;
  EXPECT_THROW(codec::encode(empty, CodecParams{}), Error);
}

TEST(Codec, ValidateRejectsInconsistentSet) {
  QuantizedSet q;
  q.n = 8;
  q.levels = 3;
  q.delta = 1.0;
  q.original_length = 8;
  q.magnitudes = {1};
  q.signs = {1};
  q.index_deltas = {9};
  EXPECT_THROW(validate(q), Error);
  q.index_deltas = {8};
  EXPECT_NO_THROW(validate(q));
  q.signs = {2};
  EXPECT_THROW(validate(q), Error);
}

}  // namespace
}  // namespace wecg
