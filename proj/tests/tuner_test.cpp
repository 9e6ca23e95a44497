#include <gtest/gtest.h>

#include <cmath>

#include "synthetic.hpp"
#include "wecg/codec.hpp"
#include "wecg/error.hpp"
#include "wecg/log.hpp"
#include "wecg/metrics.hpp"
#include "wecg/tuner.hpp"

namespace wecg::tuner {
namespace {

double prd_of(const Signal& s, const CodecParams& p) {
  Signal r = codec::decode(codec::encode(s, p));
  r.samples.resize(s.size());
  return metrics::prd(s.samples, r.samples);
}

TEST(Tuner, ConvergesOnAr1Signal) {
  const Signal s = testing::ar1_signal(20000, 5, 0.95, 10.0, 1000.0);
  for (const Mode mode : {Mode::A, Mode::B}) {
    TuneSpec spec;
    spec.mode = mode;
    spec.target_prd = 0.5;
    const TuneResult r = tune_record(s, spec);
    EXPECT_TRUE(r.converged);
    EXPECT_LE(std::abs(r.achieved_prd - 0.5), 0.005 * 0.5 + 1e-12);
    EXPECT_LE(r.iterations, spec.max_iters);
    // The reported PRD is what a plain encode/decode gives.
    EXPECT_DOUBLE_EQ(prd_of(s, r.params), r.achieved_prd);
    if (mode == Mode::A) EXPECT_NEAR(r.params.prd0_percent, 0.375, 1e-12);
  }
}

TEST(Tuner, ConvergesOnSyntheticEcg) {
  const Signal s = testing::synthetic_ecg(36000, 6);
  TuneSpec spec;
  spec.target_prd = 0.53;
  const TuneResult r = tune_record(s, spec);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.achieved_prd, 0.53, 0.53 * 0.005);
}

TEST(Tuner, UnreachableTargetWarnsAndKeepsBest) {
  const Signal s = testing::ar1_signal(4096, 7, 0.9, 5.0, 1000.0);
  TuneSpec spec;
  spec.mode = Mode::B;
  spec.target_prd = 150.0;
  std::vector<std::string> warnings;
  log::ScopedWarningHandler guard([&](std::string_view m) { warnings.emplace_back(m); });
  const TuneResult r = tune_record(s, spec);
  EXPECT_FALSE(r.converged);
  EXPECT_FALSE(warnings.empty());
  EXPECT_GT(r.achieved_prd, 0.0);
  EXPECT_LE(r.achieved_prd, 100.0 + 1e-9);
  EXPECT_DOUBLE_EQ(prd_of(s, r.params), r.achieved_prd);
}

TEST(Tuner, SingleRecordCorpusMatchesRecord) {
  const Signal s = testing::synthetic_ecg(20000, 8);
  TuneSpec spec;
  spec.target_prd = 0.6;
  const TuneResult one = tune_record(s, spec);
  const CorpusResult all = tune_corpus(std::span(&s, 1), spec);
  EXPECT_EQ(all.params.delta, one.params.delta);
  EXPECT_EQ(all.mean_prd, one.achieved_prd);
  EXPECT_EQ(all.converged, one.converged);
}

TEST(Tuner, CorpusMeanMatchesIndependentEvaluation) {
  std::vector<Signal> records;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) records.push_back(testing::synthetic_ecg(12000, seed));
  TuneSpec spec;
  spec.target_prd = 0.7;
  const CorpusResult r = tune_corpus(records, spec);
  EXPECT_TRUE(r.converged);
  double mean = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const double p = prd_of(records[i], r.params);
    EXPECT_DOUBLE_EQ(p, r.record_prd[i]);
    mean += p;
  }
  mean /= static_cast<double>(records.size());
  EXPECT_NEAR(mean, r.mean_prd, 1e-12);
  EXPECT_NEAR(r.mean_prd, 0.7, 0.7 * 0.005);
  EXPECT_EQ(corpus_prd(records, r.params), r.record_prd);
}

TEST(Tuner, Deterministic) {
  const Signal s = testing::synthetic_ecg(15000, 9);
  TuneSpec spec;
  spec.target_prd = 0.45;
  const TuneResult a = tune_record(s, spec);
  const TuneResult b = tune_record(s, spec);
  EXPECT_EQ(a.params.delta, b.params.delta);
  EXPECT_EQ(a.achieved_prd, b.achieved_prd);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Tuner, RejectsBadSpec) {
  const Signal s = testing::synthetic_ecg(1000, 10);
  TuneSpec spec;
  spec.target_prd = 0.0;
  EXPECT_THROW(tune_record(s, spec), Error);
  spec = TuneSpec{};
  spec.prd0_fraction = 1.5;
  EXPECT_THROW(tune_record(s, spec), Error);
  spec = TuneSpec{};
  spec.max_iters = 0;
  EXPECT_THROW(tune_record(s, spec), Error);
  EXPECT_THROW(tune_corpus({}, TuneSpec{}), Error);
}

}  // namespace
}  // namespace wecg::tuner
