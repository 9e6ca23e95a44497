#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wecg/codec.hpp"
#include "wecg/signal_io.hpp"

namespace wecg::tuner {

struct TuneSpec {
  double target_prd = 0.53;
  Mode mode = Mode::A;
  double prd0_fraction = 0.75;      // mode A: prd0 = fraction * target
  double tolerance_percent = 0.5;   // accepted |achieved - target|, percent of target
  int max_iters = 40;
  double delta_lo = 1e-3;
  double delta_hi = 1e4;
  int levels = 4;
};

void validate(const TuneSpec& spec);

struct TuneResult {
  CodecParams params;
  double achieved_prd = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Bisection on delta (geometric midpoints) for a signal; mode A fixes prd0
// first. Falls back to the best delta seen, with a warning, when the target is
// not met.
TuneResult tune_record(const Signal& s, const TuneSpec& spec);

struct CorpusResult {
  CodecParams params;
  double mean_prd = 0.0;
  std::vector<double> record_prd;
  bool converged = false;
  int iterations = 0;
};

// One delta shared by every record, chosen so the unweighted mean PRD meets
// the target. Records are evaluated in parallel within each iteration.
CorpusResult tune_corpus(std::span<const Signal> records, const TuneSpec& spec);

// PRD of a full encode/decode of each record with fixed params, in parallel.
std::vector<double> corpus_prd(std::span<const Signal> records, const CodecParams& params);

}  // namespace wecg::tuner
