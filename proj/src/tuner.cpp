#include "wecg/tuner.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "wecg/dwt.hpp"
#include "wecg/error.hpp"
#include "wecg/kernels.hpp"
#include "wecg/log.hpp"
#include "wecg/metrics.hpp"
#include "wecg/parallel.hpp"

namespace wecg::tuner {
namespace {

// Transform computed once; each delta only re-runs quantization and synthesis.
struct Prepared {
  const Signal* original = nullptr;
  std::vector<double> coeffs;
  double norm = 0.0;
  std::uint64_t original_length = 0;
};

Prepared prepare(const Signal& s, int levels) {
  validate(s);
  Prepared p;
  p.original = &s;
  const dwt::Padded padded = dwt::pad_to_multiple(s, levels);
  p.norm = std::sqrt(kernels::sum_squares(padded.signal.samples));
  p.original_length = padded.original_length;
  p.coeffs = padded.signal.samples;
  dwt::forward_in_place(p.coeffs, levels);
  return p;
}

double achieved(const Prepared& p, const CodecParams& params) {
  const QuantizedSet q = codec::encode_coeffs(p.coeffs, params.levels, p.norm, p.original_length, params, false);
  const Signal rec = codec::decode(q);
  return metrics::prd(p.original->samples, rec.samples);
}

struct SearchOutcome {
  double delta = 0.0;
  double prd = 0.0;
  bool converged = false;
  int iterations = 0;
};

// PRD is treated as non-decreasing in delta; plateaus are absorbed by the
// tolerance and the best point seen is kept.
SearchOutcome bisect(const std::function<double(double)>& prd_at, const TuneSpec& spec) {
  const double tol = spec.tolerance_percent / 100.0 * spec.target_prd;
  SearchOutcome best{0.0, 0.0, false, 0};
  double best_err = std::numeric_limits<double>::infinity();
  auto probe = [&](double delta) {
    const double value = prd_at(delta);
    const double err = std::abs(value - spec.target_prd);
    if (err < best_err) {
      best_err = err;
      best.delta = delta;
      best.prd = value;
    }
    return value;
  };

  double lo = spec.delta_lo;
  double hi = spec.delta_hi;
  double prd_lo = probe(lo);
  double prd_hi = probe(hi);
  for (int i = 0; i < 3 && prd_hi < spec.target_prd - tol; ++i) {
    lo = hi;
    prd_lo = prd_hi;
    hi *= 10.0;
    prd_hi = probe(hi);
  }
  for (int i = 0; i < 3 && prd_lo > spec.target_prd + tol; ++i) {
    hi = lo;
    prd_hi = prd_lo;
    lo /= 10.0;
    prd_lo = probe(lo);
  }
  if (best_err <= tol) {
    best.converged = true;
    return best;
  }
  if (prd_hi < spec.target_prd - tol || prd_lo > spec.target_prd + tol) return best;

  for (int it = 0; it < spec.max_iters; ++it) {
    best.iterations = it + 1;
    const double mid = std::sqrt(lo * hi);
    const double value = probe(mid);
    if (best_err <= tol) break;
    if (value < spec.target_prd) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  best.converged = best_err <= tol;
  return best;
}

CodecParams base_params(const TuneSpec& spec) {
  CodecParams p;
  p.mode = spec.mode;
  p.levels = spec.levels;
  p.prd0_percent = spec.mode == Mode::A ? spec.prd0_fraction * spec.target_prd : 0.0;
  return p;
}

void warn_unmet(const char* what, const TuneSpec& spec, double delta, double prd) {
  std::ostringstream msg;
  msg << what << ": target PRD " << spec.target_prd << " not reached; best delta " << delta << " gives PRD " << prd;
  log::warn(msg.str());
}

}  // namespace

void validate(const TuneSpec& spec) {
  if (!(spec.target_prd > 0.0)) fail(ErrorCode::invalid_argument, "target PRD must be positive");
  if (!(spec.prd0_fraction >= 0.0 && spec.prd0_fraction <= 1.0))
    fail(ErrorCode::invalid_argument, "prd0 fraction must be in [0, 1]");
  if (!(spec.tolerance_percent > 0.0)) fail(ErrorCode::invalid_argument, "tolerance must be positive");
  if (spec.max_iters < 1) fail(ErrorCode::invalid_argument, "max_iters must be at least 1");
  if (!(spec.delta_lo > 0.0 && spec.delta_lo < spec.delta_hi))
    fail(ErrorCode::invalid_argument, "delta bracket must satisfy 0 < lo < hi");
}

TuneResult tune_record(const Signal& s, const TuneSpec& spec) {
  validate(spec);
  CodecParams params = base_params(spec);
  validate(params);
  const Prepared prepared = prepare(s, spec.levels);
  const SearchOutcome found = bisect(
      [&](double delta) {
        CodecParams p = params;
        p.delta = delta;
        return achieved(prepared, p);
      },
      spec);
  params.delta = found.delta;
  if (!found.converged) warn_unmet("tune_record", spec, found.delta, found.prd);
  return {params, found.prd, found.converged, found.iterations};
}

CorpusResult tune_corpus(std::span<const Signal> records, const TuneSpec& spec) {
  validate(spec);
  if (records.empty()) fail(ErrorCode::invalid_argument, "tune_corpus: no records");
  CodecParams params = base_params(spec);
  validate(params);

  std::vector<Prepared> prepared(records.size());
  parallel_for(records.size(), [&](std::size_t i) { prepared[i] = prepare(records[i], spec.levels); });

  std::vector<double> per_record(records.size());
  auto mean_at = [&](double delta) {
    CodecParams p = params;
    p.delta = delta;
    parallel_for(records.size(), [&](std::size_t i) { per_record[i] = achieved(prepared[i], p); });
    double total = 0.0;
    for (const double v : per_record) total += v;
    return total / static_cast<double>(per_record.size());
  };
  const SearchOutcome found = bisect(mean_at, spec);
  params.delta = found.delta;
  CorpusResult result;
  result.params = params;
  result.mean_prd = mean_at(found.delta);
  result.record_prd = per_record;
  result.converged = found.converged;
  result.iterations = found.iterations;
  if (!found.converged) warn_unmet("tune_corpus", spec, found.delta, found.prd);
  return result;
}

std::vector<double> corpus_prd(std::span<const Signal> records, const CodecParams& params) {
  validate(params);
  std::vector<double> out(records.size());
  parallel_for(records.size(), [&](std::size_t i) {
    const Signal rec = codec::decode(codec::encode(records[i], params));
    out[i] = metrics::prd(records[i].samples, rec.samples);
  });
  return out;
}

}  // namespace wecg::tuner
