#include "wecg/metrics.hpp"

#include <cmath>
#include <limits>

#include "wecg/error.hpp"
#include "wecg/kernels.hpp"

namespace wecg::metrics {
namespace {

void check_lengths(std::span<const double> f, std::span<const double> fr) {
  if (f.size() != fr.size())
    fail(ErrorCode::invalid_argument, "signals differ in length (" + std::to_string(f.size()) + " vs " +
                                          std::to_string(fr.size()) + ")");
}

}  // namespace

double prd(std::span<const double> f, std::span<const double> fr) {
  check_lengths(f, fr);
  const double reference = kernels::sum_squares(f);
  if (!(reference > 0.0)) fail(ErrorCode::invalid_argument, "prd: reference signal has zero norm");
  return 100.0 * std::sqrt(kernels::sum_squared_difference(f, fr)) / std::sqrt(reference);
}

double prdn(std::span<const double> f, std::span<const double> fr) {
  check_lengths(f, fr);
  if (f.empty()) fail(ErrorCode::invalid_argument, "prdn: empty signal");
  const double mean = kernels::sum(f) / static_cast<double>(f.size());
  const double spread = kernels::sum_squared_deviation(f, mean);
  if (!(spread > 0.0)) fail(ErrorCode::invalid_argument, "prdn: reference signal is constant");
  return 100.0 * std::sqrt(kernels::sum_squared_difference(f, fr)) / std::sqrt(spread);
}

double compression_ratio(std::uint64_t n_samples, int adc_bits, std::uint64_t archive_bytes) {
  if (archive_bytes == 0) fail(ErrorCode::invalid_argument, "compression_ratio: empty archive");
  if (adc_bits <= 0) fail(ErrorCode::invalid_argument, "compression_ratio: adc_bits must be positive");
  const std::uint64_t bits = n_samples * static_cast<std::uint64_t>(adc_bits);
  const std::uint64_t raw_bytes = (bits + 7) / 8;
  return static_cast<double>(raw_bytes) / static_cast<double>(archive_bytes);
}

double quality_score(double cr, double prd_value) {
  if (cr == 0.0) return 0.0;
  if (!(prd_value > 0.0)) fail(ErrorCode::invalid_argument, "quality_score: prd must be positive");
  return cr / prd_value;
}

double gain(double cr1, double cr2) {
  if (!(cr2 > 0.0)) fail(ErrorCode::invalid_argument, "gain: baseline must be positive");
  return 100.0 * (cr1 - cr2) / cr2;
}

LocalPrd local_prd(std::span<const double> f, std::span<const double> fr, std::size_t segment_length) {
  check_lengths(f, fr);
  if (segment_length == 0) fail(ErrorCode::invalid_argument, "segment length must be at least 1");
  LocalPrd out;
  out.segment_length = segment_length;
  out.segment_count = f.size() / segment_length;
  out.per_segment.assign(out.segment_count, std::numeric_limits<double>::quiet_NaN());

  double total = 0.0;
  std::size_t valid = 0;
  for (std::size_t q = 0; q < out.segment_count; ++q) {
    const auto seg = f.subspan(q * segment_length, segment_length);
    const auto rec = fr.subspan(q * segment_length, segment_length);
    const double norm = kernels::sum_squares(seg);
    if (!(norm > 0.0)) {
      out.excluded_segments.push_back(q + 1);
      continue;
    }
    const double value = 100.0 * std::sqrt(kernels::sum_squared_difference(seg, rec)) / std::sqrt(norm);
    out.per_segment[q] = value;
    total += value;
    ++valid;
    if (out.worst_segment == 0 || value > out.worst_prd) {
      out.worst_segment = q + 1;
      out.worst_prd = value;
    }
  }
  if (valid > 0) out.mean = total / static_cast<double>(valid);
  if (valid > 1) {
    double acc = 0.0;
    for (const double v : out.per_segment)
      if (!std::isnan(v)) acc += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(acc / static_cast<double>(valid - 1));
  }
  return out;
}

WorstSegment worst_segment(std::span<const double> f, std::span<const double> fr, std::size_t segment_length) {
  const LocalPrd local = local_prd(f, fr, segment_length);
  return {local.worst_segment, local.worst_prd};
}

QualityReport evaluate(std::span<const double> f, std::span<const double> fr, int adc_bits,
                       std::uint64_t archive_bytes, std::size_t segment_length) {
  QualityReport r;
  r.prd = prd(f, fr);
  r.prdn = prdn(f, fr);
  r.cr = compression_ratio(f.size(), adc_bits, archive_bytes);
  r.qs = r.prd > 0.0 ? quality_score(r.cr, r.prd) : std::numeric_limits<double>::infinity();
  const LocalPrd local = local_prd(f, fr, segment_length);
  r.local_mean = local.mean;
  r.local_std = local.std;
  r.worst_segment_index = local.worst_segment;
  r.worst_segment_prd = local.worst_prd;
  r.segment_length = local.segment_length;
  r.segment_count = local.segment_count;
  return r;
}

void write_report(std::ostream& out, const QualityReport& r) {
  if (!r.record_id.empty()) out << "record=" << r.record_id << '\n';
  out << "prd=" << r.prd << '\n'
      << "prdn=" << r.prdn << '\n'
      << "cr=" << r.cr << '\n'
      << "qs=" << r.qs << '\n'
      << "local_mean=" << r.local_mean << '\n'
      << "local_std=" << r.local_std << '\n'
      << "q_star=" << r.worst_segment_index << '\n'
      << "q_star_prd=" << r.worst_segment_prd << '\n'
      << "segment_length=" << r.segment_length << '\n'
      << "segment_count=" << r.segment_count << '\n';
}

void write_csv_header(std::ostream& out) { out << "record_id,prd,prdn,cr,qs,local_mean,local_std,q_star\n"; }

void write_csv_row(std::ostream& out, const QualityReport& r) {
  out << r.record_id << ',' << r.prd << ',' << r.prdn << ',' << r.cr << ',' << r.qs << ',' << r.local_mean << ','
      << r.local_std << ',' << r.worst_segment_index << '\n';
}

}  // namespace wecg::metrics
