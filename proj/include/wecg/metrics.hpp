#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace wecg::metrics {

// 100 * ||f - fr|| / ||f||. Throws invalid_argument on length mismatch or a
// zero-norm reference.
double prd(std::span<const double> f, std::span<const double> fr);

// 100 * ||f - fr|| / ||f - mean(f)||. Throws invalid_argument on constant f.
double prdn(std::span<const double> f, std::span<const double> fr);

// ceil(n_samples * adc_bits / 8) / archive_bytes.
double compression_ratio(std::uint64_t n_samples, int adc_bits, std::uint64_t archive_bytes);

// cr / prd; zero when cr is zero.
double quality_score(double cr, double prd);

// Relative gain of cr1 over cr2 in percent.
double gain(double cr1, double cr2);

struct LocalPrd {
  std::size_t segment_length = 0;
  std::size_t segment_count = 0;               // Q = floor(N / L)
  std::vector<double> per_segment;             // NaN where the segment norm is zero
  std::vector<std::size_t> excluded_segments;  // 1-based
  double mean = 0.0;
  double std = 0.0;              // sample std (1/(Q-1)); 0 with fewer than two segments
  std::size_t worst_segment = 0;  // 1-based q*, smallest index on ties; 0 if none
  double worst_prd = 0.0;
};

// Per-segment prd on disjoint consecutive segments of length L; the trailing
// partial segment is ignored.
LocalPrd local_prd(std::span<const double> f, std::span<const double> fr, std::size_t segment_length);

struct WorstSegment {
  std::size_t index = 0;  // 1-based
  double prd = 0.0;
};
WorstSegment worst_segment(std::span<const double> f, std::span<const double> fr, std::size_t segment_length);

struct QualityReport {
  std::string record_id;
  double prd = 0.0;
  double prdn = 0.0;
  double cr = 0.0;
  double qs = 0.0;
  double local_mean = 0.0;
  double local_std = 0.0;
  std::size_t worst_segment_index = 0;
  double worst_segment_prd = 0.0;
  std::size_t segment_length = 0;
  std::size_t segment_count = 0;
};

inline constexpr std::size_t kDefaultSegmentLength = 2000;

QualityReport evaluate(std::span<const double> f, std::span<const double> fr, int adc_bits,
                       std::uint64_t archive_bytes, std::size_t segment_length = kDefaultSegmentLength);

// key=value lines.
void write_report(std::ostream& out, const QualityReport& r);

// record_id,prd,prdn,cr,qs,local_mean,local_std,q_star
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const QualityReport& r);

}  // namespace wecg::metrics
