#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace wecg {

inline constexpr double kDefaultSampleRateHz = 360.0;
inline constexpr int kDefaultAdcBits = 11;

// A sampled record. Samples are ADC units held as doubles; the codec is the
// only place values become integers.
struct Signal {
  std::vector<double> samples;
  double sample_rate_hz = kDefaultSampleRateHz;
  int adc_bits = kDefaultAdcBits;
  std::string record_id;

  std::size_t size() const noexcept { return samples.size(); }
};

// Throws invalid_argument unless samples is non-empty, the rate positive and
// adc_bits in [8, 32].
void validate(const Signal& s);

namespace signal_io {

// PhysioNet format 212: two channels interleaved, each frame of three bytes
// packs one 12-bit two's-complement sample per channel.
//   byte0 = low 8 bits of ch0
//   byte1 = (high nibble of ch1) << 4 | (high nibble of ch0)
//   byte2 = low 8 bits of ch1
Signal read_format212(std::span<const std::uint8_t> bytes, int channel,
                      std::size_t n_samples);

// Packs two equal-length channels into format-212 frames. Values must fit in
// 12-bit two's complement.
std::vector<std::uint8_t> write_format212(std::span<const std::int32_t> channel0,
                                          std::span<const std::int32_t> channel1);

// One number per line. Lines starting with '#' are headers and may carry
// `key=value` pairs: fs (or sample_rate), adc_bits, record.
Signal read_text(std::istream& in);
Signal read_text_string(const std::string& text);

// Writes samples one per line with shortest round-trip formatting, preceded by
// `# fs=`, `# adc_bits=` and (if set) `# record=` headers.
void write_text(std::ostream& out, const Signal& s);

Signal subtract_baseline(Signal s, double baseline);

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace signal_io
}  // namespace wecg
