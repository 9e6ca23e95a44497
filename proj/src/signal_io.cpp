#include "wecg/signal_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "wecg/error.hpp"

namespace wecg {

void validate(const Signal& s) {
  if (s.samples.empty()) fail(ErrorCode::invalid_argument, "signal has no samples");
  if (!(s.sample_rate_hz > 0.0)) fail(ErrorCode::invalid_argument, "sample rate must be positive");
  if (s.adc_bits < 8 || s.adc_bits > 32)
    fail(ErrorCode::invalid_argument, "adc_bits must be in [8, 32]");
}

namespace signal_io {
namespace {

std::int32_t sign_extend12(std::uint32_t v) {
  return (v & 0x800u) ? static_cast<std::int32_t>(v) - 0x1000 : static_cast<std::int32_t>(v);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& out) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

void apply_header(std::string_view line, Signal& s, std::size_t line_no) {
  line.remove_prefix(1);
  // A header line may hold several whitespace-separated key=value pairs.
  std::size_t pos = 0;
  while (pos < line.size()) {
    const auto start = line.find_first_not_of(" \t\r", pos);
    if (start == std::string_view::npos) break;
    auto stop = line.find_first_of(" \t\r", start);
    if (stop == std::string_view::npos) stop = line.size();
    const std::string_view token = line.substr(start, stop - start);
    pos = stop;
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) continue;
    const std::string_view key = token.substr(0, eq);
    const std::string_view value = token.substr(eq + 1);
    double number = 0.0;
    if (key == "fs" || key == "sample_rate" || key == "sample_rate_hz") {
      if (!parse_double(value, number) || !(number > 0.0))
        fail(ErrorCode::parse_error, "bad sample rate at line " + std::to_string(line_no));
      s.sample_rate_hz = number;
    } else if (key == "adc_bits" || key == "bits") {
      if (!parse_double(value, number) || number != static_cast<int>(number))
        fail(ErrorCode::parse_error, "bad adc_bits at line " + std::to_string(line_no));
      s.adc_bits = static_cast<int>(number);
    } else if (key == "record" || key == "record_id") {
      s.record_id = std::string(value);
    }
  }
}

}  // namespace

Signal read_format212(std::span<const std::uint8_t> bytes, int channel, std::size_t n_samples) {
  if (channel != 0 && channel != 1)
    fail(ErrorCode::invalid_argument, "format 212 channel must be 0 or 1");
  if (n_samples == 0) fail(ErrorCode::invalid_argument, "n_samples must be positive");
  // Last byte touched by sample i of channel c is 3i + 1 + c.
  const std::size_t needed = 3 * (n_samples - 1) + 2 + static_cast<std::size_t>(channel);
  if (bytes.size() < needed)
    fail(ErrorCode::short_read, "short read: format 212 data holds fewer than " +
                                    std::to_string(n_samples) + " samples");

  Signal s;
  s.samples.resize(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const std::uint8_t* frame = bytes.data() + 3 * i;
    std::uint32_t raw;
    if (channel == 0) {
      raw = static_cast<std::uint32_t>(frame[0]) | ((static_cast<std::uint32_t>(frame[1]) & 0x0Fu) << 8);
    } else {
      raw = static_cast<std::uint32_t>(frame[2]) | ((static_cast<std::uint32_t>(frame[1]) & 0xF0u) << 4);
    }
    s.samples[i] = static_cast<double>(sign_extend12(raw));
  }
  return s;
}

std::vector<std::uint8_t> write_format212(std::span<const std::int32_t> channel0,
                                          std::span<const std::int32_t> channel1) {
  if (channel0.size() != channel1.size())
    fail(ErrorCode::invalid_argument, "format 212 channels must have equal length");
  std::vector<std::uint8_t> out;
  out.reserve(3 * channel0.size());
  for (std::size_t i = 0; i < channel0.size(); ++i) {
    const std::int32_t a = channel0[i];
    const std::int32_t b = channel1[i];
    if (a < -2048 || a > 2047 || b < -2048 || b > 2047)
      fail(ErrorCode::unrepresentable, "sample does not fit in 12 bits");
    const auto ua = static_cast<std::uint32_t>(a) & 0xFFFu;
    const auto ub = static_cast<std::uint32_t>(b) & 0xFFFu;
    out.push_back(static_cast<std::uint8_t>(ua & 0xFFu));
    out.push_back(static_cast<std::uint8_t>(((ub >> 8) << 4) | (ua >> 8)));
    out.push_back(static_cast<std::uint8_t>(ub & 0xFFu));
  }
  return out;
}

Signal read_text(std::istream& in) {
  Signal s;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      apply_header(view, s, line_no);
      continue;
    }
    double value = 0.0;
    if (!parse_double(view, value))
      fail(ErrorCode::parse_error, "parse error at line " + std::to_string(line_no) +
                                       ": not a number: '" + std::string(view) + "'");
    s.samples.push_back(value);
  }
  if (in.bad()) fail(ErrorCode::io_error, "error reading text signal");
  if (s.samples.empty()) fail(ErrorCode::parse_error, "text signal has no samples");
  validate(s);
  return s;
}

Signal read_text_string(const std::string& text) {
  std::istringstream in(text);
  return read_text(in);
}

void write_text(std::ostream& out, const Signal& s) {
  out << "# fs=" << s.sample_rate_hz << '\n';
  out << "# adc_bits=" << s.adc_bits << '\n';
  if (!s.record_id.empty()) out << "# record=" << s.record_id << '\n';
  char buf[64];
  for (const double v : s.samples) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, ptr - buf);
    out.put('\n');
  }
}

Signal subtract_baseline(Signal s, double baseline) {
  for (double& v : s.samples) v -= baseline;
  return s;
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot open '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) fail(ErrorCode::io_error, "error reading '" + path + "'");
  return bytes;
}

void write_file_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io_error, "cannot create '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::io_error, "error writing '" + path + "'");
}

}  // namespace signal_io
}  // namespace wecg
