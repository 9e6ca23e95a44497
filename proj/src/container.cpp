#include "wecg/container.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <limits>
#include <string>

#include <zlib.h>

#include "wecg/entropy.hpp"
#include "wecg/error.hpp"

namespace wecg::container {
namespace {

constexpr std::uint8_t kMagic[4] = {'W', 'E', 'C', 'G'};
constexpr std::uint8_t kFlagModeB = 1u << 0;
constexpr std::uint8_t kFlagHuffman = 1u << 1;
constexpr std::uint8_t kFlagRunLength = 1u << 2;
constexpr std::uint8_t kSignWidth = 1;
constexpr std::uint8_t kAlphabetValues = 0;
constexpr std::uint8_t kAlphabetBytes = 1;

// --- little-endian byte writer / reader -----------------------------------

class Writer {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
  void raw(std::span<const std::uint8_t> b) { bytes_.insert(bytes_.end(), b.begin(), b.end()); }
  std::vector<std::uint8_t>& bytes() { return bytes_; }

 private:
  void put(std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> bytes_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  double f64() { return std::bit_cast<double>(get(8)); }
  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) fail(ErrorCode::short_read, "short read: archive is truncated");
  }
  std::uint64_t get(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_ + static_cast<std::size_t>(i)]) << (8 * i);
    pos_ += static_cast<std::size_t>(width);
    return v;
  }
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

// --- DEFLATE ----------------------------------------------------------------

std::vector<std::uint8_t> deflate_raw(std::span<const std::uint8_t> input) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_BEST_COMPRESSION, Z_DEFLATED, -15, 9, Z_DEFAULT_STRATEGY) != Z_OK)
    fail(ErrorCode::io_error, "deflateInit2 failed");
  std::vector<std::uint8_t> out(deflateBound(&zs, static_cast<uLong>(input.size())));
  zs.next_in = const_cast<Bytef*>(input.data());
  zs.avail_in = static_cast<uInt>(input.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  out.resize(zs.total_out);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) fail(ErrorCode::io_error, "deflate failed");
  return out;
}

std::vector<std::uint8_t> inflate_raw(std::span<const std::uint8_t> input, std::size_t max_output) {
  z_stream zs{};
  if (inflateInit2(&zs, -15) != Z_OK) fail(ErrorCode::inflate_failure, "inflateInit2 failed");
  // One spare byte detects streams that expand past the chunk size.
  std::vector<std::uint8_t> out(max_output + 1);
  zs.next_in = const_cast<Bytef*>(input.data());
  zs.avail_in = static_cast<uInt>(input.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  const std::size_t produced = zs.total_out;
  const uInt left_in = zs.avail_in;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END) fail(ErrorCode::inflate_failure, "chunk does not inflate");
  if (produced > max_output) fail(ErrorCode::inflate_failure, "chunk inflates past the chunk size");
  if (left_in != 0) fail(ErrorCode::inflate_failure, "trailing bytes after DEFLATE stream");
  out.resize(produced);
  return out;
}

// --- array packing ----------------------------------------------------------

int width_of(std::span<const std::uint64_t> values) {
  const std::uint64_t max = values.empty() ? 0 : *std::max_element(values.begin(), values.end());
  return minimal_width(max);
}

std::vector<std::uint8_t> pack(std::span<const std::uint64_t> values, int width) {
  const auto bytes_per = static_cast<std::size_t>(width / 8);
  std::vector<std::uint8_t> out(values.size() * bytes_per);
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t b = 0; b < bytes_per; ++b) out[i * bytes_per + b] = static_cast<std::uint8_t>(values[i] >> (8 * b));
  return out;
}

std::vector<std::uint64_t> unpack(std::span<const std::uint8_t> bytes, int width) {
  const auto bytes_per = static_cast<std::size_t>(width / 8);
  if (bytes.size() % bytes_per != 0) fail(ErrorCode::corrupt_archive, "array payload is not a whole number of elements");
  std::vector<std::uint64_t> out(bytes.size() / bytes_per);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t b = 0; b < bytes_per; ++b) out[i] |= static_cast<std::uint64_t>(bytes[i * bytes_per + b]) << (8 * b);
  return out;
}

std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits) {
  std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  return out;
}

// --- huffman payloads -------------------------------------------------------

std::vector<std::uint8_t> huffman_payload(std::span<const std::uint64_t> values, int width) {
  Writer w;
  if (values.empty()) {
    w.u8(kAlphabetValues);
    w.u32(0);
    return std::move(w.bytes());
  }
  const std::uint64_t max = *std::max_element(values.begin(), values.end());
  std::vector<std::uint32_t> symbols;
  std::uint8_t alphabet = kAlphabetValues;
  if (max < entropy::kMaxAlphabet) {
    symbols.assign(values.begin(), values.end());
  } else {
    alphabet = kAlphabetBytes;
    const std::vector<std::uint8_t> packed = pack(values, width);
    symbols.assign(packed.begin(), packed.end());
  }
  if (symbols.size() > std::numeric_limits<std::uint32_t>::max())
    fail(ErrorCode::unrepresentable, "too many symbols for one section");
  const entropy::HuffmanCoded coded = entropy::huffman_encode(symbols);
  w.u8(alphabet);
  w.u32(static_cast<std::uint32_t>(symbols.size()));
  entropy::append_table(coded.table, w.bytes());
  w.raw(coded.bits.bytes);
  return std::move(w.bytes());
}

std::vector<std::uint64_t> decode_huffman_payload(std::span<const std::uint8_t> payload, int width) {
  Reader r(payload);
  std::uint8_t alphabet = 0;
  std::uint32_t count = 0;
  try {
    alphabet = r.u8();
    count = r.u32();
  } catch (const Error&) {
    fail(ErrorCode::corrupt_archive, "huffman section header truncated");
  }
  if (alphabet != kAlphabetValues && alphabet != kAlphabetBytes)
    fail(ErrorCode::corrupt_archive, "unknown huffman alphabet");
  if (count == 0) {
    if (r.remaining() != 0) fail(ErrorCode::corrupt_archive, "trailing bytes in empty huffman section");
    return {};
  }
  std::size_t offset = payload.size() - r.remaining();
  const entropy::HuffmanTable table = entropy::read_table(payload, offset);
  entropy::BitStream bits;
  bits.bytes.assign(payload.begin() + static_cast<std::ptrdiff_t>(offset), payload.end());
  bits.bit_count = 8 * static_cast<std::uint64_t>(bits.bytes.size());
  const std::vector<std::uint32_t> symbols = entropy::huffman_decode(table, bits, count);
  if (alphabet == kAlphabetValues) return {symbols.begin(), symbols.end()};
  std::vector<std::uint8_t> packed(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] > 0xFF) fail(ErrorCode::corrupt_archive, "byte symbol out of range");
    packed[i] = static_cast<std::uint8_t>(symbols[i]);
  }
  return unpack(packed, width);
}

// --- sections ---------------------------------------------------------------

void write_section(Writer& w, std::uint8_t element_width, std::span<const std::uint8_t> payload) {
  w.u8(element_width);
  const std::size_t chunks = (payload.size() + kChunkSize - 1) / kChunkSize;
  w.u32(static_cast<std::uint32_t>(chunks));
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = c * kChunkSize;
    const std::size_t len = std::min(kChunkSize, payload.size() - begin);
    const std::vector<std::uint8_t> z = deflate_raw(payload.subspan(begin, len));
    w.u32(static_cast<std::uint32_t>(z.size()));
    w.raw(z);
  }
}

struct Section {
  std::uint8_t element_width = 0;
  std::vector<std::uint8_t> payload;
};

Section read_section(Reader& r) {
  Section s;
  s.element_width = r.u8();
  const std::uint32_t chunks = r.u32();
  // Every chunk needs at least its 4-byte length field.
  if (chunks > r.remaining() / 4) fail(ErrorCode::short_read, "short read: chunk table larger than file");
  for (std::uint32_t c = 0; c < chunks; ++c) {
    const std::uint32_t len = r.u32();
    const std::vector<std::uint8_t> piece = inflate_raw(r.take(len), kChunkSize);
    if (piece.empty()) fail(ErrorCode::corrupt_archive, "empty chunk");
    if (c + 1 < chunks && piece.size() != kChunkSize) fail(ErrorCode::corrupt_archive, "short interior chunk");
    s.payload.insert(s.payload.end(), piece.begin(), piece.end());
  }
  return s;
}

void check_width(std::uint8_t width) {
  if (width != 8 && width != 16 && width != 32) fail(ErrorCode::corrupt_archive, "bad element width");
}

std::vector<std::uint64_t> decode_array(const Section& s, bool huffman) {
  check_width(s.element_width);
  return huffman ? decode_huffman_payload(s.payload, s.element_width) : unpack(s.payload, s.element_width);
}

}  // namespace

int minimal_width(std::uint64_t max_value) {
  if (max_value <= 0xFFu) return 8;
  if (max_value <= 0xFFFFu) return 16;
  if (max_value <= 0xFFFFFFFFu) return 32;
  fail(ErrorCode::unrepresentable, "value " + std::to_string(max_value) + " does not fit in 32 bits");
}

std::vector<std::uint8_t> serialize(const QuantizedSet& q, EntropyMode entropy_mode, IndexMode index_mode) {
  validate(q);
  constexpr std::uint64_t u32max = std::numeric_limits<std::uint32_t>::max();
  if (q.n > u32max) fail(ErrorCode::unrepresentable, "signal length exceeds 32 bits");
  for (const std::uint64_t m : q.magnitudes)
    if (m > u32max) fail(ErrorCode::unrepresentable, "magnitude " + std::to_string(m) + " exceeds 2^32 - 1");
  const bool huffman = entropy_mode == EntropyMode::huffman;

  Writer w;
  w.raw(kMagic);
  w.u8(kVersion);
  std::uint8_t flags = 0;
  if (q.mode == Mode::B) flags |= kFlagModeB;
  if (huffman) flags |= kFlagHuffman;
  if (index_mode == IndexMode::run_length) flags |= kFlagRunLength;
  w.u8(flags);
  w.u32(static_cast<std::uint32_t>(q.n));
  w.u32(static_cast<std::uint32_t>(q.original_length));
  w.u8(static_cast<std::uint8_t>(q.levels));
  w.f64(q.delta);
  w.u32(static_cast<std::uint32_t>(q.k()));

  auto put_array = [&](std::span<const std::uint64_t> values) {
    const int width = width_of(values);
    const auto payload = huffman ? huffman_payload(values, width) : pack(values, width);
    write_section(w, static_cast<std::uint8_t>(width), payload);
  };

  put_array(q.magnitudes);

  const std::vector<std::uint8_t> sign_bytes = pack_bits(q.signs);
  if (huffman) {
    const std::vector<std::uint64_t> as_values(sign_bytes.begin(), sign_bytes.end());
    write_section(w, kSignWidth, huffman_payload(as_values, 8));
  } else {
    write_section(w, kSignWidth, sign_bytes);
  }

  if (index_mode == IndexMode::run_length) {
    const auto positions = codec::delta_decode_indices(q.index_deltas);
    const entropy::RunLengthStream rl = entropy::run_length_encode_flags(positions, q.n);
    std::vector<std::uint64_t> runs;
    runs.reserve(rl.runs.size() + 1);
    runs.push_back(rl.runs.empty() ? 0 : rl.runs.front().value);
    for (const entropy::Run& run : rl.runs) runs.push_back(run.length);
    put_array(runs);
  } else {
    put_array(q.index_deltas);
  }
  return std::move(w.bytes());
}

ArchiveHeader read_header(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  const auto magic = r.take(4);
  if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) fail(ErrorCode::bad_magic, "bad magic: not a WECG archive");
  ArchiveHeader h;
  h.version = r.u8();
  if (h.version != kVersion)
    fail(ErrorCode::version_mismatch, "unsupported archive version " + std::to_string(h.version));
  const std::uint8_t flags = r.u8();
  if (flags & ~(kFlagModeB | kFlagHuffman | kFlagRunLength)) fail(ErrorCode::corrupt_archive, "unknown header flags");
  h.mode = (flags & kFlagModeB) ? Mode::B : Mode::A;
  h.entropy = (flags & kFlagHuffman) ? EntropyMode::huffman : EntropyMode::none;
  h.index = (flags & kFlagRunLength) ? IndexMode::run_length : IndexMode::delta;
  h.n = r.u32();
  h.original_length = r.u32();
  h.levels = r.u8();
  h.delta = r.f64();
  h.k = r.u32();
  return h;
}

QuantizedSet deserialize(std::span<const std::uint8_t> bytes) {
  const ArchiveHeader h = read_header(bytes);
  if (h.k > h.n) fail(ErrorCode::corrupt_archive, "more coefficients than samples");
  Reader r(bytes);
  r.take(kHeaderSize);
  const bool huffman = h.entropy == EntropyMode::huffman;

  QuantizedSet q;
  q.n = h.n;
  q.original_length = h.original_length;
  q.levels = h.levels;
  q.delta = h.delta;
  q.mode = h.mode;

  const Section magnitudes = read_section(r);
  q.magnitudes = decode_array(magnitudes, huffman);
  if (q.magnitudes.size() != h.k) fail(ErrorCode::corrupt_archive, "magnitude count disagrees with header");

  const Section signs = read_section(r);
  if (signs.element_width != kSignWidth) fail(ErrorCode::corrupt_archive, "bad sign section width");
  std::vector<std::uint8_t> sign_bytes;
  if (huffman) {
    for (const std::uint64_t v : decode_huffman_payload(signs.payload, 8)) {
      if (v > 0xFF) fail(ErrorCode::corrupt_archive, "sign byte out of range");
      sign_bytes.push_back(static_cast<std::uint8_t>(v));
    }
  } else {
    sign_bytes = signs.payload;
  }
  if (sign_bytes.size() != (static_cast<std::size_t>(h.k) + 7) / 8)
    fail(ErrorCode::corrupt_archive, "sign count disagrees with header");
  q.signs.resize(h.k);
  for (std::size_t i = 0; i < h.k; ++i) q.signs[i] = (sign_bytes[i / 8] >> (7 - i % 8)) & 1u;

  const Section indices = read_section(r);
  const std::vector<std::uint64_t> index_values = decode_array(indices, huffman);
  if (h.index == IndexMode::run_length) {
    if (index_values.empty() || index_values.front() > 1) fail(ErrorCode::corrupt_archive, "malformed run-length header");
    entropy::RunLengthStream rl;
    rl.n = h.n;
    std::uint8_t value = static_cast<std::uint8_t>(index_values.front());
    std::uint64_t ones = 0;
    for (std::size_t i = 1; i < index_values.size(); ++i) {
      rl.runs.push_back({value, index_values[i]});
      if (value == 1) ones += index_values[i];
      if (ones > h.k) fail(ErrorCode::corrupt_archive, "run-length flags disagree with header");
      value ^= 1u;
    }
    const std::vector<std::uint64_t> positions = entropy::run_length_decode_flags(rl);
    if (positions.size() != h.k) fail(ErrorCode::corrupt_archive, "run-length flags disagree with header");
    q.index_deltas.resize(h.k);
    std::uint64_t previous = 0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      q.index_deltas[i] = positions[i] - previous;
      previous = positions[i];
    }
  } else {
    q.index_deltas = index_values;
  }
  if (q.index_deltas.size() != h.k) fail(ErrorCode::corrupt_archive, "index count disagrees with header");
  if (r.remaining() != 0) fail(ErrorCode::corrupt_archive, "trailing bytes after archive");
  validate(q);
  return q;
}

}  // namespace wecg::container
