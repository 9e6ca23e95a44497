#pragma once

// On-disk archive. All multi-byte fields are little-endian.
//
//   "WECG"            4 bytes magic
//   version           u8  (= 1)
//   flags             u8  bit0 mode B, bit1 huffman, bit2 run-length indices
//   n                 u32 padded signal length
//   original_length   u32
//   levels            u8
//   delta             f64
//   k                 u32 stored coefficient count
//   3 sections (magnitudes, signs, indices), each:
//     element_width   u8  8/16/32, or 1 for the bit-packed signs
//     chunk_count     u32
//     chunk_count x { u32 compressed_len, raw DEFLATE stream }
//
// A section's uncompressed payload is cut into 64 KiB pieces and each piece
// is deflated separately. Without entropy coding the payload is the packed
// array. With huffman it is
//   u8 alphabet (0 = element values, 1 = packed bytes) | u32 symbol count |
//   table (omitted when the count is 0) | MSB-first code bits.
// In run-length index mode the index array is [first flag, run lengths...].

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wecg/codec.hpp"

namespace wecg::container {

inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::size_t kChunkSize = 64 * 1024;
inline constexpr std::size_t kHeaderSize = 27;

enum class EntropyMode : std::uint8_t { none = 0, huffman = 1 };
enum class IndexMode : std::uint8_t { delta = 0, run_length = 1 };

struct ArchiveHeader {
  std::uint8_t version = kVersion;
  Mode mode = Mode::B;
  EntropyMode entropy = EntropyMode::none;
  IndexMode index = IndexMode::delta;
  std::uint32_t n = 0;
  std::uint32_t original_length = 0;
  std::uint8_t levels = 0;
  double delta = 0.0;
  std::uint32_t k = 0;
};

// Throws unrepresentable when a magnitude, n or k exceeds 32 bits.
std::vector<std::uint8_t> serialize(const QuantizedSet& q, EntropyMode entropy = EntropyMode::none,
                                    IndexMode index = IndexMode::delta);

// Throws short_read, bad_magic, version_mismatch, inflate_failure or
// corrupt_archive.
QuantizedSet deserialize(std::span<const std::uint8_t> bytes);

ArchiveHeader read_header(std::span<const std::uint8_t> bytes);

// Smallest of 8/16/32 bits that holds max_value.
int minimal_width(std::uint64_t max_value);

}  // namespace wecg::container
