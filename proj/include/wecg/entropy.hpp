#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wecg::entropy {

// Canonical Huffman code described by one bit length per symbol 0..count-1;
// length 0 means the symbol does not occur.
struct HuffmanTable {
  std::uint32_t symbol_count = 0;
  std::vector<std::uint8_t> code_lengths;

  friend bool operator==(const HuffmanTable&, const HuffmanTable&) = default;
};

// Bits are packed MSB-first; the final byte is zero-padded.
struct BitStream {
  std::vector<std::uint8_t> bytes;
  std::uint64_t bit_count = 0;
};

struct HuffmanCoded {
  HuffmanTable table;
  BitStream bits;
};

// The table is serialized as u16 symbol_count followed by one u8 per symbol.
inline constexpr std::uint32_t kMaxAlphabet = 0xFFFF;

// Throws invalid_argument on empty input, unrepresentable when a symbol is
// outside the alphabet limit.
HuffmanCoded huffman_encode(std::span<const std::uint32_t> symbols);
std::vector<std::uint32_t> huffman_decode(const HuffmanTable& table, const BitStream& bits,
                                          std::size_t count);

// Kraft sum of the table; a valid code has <= 1.
double kraft_sum(const HuffmanTable& table);

void append_table(const HuffmanTable& table, std::vector<std::uint8_t>& out);
// Parses a table at bytes[offset...] and advances offset. Throws corrupt_archive.
HuffmanTable read_table(std::span<const std::uint8_t> bytes, std::size_t& offset);

struct Run {
  std::uint8_t value = 0;  // flag value of the run, 0 or 1
  std::uint64_t length = 0;

  friend bool operator==(const Run&, const Run&) = default;
};

// Flag vector over positions 1..n (1 where a coefficient is stored) as
// alternating maximal runs.
struct RunLengthStream {
  std::uint64_t n = 0;
  std::vector<Run> runs;

  friend bool operator==(const RunLengthStream&, const RunLengthStream&) = default;
};

// Indices must be 1-based, strictly increasing and <= n.
RunLengthStream run_length_encode_flags(std::span<const std::uint64_t> indices, std::uint64_t n);
// Throws corrupt_archive when runs do not cover exactly n flags.
std::vector<std::uint64_t> run_length_decode_flags(const RunLengthStream& stream);

}  // namespace wecg::entropy
