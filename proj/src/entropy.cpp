#include "wecg/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <tuple>

#include "wecg/error.hpp"

namespace wecg::entropy {
namespace {

constexpr int kMaxCodeLength = 63;

struct Node {
  std::uint64_t weight;
  std::uint32_t min_symbol;
  int left = -1;
  int right = -1;
};

class BitWriter {
 public:
  void put(std::uint64_t code, int length) {
    for (int b = length - 1; b >= 0; --b) {
      if (bit_count_ % 8 == 0) bytes_.push_back(0);
      if ((code >> b) & 1u) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bit_count_ % 8));
      ++bit_count_;
    }
  }
  BitStream finish() && { return {std::move(bytes_), bit_count_}; }

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t bit_count_ = 0;
};

struct Canonical {
  std::vector<std::uint32_t> sorted_symbols;      // by (length, symbol)
  std::vector<std::uint64_t> first_code;          // per length
  std::vector<std::uint64_t> count;               // per length
  std::vector<std::uint64_t> first_index;         // per length into sorted_symbols
  int max_length = 0;
};

Canonical build_canonical(const HuffmanTable& table) {
  Canonical c;
  for (std::uint32_t s = 0; s < table.symbol_count; ++s) {
    const int len = table.code_lengths[s];
    if (len > kMaxCodeLength) fail(ErrorCode::corrupt_archive, "huffman code length too large");
    if (len > 0) {
      c.sorted_symbols.push_back(s);
      c.max_length = std::max(c.max_length, len);
    }
  }
  std::stable_sort(c.sorted_symbols.begin(), c.sorted_symbols.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return table.code_lengths[a] < table.code_lengths[b]; });
  const auto lengths = static_cast<std::size_t>(c.max_length) + 1;
  c.count.assign(lengths, 0);
  c.first_code.assign(lengths, 0);
  c.first_index.assign(lengths, 0);
  for (const std::uint32_t s : c.sorted_symbols) ++c.count[table.code_lengths[s]];
  std::uint64_t code = 0;
  std::uint64_t index = 0;
  for (std::size_t len = 1; len < lengths; ++len) {
    code = (code + c.count[len - 1]) << 1;
    c.first_code[len] = code;
    c.first_index[len] = index;
    index += c.count[len];
  }
  return c;
}

}  // namespace

double kraft_sum(const HuffmanTable& table) {
  double sum = 0.0;
  for (const std::uint8_t len : table.code_lengths)
    if (len > 0) sum += std::ldexp(1.0, -static_cast<int>(len));
  return sum;
}

HuffmanCoded huffman_encode(std::span<const std::uint32_t> symbols) {
  if (symbols.empty()) fail(ErrorCode::invalid_argument, "huffman_encode: no symbols");
  const std::uint32_t max_symbol = *std::max_element(symbols.begin(), symbols.end());
  if (max_symbol >= kMaxAlphabet)
    fail(ErrorCode::unrepresentable, "symbol " + std::to_string(max_symbol) + " exceeds the huffman alphabet");

  HuffmanCoded out;
  out.table.symbol_count = max_symbol + 1;
  out.table.code_lengths.assign(out.table.symbol_count, 0);

  std::vector<std::uint64_t> freq(out.table.symbol_count, 0);
  for (const std::uint32_t s : symbols) ++freq[s];

  std::vector<Node> nodes;
  for (std::uint32_t s = 0; s < out.table.symbol_count; ++s)
    if (freq[s] > 0) nodes.push_back({freq[s], s});

  if (nodes.size() == 1) {
    out.table.code_lengths[nodes.front().min_symbol] = 1;
  } else {
    // Min-heap on (weight, smallest symbol in subtree).
    auto greater = [&](int a, int b) {
      return std::tie(nodes[a].weight, nodes[a].min_symbol) > std::tie(nodes[b].weight, nodes[b].min_symbol);
    };
    std::priority_queue<int, std::vector<int>, decltype(greater)> heap(greater);
    const auto leaves = static_cast<int>(nodes.size());
    for (int i = 0; i < leaves; ++i) heap.push(i);
    nodes.reserve(2 * nodes.size());
    while (heap.size() > 1) {
      const int a = heap.top();
      heap.pop();
      const int b = heap.top();
      heap.pop();
      nodes.push_back({nodes[a].weight + nodes[b].weight, std::min(nodes[a].min_symbol, nodes[b].min_symbol), a, b});
      heap.push(static_cast<int>(nodes.size()) - 1);
    }
    // Depth-first walk from the root assigns leaf depths.
    std::vector<std::pair<int, int>> stack{{heap.top(), 0}};
    while (!stack.empty()) {
      const auto [id, depth] = stack.back();
      stack.pop_back();
      if (nodes[id].left < 0) {
        if (depth > kMaxCodeLength) fail(ErrorCode::unrepresentable, "huffman code too deep");
        out.table.code_lengths[nodes[id].min_symbol] = static_cast<std::uint8_t>(depth);
      } else {
        stack.push_back({nodes[id].left, depth + 1});
        stack.push_back({nodes[id].right, depth + 1});
      }
    }
  }

  const Canonical canon = build_canonical(out.table);
  std::vector<std::uint64_t> codes(out.table.symbol_count, 0);
  for (int len = 1; len <= canon.max_length; ++len) {
    for (std::uint64_t j = 0; j < canon.count[len]; ++j)
      codes[canon.sorted_symbols[canon.first_index[len] + j]] = canon.first_code[len] + j;
  }
  BitWriter writer;
  for (const std::uint32_t s : symbols) writer.put(codes[s], out.table.code_lengths[s]);
  out.bits = std::move(writer).finish();
  return out;
}

std::vector<std::uint32_t> huffman_decode(const HuffmanTable& table, const BitStream& bits, std::size_t count) {
  if (table.code_lengths.size() != table.symbol_count)
    fail(ErrorCode::corrupt_archive, "huffman table size mismatch");
  if (bits.bit_count > 8 * static_cast<std::uint64_t>(bits.bytes.size()))
    fail(ErrorCode::corrupt_archive, "huffman bit count exceeds stream size");
  std::vector<std::uint32_t> out;
  if (count == 0) return out;
  if (kraft_sum(table) > 1.0) fail(ErrorCode::corrupt_archive, "huffman table violates the Kraft inequality");
  const Canonical canon = build_canonical(table);
  if (canon.sorted_symbols.empty()) fail(ErrorCode::corrupt_archive, "huffman table has no symbols");
  // Each symbol costs at least one bit.
  if (count > bits.bit_count) fail(ErrorCode::corrupt_archive, "huffman stream is truncated");

  out.reserve(count);
  std::uint64_t pos = 0;
  while (out.size() < count) {
    std::uint64_t code = 0;
    int len = 0;
    for (;;) {
      if (pos >= bits.bit_count) fail(ErrorCode::corrupt_archive, "huffman stream is truncated");
      const std::uint8_t bit = (bits.bytes[pos / 8] >> (7 - pos % 8)) & 1u;
      ++pos;
      code = (code << 1) | bit;
      ++len;
      if (len > canon.max_length) fail(ErrorCode::corrupt_archive, "invalid huffman code");
      const std::uint64_t offset = code - canon.first_code[len];
      if (code >= canon.first_code[len] && offset < canon.count[len]) {
        out.push_back(canon.sorted_symbols[canon.first_index[len] + offset]);
        break;
      }
    }
  }
  return out;
}

void append_table(const HuffmanTable& table, std::vector<std::uint8_t>& out) {
  if (table.symbol_count > kMaxAlphabet) fail(ErrorCode::unrepresentable, "huffman alphabet too large");
  out.push_back(static_cast<std::uint8_t>(table.symbol_count & 0xFFu));
  out.push_back(static_cast<std::uint8_t>(table.symbol_count >> 8));
  out.insert(out.end(), table.code_lengths.begin(), table.code_lengths.end());
}

HuffmanTable read_table(std::span<const std::uint8_t> bytes, std::size_t& offset) {
  if (bytes.size() < offset + 2) fail(ErrorCode::corrupt_archive, "huffman table truncated");
  HuffmanTable table;
  table.symbol_count = static_cast<std::uint32_t>(bytes[offset]) | (static_cast<std::uint32_t>(bytes[offset + 1]) << 8);
  offset += 2;
  if (bytes.size() - offset < table.symbol_count) fail(ErrorCode::corrupt_archive, "huffman table truncated");
  table.code_lengths.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                            bytes.begin() + static_cast<std::ptrdiff_t>(offset + table.symbol_count));
  offset += table.symbol_count;
  return table;
}

RunLengthStream run_length_encode_flags(std::span<const std::uint64_t> indices, std::uint64_t n) {
  RunLengthStream stream;
  stream.n = n;
  std::uint64_t next = 1;  // first position not yet covered
  auto emit = [&](std::uint8_t value, std::uint64_t length) {
    if (length == 0) return;
    if (!stream.runs.empty() && stream.runs.back().value == value) {
      stream.runs.back().length += length;
    } else {
      stream.runs.push_back({value, length});
    }
  };
  for (const std::uint64_t idx : indices) {
    if (idx < next || idx > n)
      fail(ErrorCode::invalid_argument, "run-length indices must be strictly increasing within [1, n]");
    emit(0, idx - next);
    emit(1, 1);
    next = idx + 1;
  }
  emit(0, n + 1 - next);
  return stream;
}

std::vector<std::uint64_t> run_length_decode_flags(const RunLengthStream& stream) {
  std::vector<std::uint64_t> indices;
  std::uint64_t position = 0;
  for (const Run& run : stream.runs) {
    if (run.value > 1 || run.length == 0) fail(ErrorCode::corrupt_archive, "malformed run");
    if (run.length > stream.n - position) fail(ErrorCode::corrupt_archive, "runs exceed the flag count");
    if (run.value == 1) {
      for (std::uint64_t i = 1; i <= run.length; ++i) indices.push_back(position + i);
    }
    position += run.length;
  }
  if (position != stream.n) fail(ErrorCode::corrupt_archive, "runs do not cover the flag vector");
  return indices;
}

}  // namespace wecg::entropy
