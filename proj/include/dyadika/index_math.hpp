#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dyadika {

// Binary statistics of a positive index n.
//   msb = |n|, lsb = [n], span = d(n) = |n| - [n],
//   variation = V(n) = n_0 + sum_{k>=1} |n_k - n_{k-1}|.
struct DyadicIndex {
  std::uint64_t value = 0;
  std::vector<std::uint8_t> digits;  // digits[k] = n_k, length msb + 1
  int msb = 0;
  int lsb = 0;
  int span = 0;
  int variation = 0;

  int popcount() const;
  std::vector<int> set_bits() const;  // descending: n_1 > n_2 > ... > n_r
};

// A maximal run of ones: digits l..m are set (m >= l).
struct Block {
  int high = 0;
  int low = 0;
  bool operator==(const Block&) const = default;
};

struct BlockDecomposition {
  std::uint64_t value = 0;
  std::vector<Block> blocks;  // most significant first

  std::size_t count() const { return blocks.size(); }
  std::uint64_t reconstruct() const;
  std::string to_string() const;  // "4-3;1-0"
};

DyadicIndex index_stats(std::uint64_t n);

// n^{(i)}: the sum of the set bits strictly below the i-th one (1-based, MSB first).
std::uint64_t tail(const DyadicIndex& n, int i);

BlockDecomposition block_decomposition(std::uint64_t n);

int top_bit(std::uint64_t n);
int low_bit(std::uint64_t n);
int bit_span(std::uint64_t n);
int variation(std::uint64_t n);
bool is_power_of_two(std::uint64_t n);

}  // namespace dyadika
