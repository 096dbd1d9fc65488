#include "dyadika/index_math.hpp"

#include <bit>
#include <stdexcept>

namespace dyadika {

namespace {

void require_positive(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("index must be positive");
}

}  // namespace

int top_bit(std::uint64_t n) {
  require_positive(n);
  return 63 - std::countl_zero(n);
}

int low_bit(std::uint64_t n) {
  require_positive(n);
  return std::countr_zero(n);
}

int bit_span(std::uint64_t n) { return top_bit(n) - low_bit(n); }

int variation(std::uint64_t n) {
  require_positive(n);
  // Each 0->1 or 1->0 change between adjacent digits, with zeros padded on
  // both sides. (n ^ (n << 1)) marks the changes; the top change sits at
  // msb + 1, which is bit 64 when msb = 63.
  std::uint64_t changes = n ^ (n << 1);
  int v = std::popcount(changes);
  if (n >> 63) ++v;
  return v;
}

bool is_power_of_two(std::uint64_t n) { return std::has_single_bit(n); }

int DyadicIndex::popcount() const { return std::popcount(value); }

std::vector<int> DyadicIndex::set_bits() const {
  std::vector<int> bits;
  for (int k = msb; k >= 0; --k) {
    if (digits[static_cast<std::size_t>(k)]) bits.push_back(k);
  }
  return bits;
}

DyadicIndex index_stats(std::uint64_t n) {
  require_positive(n);
  DyadicIndex d;
  d.value = n;
  d.msb = top_bit(n);
  d.lsb = low_bit(n);
  d.span = d.msb - d.lsb;
  d.digits.resize(static_cast<std::size_t>(d.msb) + 1);
  for (int k = 0; k <= d.msb; ++k) d.digits[static_cast<std::size_t>(k)] = (n >> k) & 1u;
  d.variation = variation(n);
  return d;
}

std::uint64_t tail(const DyadicIndex& n, int i) {
  const auto bits = n.set_bits();
  if (i < 1 || i > static_cast<int>(bits.size())) {
    throw std::out_of_range("tail index " + std::to_string(i) + " outside 1.." +
                            std::to_string(bits.size()));
  }
  std::uint64_t t = 0;
  for (std::size_t j = static_cast<std::size_t>(i); j < bits.size(); ++j) {
    t |= std::uint64_t{1} << bits[j];
  }
  return t;
}

BlockDecomposition block_decomposition(std::uint64_t n) {
  require_positive(n);
  BlockDecomposition out;
  out.value = n;
  int k = top_bit(n);
  while (k >= 0) {
    if (!((n >> k) & 1u)) {
      --k;
      continue;
    }
    Block b{k, k};
    while (b.low > 0 && ((n >> (b.low - 1)) & 1u)) --b.low;
    out.blocks.push_back(b);
    k = b.low - 1;
  }
  return out;
}

std::uint64_t BlockDecomposition::reconstruct() const {
  std::uint64_t v = 0;
  for (const auto& b : blocks) {
    for (int k = b.low; k <= b.high; ++k) v += std::uint64_t{1} << k;
  }
  return v;
}

std::string BlockDecomposition::to_string() const {
  std::string s;
  for (const auto& b : blocks) {
    if (!s.empty()) s += ';';
    s += std::to_string(b.high) + "-" + std::to_string(b.low);
  }
  return s;
}

}  // namespace dyadika
