#include "dyadika/dyadic_domain.hpp"

#include <string>

namespace dyadika {

Resolution::Resolution(int bits) : bits_(bits) {
  if (bits < 1 || bits > kMax) {
    throw std::out_of_range("resolution must lie in 1.." + std::to_string(kMax) + ", got " +
                            std::to_string(bits));
  }
}

std::uint32_t coordinate_word(std::uint32_t coset_index, int bits) {
  std::uint32_t w = 0;
  for (int k = 0; k < bits; ++k) {
    w |= ((coset_index >> (bits - 1 - k)) & 1u) << k;
  }
  return w;
}

std::uint32_t coset_from_word(std::uint32_t word, int bits) {
  return coordinate_word(word, bits);
}

Point::Point(Resolution m, std::uint32_t coset_index) : m_(m), index_(coset_index) {
  if (coset_index >= m.cosets()) throw std::out_of_range("coset index outside resolution");
}

Point Point::from_coords(std::span<const std::uint8_t> coords) {
  Resolution m(static_cast<int>(coords.size()));
  std::uint32_t idx = 0;
  for (std::uint8_t c : coords) {
    if (c > 1) throw std::invalid_argument("coordinates must be 0 or 1");
    idx = (idx << 1) | c;
  }
  return Point(m, idx);
}

int Point::coord(int k) const {
  if (k < 0 || k >= m_.bits()) throw std::out_of_range("coordinate outside resolution");
  return static_cast<int>((index_ >> (m_.bits() - 1 - k)) & 1u);
}

std::vector<std::uint8_t> Point::coords() const {
  std::vector<std::uint8_t> c(static_cast<std::size_t>(m_.bits()));
  for (int k = 0; k < m_.bits(); ++k) c[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(coord(k));
  return c;
}

Point add(const Point& x, const Point& y) {
  if (x.resolution() != y.resolution()) throw std::invalid_argument("resolution mismatch");
  return Point(x.resolution(), x.coset_index() ^ y.coset_index());
}

Point basis(int k, Resolution m) {
  if (k < 0 || k >= m.bits()) throw std::out_of_range("basis coordinate outside resolution");
  return Point(m, std::uint32_t{1} << (m.bits() - 1 - k));
}

DyadicInterval::DyadicInterval(int level, const Point& anchor)
    : level_(level), m_(anchor.resolution()), begin_(0) {
  if (level < 0 || level > m_.bits()) throw std::out_of_range("interval level outside 0..M");
  const int drop = m_.bits() - level;
  begin_ = (static_cast<std::size_t>(anchor.coset_index()) >> drop) << drop;
}

bool DyadicInterval::contains(const Point& x) const {
  return x.resolution() == m_ && contains_index(x.coset_index());
}

DyadicInterval interval(int level, const Point& x) { return DyadicInterval(level, x); }

std::vector<DyadicInterval> complement_partition(Resolution m) {
  const int M = m.bits();
  if (M < 2) throw std::invalid_argument("complement partition needs M >= 2");
  std::vector<DyadicInterval> out;
  for (int k = 0; k < M; ++k) {
    for (int l = k + 1; l < M; ++l) {
      out.emplace_back(l + 1, add(basis(k, m), basis(l, m)));
    }
  }
  for (int k = 0; k < M; ++k) out.emplace_back(M, basis(k, m));
  return out;
}

DyadicInterval lemma4_region(Resolution m, int k, int l) {
  const int M = m.bits();
  if (k < 0 || k >= M || l <= k || l > M) {
    throw std::out_of_range("lemma-4 region needs 0 <= k < l <= M");
  }
  if (l == M) return DyadicInterval(M, basis(k, m));
  return DyadicInterval(l + 1, add(basis(k, m), basis(l, m)));
}

}  // namespace dyadika
