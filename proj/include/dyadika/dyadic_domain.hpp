#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dyadika/scalar.hpp"

namespace dyadika {

// Number of retained coordinates x_0 .. x_{M-1}.
class Resolution {
 public:
  static constexpr int kMax = 24;
  static constexpr int kDefault = 12;

  explicit Resolution(int bits = kDefault);

  int bits() const { return bits_; }
  std::size_t cosets() const { return std::size_t{1} << bits_; }

  auto operator<=>(const Resolution&) const = default;

 private:
  int bits_;
};

// Coset indices put x_0 in the most significant bit; the coordinate word is
// the bit reversal, with x_k in bit k.
std::uint32_t coordinate_word(std::uint32_t coset_index, int bits);
std::uint32_t coset_from_word(std::uint32_t word, int bits);

class Point {
 public:
  Point(Resolution m, std::uint32_t coset_index);

  static Point zero(Resolution m) { return Point(m, 0); }
  static Point from_coords(std::span<const std::uint8_t> coords);

  Resolution resolution() const { return m_; }
  std::uint32_t coset_index() const { return index_; }
  std::uint32_t word() const { return coordinate_word(index_, m_.bits()); }
  int coord(int k) const;
  std::vector<std::uint8_t> coords() const;

  bool operator==(const Point&) const = default;

 private:
  Resolution m_;
  std::uint32_t index_;
};

Point add(const Point& x, const Point& y);
Point basis(int k, Resolution m);

class DyadicInterval {
 public:
  DyadicInterval(int level, const Point& anchor);

  int level() const { return level_; }
  Resolution resolution() const { return m_; }
  // Canonical anchor: the smallest coset index in the interval.
  Point anchor() const { return Point(m_, static_cast<std::uint32_t>(begin_)); }
  std::size_t begin() const { return begin_; }
  std::size_t end() const { return begin_ + size(); }
  std::size_t size() const { return std::size_t{1} << (m_.bits() - level_); }
  bool contains(const Point& x) const;
  bool contains_index(std::size_t coset) const { return coset >= begin_ && coset < end(); }
  double measure() const { return std::ldexp(1.0, -level_); }

  template <Scalar T>
  T measure_as() const {
    return exp2_int<T>(-level_);
  }

  bool operator==(const DyadicInterval&) const = default;

 private:
  int level_;
  Resolution m_;
  std::size_t begin_;
};

DyadicInterval interval(int level, const Point& x);

// The regions I_{l+1}(e_k + e_l), 0 <= k < l <= M-1, followed by I_M(e_k),
// 0 <= k <= M-1. Together they partition G minus I_M.
std::vector<DyadicInterval> complement_partition(Resolution m);

// Lemma-4 region I_M^{k,l}: I_{l+1}(e_k + e_l) for l <= M-1, I_M(e_k) for l = M.
DyadicInterval lemma4_region(Resolution m, int k, int l);

template <Scalar T>
class StepFunction {
 public:
  explicit StepFunction(Resolution m) : m_(m), values_(m.cosets(), from_int<T>(0)) {}
  StepFunction(Resolution m, std::vector<T> values) : m_(m), values_(std::move(values)) {
    if (values_.size() != m_.cosets()) {
      throw std::invalid_argument("value count does not match resolution");
    }
  }

  static StepFunction constant(Resolution m, const T& c) {
    return StepFunction(m, std::vector<T>(m.cosets(), c));
  }

  template <typename F>
  static StepFunction generate(Resolution m, F&& fn) {
    std::vector<T> v;
    v.reserve(m.cosets());
    for (std::size_t i = 0; i < m.cosets(); ++i) v.push_back(fn(i));
    return StepFunction(m, std::move(v));
  }

  Resolution resolution() const { return m_; }
  std::size_t size() const { return values_.size(); }
  const T& operator[](std::size_t coset) const { return values_[coset]; }
  const T& at(const Point& x) const {
    if (x.resolution() != m_) throw std::invalid_argument("resolution mismatch");
    return values_[x.coset_index()];
  }
  std::span<const T> values() const { return values_; }

  template <typename F>
  StepFunction map(F&& fn) const {
    std::vector<T> v;
    v.reserve(values_.size());
    for (const T& x : values_) v.push_back(fn(x));
    return StepFunction(m_, std::move(v));
  }

  StepFunction operator-() const {
    return map([](const T& x) -> T { return -x; });
  }
  StepFunction operator+(const StepFunction& o) const {
    return zip(o, [](const T& a, const T& b) -> T { return a + b; });
  }
  StepFunction operator-(const StepFunction& o) const {
    return zip(o, [](const T& a, const T& b) -> T { return a - b; });
  }
  StepFunction operator*(const StepFunction& o) const {
    return zip(o, [](const T& a, const T& b) -> T { return a * b; });
  }
  StepFunction operator*(const T& c) const {
    return map([&c](const T& x) -> T { return x * c; });
  }
  StepFunction operator/(const T& c) const {
    return map([&c](const T& x) -> T { return x / c; });
  }
  friend StepFunction operator*(const T& c, const StepFunction& f) { return f * c; }

  bool operator==(const StepFunction& o) const { return m_ == o.m_ && values_ == o.values_; }

  template <typename F>
  StepFunction zip(const StepFunction& o, F&& fn) const {
    if (o.m_ != m_) throw std::invalid_argument("resolution mismatch");
    std::vector<T> v;
    v.reserve(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) v.push_back(fn(values_[i], o.values_[i]));
    return StepFunction(m_, std::move(v));
  }

 private:
  Resolution m_;
  std::vector<T> values_;
};

template <Scalar T>
StepFunction<T> indicator(const DyadicInterval& I) {
  return StepFunction<T>::generate(I.resolution(), [&](std::size_t i) {
    return from_int<T>(I.contains_index(i) ? 1 : 0);
  });
}

template <Scalar T>
T integrate(const StepFunction<T>& f) {
  T sum = from_int<T>(0);
  for (const T& v : f.values()) sum += v;
  return sum * exp2_int<T>(-f.resolution().bits());
}

template <Scalar T>
T integrate(const StepFunction<T>& f, const DyadicInterval& I) {
  if (I.resolution() != f.resolution()) throw std::invalid_argument("resolution mismatch");
  T sum = from_int<T>(0);
  for (std::size_t i = I.begin(); i < I.end(); ++i) sum += f[i];
  return sum * exp2_int<T>(-f.resolution().bits());
}

template <Scalar T>
T integrate(const StepFunction<T>& f, std::span<const DyadicInterval> regions) {
  T sum = from_int<T>(0);
  for (const auto& I : regions) sum += integrate(f, I);
  return sum;
}

// g(x) = f(x + h).
template <Scalar T>
StepFunction<T> translate(const StepFunction<T>& f, const Point& h) {
  if (h.resolution() != f.resolution()) throw std::invalid_argument("resolution mismatch");
  const std::uint32_t shift = h.coset_index();
  return StepFunction<T>::generate(f.resolution(), [&](std::size_t i) { return f[i ^ shift]; });
}

// Conditional expectation onto the level-m sigma-algebra: averages over I_m cosets.
template <Scalar T>
StepFunction<T> coset_average(const StepFunction<T>& f, int level) {
  const int M = f.resolution().bits();
  if (level < 0 || level > M) throw std::out_of_range("level outside 0..M");
  const std::size_t width = std::size_t{1} << (M - level);
  std::vector<T> v(f.size());
  const T scale = exp2_int<T>(level - M);
  for (std::size_t start = 0; start < f.size(); start += width) {
    T sum = from_int<T>(0);
    for (std::size_t i = start; i < start + width; ++i) sum += f[i];
    T avg = sum * scale;
    for (std::size_t i = start; i < start + width; ++i) v[i] = avg;
  }
  return StepFunction<T>(f.resolution(), std::move(v));
}

template <Scalar T>
T max_abs_difference(const StepFunction<T>& a, const StepFunction<T>& b) {
  if (a.resolution() != b.resolution()) throw std::invalid_argument("resolution mismatch");
  T best = from_int<T>(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    T d = abs_value<T>(a[i] - b[i]);
    if (d > best) best = d;
  }
  return best;
}

template <Scalar T>
T sup_abs(const StepFunction<T>& f) {
  T best = from_int<T>(0);
  for (const T& v : f.values()) {
    T a = abs_value<T>(v);
    if (a > best) best = a;
  }
  return best;
}

template <Scalar T>
StepFunction<double> to_float(const StepFunction<T>& f) {
  std::vector<double> v;
  v.reserve(f.size());
  for (const T& x : f.values()) v.push_back(to_double<T>(x));
  return StepFunction<double>(f.resolution(), std::move(v));
}

}  // namespace dyadika
