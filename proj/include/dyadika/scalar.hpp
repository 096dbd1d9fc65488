#pragma once

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

namespace dyadika {

using Rational = mpq_class;

template <typename T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

enum class ScalarMode { exact, floating };

std::string to_string(ScalarMode mode);
ScalarMode parse_scalar_mode(std::string_view text);

template <Scalar T>
constexpr ScalarMode scalar_mode_of() {
  return std::same_as<T, Rational> ? ScalarMode::exact : ScalarMode::floating;
}

template <Scalar T>
T from_int(std::int64_t v) {
  if constexpr (std::same_as<T, Rational>) {
    return Rational(static_cast<signed long>(v));
  } else {
    return static_cast<double>(v);
  }
}

// Doubles are dyadic rationals, so the Rational conversion is exact.
template <Scalar T>
T from_double(double v) {
  if constexpr (std::same_as<T, Rational>) {
    return Rational(v);
  } else {
    return v;
  }
}

template <Scalar T>
double to_double(const T& v) {
  if constexpr (std::same_as<T, Rational>) {
    return v.get_d();
  } else {
    return v;
  }
}

template <Scalar T>
T abs_value(const T& v) {
  if constexpr (std::same_as<T, Rational>) {
    return abs(v);
  } else {
    return std::fabs(v);
  }
}

template <Scalar T>
bool is_zero(const T& v) {
  if constexpr (std::same_as<T, Rational>) {
    return sgn(v) == 0;
  } else {
    return v == 0.0;
  }
}

// 2^e, exact in both modes for the exponent ranges used here.
template <Scalar T>
T exp2_int(int e) {
  if constexpr (std::same_as<T, Rational>) {
    Rational q(1);
    if (e >= 0) {
      mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else {
      mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return q;
  } else {
    return std::ldexp(1.0, e);
  }
}

// 2^e for real e: exact when e is an integer, rounded to double otherwise.
template <Scalar T>
T exp2_real(double e) {
  if (std::nearbyint(e) == e && std::fabs(e) < 4096) {
    return exp2_int<T>(static_cast<int>(e));
  }
  return from_double<T>(std::exp2(e));
}

std::string format_double(double v);

template <Scalar T>
std::string scalar_to_string(const T& v) {
  if constexpr (std::same_as<T, Rational>) {
    return v.get_str();
  } else {
    return format_double(v);
  }
}

Rational parse_rational(const std::string& text);

}  // namespace dyadika
