#include "dyadika/scalar.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

namespace dyadika {

std::string to_string(ScalarMode mode) {
  return mode == ScalarMode::exact ? "exact" : "float";
}

ScalarMode parse_scalar_mode(std::string_view text) {
  if (text == "exact") return ScalarMode::exact;
  if (text == "float") return ScalarMode::floating;
  throw std::invalid_argument("unknown scalar mode: " + std::string(text));
}

std::string format_double(double v) {
  if (!std::isfinite(v)) {
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  }
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), end);
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw std::invalid_argument("not a rational: " + text);
  }
  q.canonicalize();
  return q;
}

}  // namespace dyadika
