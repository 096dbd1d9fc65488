#include "dyadika/io.hpp"

#include <stdexcept>

namespace dyadika {

namespace {

template <Scalar T>
nlohmann::ordered_json encode(const T& v) {
  if constexpr (std::same_as<T, Rational>) {
    return v.get_str();
  } else {
    return v;
  }
}

template <Scalar T>
T decode(const nlohmann::json& j) {
  if (j.is_string()) {
    const Rational q = parse_rational(j.get<std::string>());
    if constexpr (std::same_as<T, Rational>) {
      return q;
    } else {
      return q.get_d();
    }
  }
  return from_double<T>(j.get<double>());
}

template <Scalar T>
std::vector<T> decode_values(const nlohmann::json& j, const char* key, Resolution& m) {
  m = Resolution(j.at("M").get<int>());
  const auto mode = parse_scalar_mode(j.at("scalar_mode").get<std::string>());
  if (mode != scalar_mode_of<T>()) throw std::invalid_argument("scalar mode does not match requested type");
  const auto& arr = j.at(key);
  if (arr.size() != m.cosets()) throw std::invalid_argument("value count does not match M");
  std::vector<T> v;
  v.reserve(arr.size());
  for (const auto& x : arr) v.push_back(decode<T>(x));
  return v;
}

}  // namespace

template <Scalar T>
nlohmann::ordered_json to_json(const StepFunction<T>& f) {
  nlohmann::ordered_json j;
  j["M"] = f.resolution().bits();
  j["scalar_mode"] = to_string(scalar_mode_of<T>());
  auto& values = j["values"] = nlohmann::ordered_json::array();
  for (const T& v : f.values()) values.push_back(encode(v));
  return j;
}

template <Scalar T>
StepFunction<T> step_function_from_json(const nlohmann::json& j) {
  Resolution m;
  auto v = decode_values<T>(j, "values", m);
  return StepFunction<T>(m, std::move(v));
}

template <Scalar T>
nlohmann::ordered_json to_json(const Spectrum<T>& c) {
  nlohmann::ordered_json j;
  j["M"] = c.resolution().bits();
  j["scalar_mode"] = to_string(scalar_mode_of<T>());
  auto& coeffs = j["coeffs"] = nlohmann::ordered_json::array();
  for (const T& v : c.coefficients()) coeffs.push_back(encode(v));
  return j;
}

template <Scalar T>
Spectrum<T> spectrum_from_json(const nlohmann::json& j) {
  Resolution m;
  auto v = decode_values<T>(j, "coeffs", m);
  return Spectrum<T>(m, std::move(v));
}

template nlohmann::ordered_json to_json<double>(const StepFunction<double>&);
template nlohmann::ordered_json to_json<Rational>(const StepFunction<Rational>&);
template StepFunction<double> step_function_from_json<double>(const nlohmann::json&);
template StepFunction<Rational> step_function_from_json<Rational>(const nlohmann::json&);
template nlohmann::ordered_json to_json<double>(const Spectrum<double>&);
template nlohmann::ordered_json to_json<Rational>(const Spectrum<Rational>&);
template Spectrum<double> spectrum_from_json<double>(const nlohmann::json&);
template Spectrum<Rational> spectrum_from_json<Rational>(const nlohmann::json&);

}  // namespace dyadika
