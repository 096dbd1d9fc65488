#pragma once

#include <json.hpp>

#include "dyadika/transforms.hpp"

namespace dyadika {

// {"M": .., "scalar_mode": "exact"|"float", "values": [...]}, values in coset-index order.
// Exact values are written as "p/q" strings.
template <Scalar T> nlohmann::ordered_json to_json(const StepFunction<T>& f);
template <Scalar T> StepFunction<T> step_function_from_json(const nlohmann::json& j);

// Same layout with "coeffs" in place of "values".
template <Scalar T> nlohmann::ordered_json to_json(const Spectrum<T>& c);
template <Scalar T> Spectrum<T> spectrum_from_json(const nlohmann::json& j);

}  // namespace dyadika
