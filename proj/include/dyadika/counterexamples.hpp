#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dyadika/hardy.hpp"
#include "dyadika/index_math.hpp"
#include "dyadika/transforms.hpp"

namespace dyadika {

enum class Regime { T1b, T2b, T3b, T4b };

std::string to_string(Regime r);
Regime parse_regime(const std::string& text);

struct SequencePlan {
  Regime regime = Regime::T1b;
  Exponent p{0.5};
  int resolution = 14;
  std::vector<std::uint64_t> alphas;
  std::vector<double> phi;  // Phi(alpha_k); unused by T3b/T4b
  double budget = 8.0;
  int report_from = 1;  // first reported k
  std::string alpha_rule = "explicit";
  std::string phi_rule = "constant";

  std::size_t size() const { return alphas.size(); }
  std::vector<int> report_rows() const;
};

SequencePlan default_plan(Regime r);
SequencePlan plan_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const SequencePlan& plan);

// alpha_k = sum_{i<=k} 4^i, k = 0..count-1.
std::vector<std::uint64_t> alternating_alphas(int count);
// alpha_0 = 1, then the shortest alternating index with V >= V(alpha_k)^2.
std::vector<std::uint64_t> alternating_variation_squared_alphas(int count);
// 2^m + 1 for each exponent m.
std::vector<std::uint64_t> power_plus_one_alphas(const std::vector<int>& exponents);

double phi_variation(std::uint64_t alpha);
double phi_span_power(std::uint64_t alpha, Exponent p);

struct PlanValidation {
  std::vector<std::string> problems;
  double weight_sum = 0.0;  // the regime's convergence sum
  bool ok() const { return problems.empty(); }
};

PlanValidation validate(const SequencePlan& plan);
void require_valid(const SequencePlan& plan);

// mu_k as doubles.
std::vector<double> plan_weights(const SequencePlan& plan);
template <Scalar T> T plan_weight(const SequencePlan& plan, std::size_t k);
// 2^{|alpha|(1/p-1)}: the block atom amplitude.
template <Scalar T> T atom_amplitude(int level, Exponent p);
// Closed-form Fourier coefficient on the block [2^{|alpha_k|}, 2^{|alpha_k|+1}).
template <Scalar T> T expected_coefficient(const SequencePlan& plan, std::size_t k);

// 2^{|alpha|(1/p-1)} (D_{2^{|alpha|+1}} - D_{2^{|alpha|}}) on I_{|alpha|}.
template <Scalar T> Atom<T> block_atom(const DyadicIndex& alpha, Exponent p, Resolution m);

// Sum of mu_k a_k over |alpha_k| < A.
template <Scalar T> DyadicMartingale<T> build_martingale(const SequencePlan& plan, int level);
template <Scalar T> Spectrum<T> expected_spectrum(const SequencePlan& plan, int level);

struct DecompositionRow {
  int k = 0;
  std::uint64_t alpha = 0;
  double split_residual = 0.0;  // sigma_alpha identity
  double shift_residual = 0.0;  // third term vs w K form
  bool exact_zero = false;
};

template <Scalar T> DecompositionRow decomposition_check(const SequencePlan& plan, std::size_t k);
// All k, sharing one build and one kernel sweep.
template <Scalar T> std::vector<DecompositionRow> decomposition_rows(const SequencePlan& plan);

struct BlowupRow {
  int k = 0;
  std::uint64_t alpha = 0;
  double measured = 0.0;
  double expression = 0.0;
  double paper_bound = 0.0;
};

struct BlowupReport {
  Regime regime = Regime::T1b;
  std::vector<BlowupRow> rows;
  double fitted_c = 0.0;
  int calibration_rows = 0;
  bool monotone = false;
  bool dominated = false;
  bool ok() const { return monotone && dominated; }
};

std::string measured_quantity(Regime r);
BlowupReport blowup_sweep(const SequencePlan& plan, const std::vector<int>& ks, int threads = 1);
std::string to_csv(const BlowupReport& report);

struct ModulusRow {
  int k = 0;
  std::uint64_t alpha = 0;
  double modulus = 0.0;
  double literal_bound = 0.0;  // tail sum as displayed
  double lemma0_bound = 0.0;   // (sum_{i>=k} mu_i^p)^{1/p}
  bool literal_holds = false;
  bool lemma0_holds = false;
};

// T3b and T4b only.
std::vector<ModulusRow> modulus_certificates(const SequencePlan& plan);

struct KernelIntegralRow {
  int k = 0;
  std::uint64_t alpha = 0;
  double integral = 0.0;  // integral of |(alpha - 2^{|alpha|}) K_{alpha - 2^{|alpha|}}|^{1/2}
  int variation = 0;
  double ratio = 0.0;
};

std::vector<KernelIntegralRow> kernel_integral_rows(const SequencePlan& plan, int resolution);

}  // namespace dyadika
