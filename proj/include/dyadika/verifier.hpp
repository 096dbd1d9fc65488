#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "dyadika/counterexamples.hpp"

namespace dyadika {

enum class OutputFormat { json, csv };

struct RunConfig {
  std::string command;
  int resolution = Resolution::kDefault;
  ScalarMode mode = ScalarMode::exact;
  std::vector<double> ps;  // empty: command default
  std::uint64_t seed = 1;
  OutputFormat format = OutputFormat::json;
  std::string out_path;  // empty: stdout
  std::string plan_path;
  std::string regime = "T1b";
  std::string fixtures_path;
  bool calibrate = false;
  int threads = 1;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

struct Report {
  std::string command;
  nlohmann::ordered_json config;
  std::vector<std::string> columns;
  std::vector<nlohmann::ordered_json> rows;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
  std::string to_json() const;
  std::string to_csv() const;
};

struct Lemma3Summary {
  std::uint64_t n_checked = 0;
  std::uint64_t rows_checked = 0;
  std::uint64_t violations = 0;
  std::uint64_t violations_low_block = 0;   // rows with l_i = 0
  std::uint64_t violations_other = 0;       // rows with l_i >= 1
  std::optional<std::uint64_t> first_violation;
};

// Every n in [1, n_limit) at resolution m.
Lemma3Summary lemma3_sweep(Resolution m, std::uint64_t n_limit);

struct LemmaConstants {
  int resolution = 0;
  Lemma4Fit lemma4;
  double lemma5_c = 0.0;
  std::uint64_t lemma5_argmax = 0;
  double kernel_doubling_c = 0.0;     // |K_{2^n}| <= c |K_{2^{n-1}}|
  double kernel_predecessor_c = 0.0;  // |K_{2^n - 1}| <= c |K_{2^n}| + c
};

LemmaConstants lemma_constants(Resolution m);

struct AtomShape {
  std::string id;
  std::string kind;  // "block" or "random"
  int level = 0;
  std::uint32_t anchor = 0;
  StepFunction<double> f;  // normalised to sup |f| = 1 on its interval
};

std::vector<AtomShape> bound_atom_shapes(Resolution m, std::uint64_t seed, int random_count = 16);

struct BoundRow {
  std::string p;
  std::string atom;
  std::string kind;
  int level = 0;
  double max_ratio = 0.0;
  std::uint64_t argmax_n = 0;
  double dyadic_max_ratio = 0.0;  // n = 2^m only, unnormalised ||sigma_n a|| / ||a||
  std::uint64_t dyadic_argmax_n = 0;
};

struct BoundsResult {
  std::vector<BoundRow> rows;
  std::map<std::string, double> max_ratio;         // by p label
  std::map<std::string, double> dyadic_max_ratio;  // by p label
};

// R_1 = ||sigma_n a||_{H_1/2} / (V(n)^2 ||a||), R_2 = ||sigma_n a||_{H_p} / (2^{d(n)(1/p-2)} ||a||),
// and ||sigma_n a|| / ||a|| for p > 1/2; n = 1 .. 2^M.
BoundsResult bounds_sweep(Resolution m, const std::vector<Exponent>& ps, std::uint64_t seed, int threads);

struct ConjugationSample {
  std::string p;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

std::vector<ConjugationSample> conjugation_norm_ratios(Resolution m, const std::vector<Exponent>& ps,
                                                       std::uint64_t seed, int samples = 8);

struct Fixtures {
  nlohmann::ordered_json data = nlohmann::ordered_json::object();

  static Fixtures load(const std::string& path);
  void save(const std::string& path) const;
  std::optional<double> get(const std::string& section, const std::string& key) const;
  void set(const std::string& section, const std::string& key, double value);
};

inline constexpr double kFixtureGrowth = 0.05;

Report run_kernels(const RunConfig& config);
Report run_lemmas(const RunConfig& config);
Report run_bounds(const RunConfig& config);
Report run_counterexample(const RunConfig& config);
Report run_stats(const RunConfig& config);
Report run_bench(const RunConfig& config);
Report run_command(const RunConfig& config);

std::string render(const Report& report, OutputFormat format);
// Writes to config.out_path or stdout.
void emit(const Report& report, const RunConfig& config);

// std::mt19937_64 with distribution code that does not vary between standard libraries.
class SeededRandom {
 public:
  explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }  // [0, 1)
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dyadika
