#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dyadika/verifier.hpp"

namespace {

// Accepts "1/4,1/3,0.5".
std::vector<double> parse_p_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty entry in --p");
    const double p = item.find('/') != std::string::npos ? dyadika::parse_rational(item).get_d() : std::stod(item);
    dyadika::Exponent check(p);
    out.push_back(check.value());
  }
  if (out.empty()) throw std::invalid_argument("--p needs at least one value");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walsh-Fejer kernel and Hardy space verifier"};
  app.require_subcommand(1, 1);

  dyadika::RunConfig config;
  std::string mode = "exact";
  std::string output = "json";
  std::string p_list;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--resolution,-M", config.resolution, "number of retained coordinates")
        ->check(CLI::Range(1, dyadika::Resolution::kMax));
    sub->add_option("--mode", mode, "scalar mode")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--p", p_list, "comma separated exponents, e.g. 1/4,1/3");
    sub->add_option("--seed", config.seed, "random seed");
    sub->add_option("--output", output, "report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", config.out_path, "report path (default stdout)");
    sub->add_option("--threads", config.threads, "worker threads")->check(CLI::Range(1, 256));
  };

  auto* kernels = app.add_subcommand("kernels", "exact kernel identities for every n <= 2^M");
  auto* lemmas = app.add_subcommand("lemmas", "kernel lower bounds and fitted constants");
  auto* bounds = app.add_subcommand("bounds", "Fejer mean norm ratios on atoms");
  auto* counter = app.add_subcommand("counterexample", "blow-up sequences");
  auto* stats = app.add_subcommand("stats", "index statistics for n < 2^M");
  auto* bench = app.add_subcommand("bench", "transform and kernel timings");
  for (auto* sub : {kernels, lemmas, bounds, counter, stats, bench}) add_common(sub);
  for (auto* sub : {lemmas, bounds}) {
    sub->add_option("--fixtures", config.fixtures_path, "frozen constants file");
    sub->add_flag("--calibrate", config.calibrate, "write current constants to the fixtures file");
  }
  counter->add_option("--plan", config.plan_path, "plan JSON file");
  counter->add_option("--regime", config.regime, "default plan: T1b, T2b, T3b, T4b or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? dyadika::kExitPass : dyadika::kExitUsage;
  }

  try {
    config.command = app.get_subcommands().front()->get_name();
    config.mode = dyadika::parse_scalar_mode(mode);
    config.format = output == "csv" ? dyadika::OutputFormat::csv : dyadika::OutputFormat::json;
    if (!p_list.empty()) config.ps = parse_p_list(p_list);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dyadika::kExitUsage;
  }

  dyadika::Report report;
  try {
    report = dyadika::run_command(config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dyadika::kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dyadika::kExitUsage;
  }
  try {
    dyadika::emit(report, config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dyadika::kExitUsage;
  }
  for (const auto& f : report.failures) std::cerr << "violation: " << f << '\n';
  return report.passed() ? dyadika::kExitPass : dyadika::kExitViolation;
}
