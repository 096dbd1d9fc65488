#include "dyadika/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dyadika/parallel.hpp"

namespace dyadika {

namespace {

constexpr double kBoundSlack = 1e-12;

double reciprocal(Exponent p) {
  const double r = p.reciprocal();
  const double rr = std::nearbyint(r);
  return std::fabs(r - rr) < 1e-9 ? rr : r;
}

Exponent parse_exponent(const nlohmann::json& j) {
  if (j.is_number()) return Exponent(j.get<double>());
  const auto s = j.get<std::string>();
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Exponent(std::stod(s));
  return Exponent(std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1)));
}

bool uses_phi(Regime r) { return r == Regime::T1b || r == Regime::T2b; }

std::vector<double> phi_for(const std::string& rule, const std::vector<std::uint64_t>& alphas, Exponent p,
                            double constant) {
  std::vector<double> out;
  for (auto a : alphas) {
    if (rule == "variation") {
      out.push_back(phi_variation(a));
    } else if (rule == "span_power") {
      out.push_back(phi_span_power(a, p));
    } else if (rule == "constant") {
      out.push_back(constant);
    } else {
      throw std::invalid_argument("unknown phi rule: " + rule);
    }
  }
  return out;
}

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::T1b: return "T1b";
    case Regime::T2b: return "T2b";
    case Regime::T3b: return "T3b";
    case Regime::T4b: return "T4b";
  }
  return "unknown";
}

Regime parse_regime(const std::string& text) {
  for (Regime r : {Regime::T1b, Regime::T2b, Regime::T3b, Regime::T4b}) {
    if (to_string(r) == text) return r;
  }
  throw std::invalid_argument("unknown regime: " + text);
}

std::vector<int> SequencePlan::report_rows() const {
  std::vector<int> ks;
  for (int k = std::max(report_from, 0); k < static_cast<int>(alphas.size()); ++k) ks.push_back(k);
  return ks;
}

std::vector<std::uint64_t> alternating_alphas(int count) {
  std::vector<std::uint64_t> out;
  std::uint64_t a = 0;
  for (int k = 0; k < count; ++k) {
    if (2 * k >= 63) throw std::out_of_range("alternating index exceeds 64 bits");
    a += std::uint64_t{1} << (2 * k);
    out.push_back(a);
  }
  return out;
}

std::vector<std::uint64_t> alternating_variation_squared_alphas(int count) {
  std::vector<std::uint64_t> out;
  if (count <= 0) return out;
  out.push_back(1);
  while (static_cast<int>(out.size()) < count) {
    const int v = variation(out.back());
    // sum_{i<=j} 4^i has V = 2j + 2.
    const int j = std::max((v * v - 2 + 1) / 2, 0);
    if (2 * j >= 63) throw std::out_of_range("alternating index exceeds 64 bits");
    out.push_back(alternating_alphas(j + 1).back());
  }
  return out;
}

std::vector<std::uint64_t> power_plus_one_alphas(const std::vector<int>& exponents) {
  std::vector<std::uint64_t> out;
  for (int m : exponents) {
    if (m < 0 || m >= 63) throw std::out_of_range("exponent outside 0..62");
    out.push_back((std::uint64_t{1} << m) + 1);
  }
  return out;
}

double phi_variation(std::uint64_t alpha) { return variation(alpha); }

double phi_span_power(std::uint64_t alpha, Exponent p) {
  return std::exp2(bit_span(alpha) * (reciprocal(p) - 2.0) / 2.0);
}

SequencePlan default_plan(Regime r) {
  SequencePlan plan;
  plan.regime = r;
  switch (r) {
    case Regime::T1b:
      plan.p = Exponent(0.5);
      plan.resolution = 14;
      plan.alphas = alternating_alphas(7);
      plan.alpha_rule = "alternating";
      plan.phi_rule = "variation";
      break;
    case Regime::T2b:
      plan.p = Exponent(0.25);
      plan.resolution = 14;
      plan.alphas = power_plus_one_alphas({2, 4, 6, 8, 10, 12});
      plan.alpha_rule = "power_plus_one";
      plan.phi_rule = "span_power";
      break;
    case Regime::T3b:
      plan.p = Exponent(0.5);
      plan.resolution = 16;
      plan.alphas = alternating_variation_squared_alphas(3);
      plan.alpha_rule = "alternating_variation_squared";
      plan.phi_rule = "constant";
      break;
    case Regime::T4b:
      plan.p = Exponent(0.25);
      plan.resolution = 14;
      plan.alphas = power_plus_one_alphas({1, 2, 4, 8});
      plan.alpha_rule = "power_plus_one";
      plan.phi_rule = "constant";
      break;
  }
  plan.phi = phi_for(plan.phi_rule, plan.alphas, plan.p, 1.0);
  return plan;
}

SequencePlan plan_from_json(const nlohmann::json& j) {
  SequencePlan plan;
  plan.regime = parse_regime(j.at("regime").get<std::string>());
  const SequencePlan defaults = default_plan(plan.regime);
  plan.p = j.contains("p") ? parse_exponent(j.at("p")) : defaults.p;
  plan.resolution = j.value("resolution", defaults.resolution);
  plan.budget = j.value("budget", defaults.budget);
  plan.report_from = j.value("report_from", defaults.report_from);

  if (j.contains("alphas")) {
    plan.alphas = j.at("alphas").get<std::vector<std::uint64_t>>();
    plan.alpha_rule = "explicit";
  } else if (j.contains("alpha_rule")) {
    const auto& rule = j.at("alpha_rule");
    const std::string kind = rule.is_string() ? rule.get<std::string>() : rule.at("kind").get<std::string>();
    const int count = rule.is_object() ? rule.value("count", 0) : 0;
    if (kind == "alternating") {
      plan.alphas = alternating_alphas(count);
    } else if (kind == "alternating_variation_squared") {
      plan.alphas = alternating_variation_squared_alphas(count);
    } else if (kind == "power_plus_one") {
      plan.alphas = power_plus_one_alphas(rule.at("exponents").get<std::vector<int>>());
    } else {
      throw std::invalid_argument("unknown alpha rule: " + kind);
    }
    plan.alpha_rule = kind;
  } else {
    plan.alphas = defaults.alphas;
    plan.alpha_rule = defaults.alpha_rule;
  }

  if (j.contains("phi")) {
    plan.phi = j.at("phi").get<std::vector<double>>();
    plan.phi_rule = "explicit";
  } else {
    std::string kind = defaults.phi_rule;
    double constant = 1.0;
    if (j.contains("phi_rule")) {
      const auto& rule = j.at("phi_rule");
      kind = rule.is_string() ? rule.get<std::string>() : rule.at("kind").get<std::string>();
      if (rule.is_object()) constant = rule.value("value", 1.0);
    }
    plan.phi = phi_for(kind, plan.alphas, plan.p, constant);
    plan.phi_rule = kind;
  }
  return plan;
}

nlohmann::ordered_json to_json(const SequencePlan& plan) {
  nlohmann::ordered_json j;
  j["regime"] = to_string(plan.regime);
  j["p"] = plan.p.label();
  j["resolution"] = plan.resolution;
  j["alpha_rule"] = plan.alpha_rule;
  j["phi_rule"] = plan.phi_rule;
  j["alphas"] = plan.alphas;
  j["phi"] = plan.phi;
  j["budget"] = plan.budget;
  j["report_from"] = plan.report_from;
  return j;
}

PlanValidation validate(const SequencePlan& plan) {
  PlanValidation v;
  auto problem = [&](std::string s) { v.problems.push_back(std::move(s)); };
  if (plan.resolution < 1 || plan.resolution > Resolution::kMax) problem("resolution outside 1..24");
  if (plan.phi.size() != plan.alphas.size()) problem("phi table length differs from alphas");
  const double pv = plan.p.value();
  if ((plan.regime == Regime::T1b || plan.regime == Regime::T3b) && pv != 0.5) problem("regime requires p = 1/2");
  if ((plan.regime == Regime::T2b || plan.regime == Regime::T4b) && !(pv < 0.5)) problem("regime requires p < 1/2");
  for (std::size_t k = 0; k < plan.alphas.size(); ++k) {
    if (plan.alphas[k] == 0) {
      problem("alpha must be positive");
      return v;
    }
    if (k > 0) {
      if (plan.alphas[k] <= plan.alphas[k - 1]) problem("alphas must increase strictly");
      if (top_bit(plan.alphas[k]) <= top_bit(plan.alphas[k - 1])) problem("alphas must have distinct top bits");
    }
  }
  if (!plan.alphas.empty() && top_bit(plan.alphas.back()) + 1 > plan.resolution) {
    problem("top bit of the last alpha needs resolution >= |alpha| + 1");
  }
  if (uses_phi(plan.regime) && plan.phi.size() == plan.alphas.size()) {
    for (std::size_t k = 0; k < plan.phi.size(); ++k) {
      if (!(plan.phi[k] > 0.0)) problem("phi must be positive");
      if (k > 0 && plan.phi[k] < plan.phi[k - 1]) problem("phi must be nondecreasing");
    }
  }
  if (plan.report_from < 0 || plan.report_from > static_cast<int>(plan.alphas.size())) {
    problem("report_from outside the plan");
  }
  if (!v.problems.empty()) return v;

  const double r = reciprocal(plan.p);
  for (std::size_t k = 0; k < plan.alphas.size(); ++k) {
    const std::uint64_t a = plan.alphas[k];
    const double V = variation(a);
    const double d = bit_span(a);
    switch (plan.regime) {
      case Regime::T1b:
        v.weight_sum += std::pow(plan.phi[k], 0.25) / std::sqrt(V);
        break;
      case Regime::T2b: {
        const double u = std::exp2(d * (r - 2.0) / 2.0) / std::sqrt(plan.phi[k]);
        v.weight_sum += std::pow(u, -pv);
        break;
      }
      case Regime::T3b:
        v.weight_sum += 1.0 / (V * V);
        if (k + 1 < plan.alphas.size() && V * V > variation(plan.alphas[k + 1])) {
          problem("V(alpha_k)^2 <= V(alpha_{k+1}) fails at k = " + std::to_string(k));
        }
        break;
      case Regime::T4b:
        v.weight_sum += std::exp2(-d * (r - 2.0));
        if (k + 1 < plan.alphas.size() && 2.0 * d > bit_span(plan.alphas[k + 1])) {
          problem("2 d(alpha_k) <= d(alpha_{k+1}) fails at k = " + std::to_string(k));
        }
        break;
    }
  }
  if ((plan.regime == Regime::T1b || plan.regime == Regime::T2b) && v.weight_sum > plan.budget) {
    problem("weight sum exceeds budget");
  }
  return v;
}

void require_valid(const SequencePlan& plan) {
  const auto v = validate(plan);
  if (!v.ok()) {
    std::string msg = "invalid " + to_string(plan.regime) + " plan:";
    for (const auto& p : v.problems) msg += " " + p + ";";
    throw std::invalid_argument(msg);
  }
}

template <Scalar T>
T atom_amplitude(int level, Exponent p) {
  return exp2_real<T>(level * (reciprocal(p) - 1.0));
}

template <Scalar T>
T plan_weight(const SequencePlan& plan, std::size_t k) {
  const std::uint64_t a = plan.alphas.at(k);
  const double r = reciprocal(plan.p);
  switch (plan.regime) {
    case Regime::T1b: {
      T w = from_double<T>(std::sqrt(plan.phi[k])) / from_int<T>(variation(a));
      return w;
    }
    case Regime::T2b: {
      T w = from_double<T>(std::sqrt(plan.phi[k])) / exp2_real<T>(bit_span(a) * (r - 2.0) / 2.0);
      return w;
    }
    case Regime::T3b: {
      const std::int64_t V = variation(a);
      T w = from_int<T>(1) / from_int<T>(V * V);
      return w;
    }
    case Regime::T4b:
      return exp2_real<T>(-bit_span(a) * (r - 2.0));
  }
  throw std::invalid_argument("unknown regime");
}

std::vector<double> plan_weights(const SequencePlan& plan) {
  std::vector<double> w;
  for (std::size_t k = 0; k < plan.size(); ++k) w.push_back(plan_weight<double>(plan, k));
  return w;
}

template <Scalar T>
T expected_coefficient(const SequencePlan& plan, std::size_t k) {
  const std::uint64_t a = plan.alphas.at(k);
  const int top = top_bit(a);
  const double r = reciprocal(plan.p);
  switch (plan.regime) {
    case Regime::T1b: {
      T c = exp2_int<T>(top) * from_double<T>(std::sqrt(plan.phi[k])) / from_int<T>(variation(a));
      return c;
    }
    case Regime::T2b: {
      T c = exp2_real<T>(top * (r - 1.0)) * from_double<T>(std::sqrt(plan.phi[k])) /
            exp2_real<T>(bit_span(a) * (r - 2.0) / 2.0);
      return c;
    }
    case Regime::T3b: {
      const std::int64_t V = variation(a);
      T c = exp2_int<T>(top) / from_int<T>(V * V);
      return c;
    }
    case Regime::T4b:
      return exp2_real<T>(top + (r - 2.0) * low_bit(a));
  }
  throw std::invalid_argument("unknown regime");
}

template <Scalar T>
Atom<T> block_atom(const DyadicIndex& alpha, Exponent p, Resolution m) {
  const int j = alpha.msb;
  if (j + 1 > m.bits()) throw std::out_of_range("block atom needs |alpha| + 1 <= M");
  const T amp = atom_amplitude<T>(j, p);
  auto f = (dirichlet_dyadic<T>(j + 1, m) - dirichlet_dyadic<T>(j, m)) * amp;
  return Atom<T>{p, interval(j, Point::zero(m)), std::move(f)};
}

template <Scalar T>
DyadicMartingale<T> build_martingale(const SequencePlan& plan, int level) {
  require_valid(plan);
  const Resolution m(plan.resolution);
  if (level < 0 || level > m.bits()) throw std::out_of_range("build level outside 0..M");
  std::vector<T> values(m.cosets(), from_int<T>(0));
  for (std::size_t k = 0; k < plan.size(); ++k) {
    const int j = top_bit(plan.alphas[k]);
    if (j >= level) continue;
    T height = plan_weight<T>(plan, k) * atom_amplitude<T>(j, plan.p) * exp2_int<T>(j);
    const std::size_t half = std::size_t{1} << (m.bits() - j - 1);
    for (std::size_t i = 0; i < half; ++i) values[i] += height;
    for (std::size_t i = half; i < 2 * half; ++i) values[i] -= height;
  }
  return DyadicMartingale<T>(StepFunction<T>(m, std::move(values)));
}

template <Scalar T>
Spectrum<T> expected_spectrum(const SequencePlan& plan, int level) {
  require_valid(plan);
  const Resolution m(plan.resolution);
  Spectrum<T> s(m);
  for (std::size_t k = 0; k < plan.size(); ++k) {
    const int j = top_bit(plan.alphas[k]);
    if (j >= level) continue;
    const T c = expected_coefficient<T>(plan, k);
    for (std::size_t n = std::size_t{1} << j; n < (std::size_t{1} << (j + 1)); ++n) s[n] = c;
  }
  return s;
}

namespace {

template <Scalar T>
struct DecompositionContext {
  const SequencePlan& plan;
  Resolution m;
  DyadicMartingale<T> F;
  Spectrum<T> c;
  FejerSweep sweep;

  explicit DecompositionContext(const SequencePlan& p)
      : plan(p),
        m(p.resolution),
        F(build_martingale<T>(p, p.resolution)),
        c(analyze(F.terminal())),
        sweep(Resolution(p.resolution)) {}

  DecompositionRow check(std::size_t k) {
    const StepFunction<T>& f = F.terminal();
    const std::uint64_t alpha = plan.alphas.at(k);
    const int j = top_bit(alpha);
    const std::uint64_t base = std::uint64_t{1} << j;
    const std::uint64_t rest = alpha - base;
    const T a = from_int<T>(static_cast<std::int64_t>(alpha));
    const T& chat = c[base];

    // Third term two ways: sum_{i=2^j+1}^{alpha} (D_i - D_{2^j}) and w_{2^j} (alpha - 2^j) K_{alpha - 2^j}.
    if (sweep.n() > base) sweep = FejerSweep(m);
    sweep.advance_to(base);
    const std::vector<std::int64_t> d_base = sweep.dirichlet();
    std::vector<std::int64_t> dsum(m.cosets(), 0);
    while (sweep.n() < alpha) {
      sweep.advance();
      const auto& d = sweep.dirichlet();
      for (std::size_t x = 0; x < dsum.size(); ++x) dsum[x] += d[x] - d_base[x];
    }
    StepFunction<T> third(m);
    StepFunction<T> shifted(m);
    if (rest > 0) {
      third = StepFunction<T>::generate(m, [&](std::size_t x) {
        T v = from_int<T>(dsum[x]) * chat / a;
        return v;
      });
      const auto wk = walsh<T>(base, m) * scaled_fejer_kernel<T>(rest, m, KernelMethod::direct);
      shifted = wk.map([&](const T& v) -> T { return v * chat / a; });
    }

    const T w1 = from_int<T>(static_cast<std::int64_t>(base)) / a;
    const T w2 = from_int<T>(static_cast<std::int64_t>(rest)) / a;
    StepFunction<T> lhs = fejer_mean(c, alpha);
    const StepFunction<T> first = fejer_mean(c, base);
    const StepFunction<T> second = partial_sum(c, base);
    StepFunction<T> rhs(m);
    if (uses_phi(plan.regime)) {
      const T phi = from_double<T>(plan.phi.at(k));
      lhs = lhs / phi;
      rhs = (first * w1 + second * w2 + third) / phi;
    } else {
      lhs = lhs - f;
      rhs = (first - f) * w1 + (second - f) * w2 + third;
    }
    const T split = max_abs_difference(lhs, rhs);
    const T shift = max_abs_difference(third, shifted);
    return DecompositionRow{static_cast<int>(k), alpha, to_double(split), to_double(shift),
                            is_zero(split) && is_zero(shift)};
  }
};

}  // namespace

template <Scalar T>
DecompositionRow decomposition_check(const SequencePlan& plan, std::size_t k) {
  DecompositionContext<T> ctx(plan);
  return ctx.check(k);
}

template <Scalar T>
std::vector<DecompositionRow> decomposition_rows(const SequencePlan& plan) {
  DecompositionContext<T> ctx(plan);
  std::vector<DecompositionRow> rows;
  for (std::size_t k = 0; k < plan.size(); ++k) rows.push_back(ctx.check(k));
  return rows;
}

std::string measured_quantity(Regime r) {
  switch (r) {
    case Regime::T1b: return "integral |sigma_alpha F / Phi|^{1/2}";
    case Regime::T2b: return "||sigma_alpha F / Phi||_{L_p,inf}^p";
    case Regime::T3b: return "integral |sigma_alpha F - F|^{1/2}";
    case Regime::T4b: return "||sigma_alpha F - F||_{L_p,inf}^p";
  }
  return "";
}

BlowupReport blowup_sweep(const SequencePlan& plan, const std::vector<int>& ks, int threads) {
  require_valid(plan);
  const Resolution m(plan.resolution);
  const auto F = build_martingale<double>(plan, m.bits());
  const StepFunction<double>& f = F.terminal();
  const Spectrum<double> c = analyze(f);
  const double pv = plan.p.value();
  const double r = reciprocal(plan.p);

  BlowupReport report;
  report.regime = plan.regime;
  report.rows.resize(ks.size());
  parallel_for(ks.size(), threads, [&](std::size_t i) {
    const int k = ks[i];
    const std::uint64_t alpha = plan.alphas.at(static_cast<std::size_t>(k));
    const double V = variation(alpha);
    const double d = bit_span(alpha);
    const auto sigma = fejer_mean(c, alpha);
    BlowupRow row{k, alpha, 0.0, 0.0, 0.0};
    switch (plan.regime) {
      case Regime::T1b: {
        const double phi = plan.phi[static_cast<std::size_t>(k)];
        row.measured = lp_power(sigma / phi, plan.p);
        row.expression = std::sqrt(V) / std::pow(phi, 0.25);
        break;
      }
      case Regime::T2b: {
        const double phi = plan.phi[static_cast<std::size_t>(k)];
        row.measured = std::pow(weak_lp_norm(sigma / phi, plan.p), pv);
        row.expression = std::pow(std::exp2(d * (r - 2.0)) / phi, pv / 2.0);
        break;
      }
      case Regime::T3b:
        row.measured = lp_power(sigma - f, plan.p);
        row.expression = 1.0;
        break;
      case Regime::T4b:
        row.measured = std::pow(weak_lp_norm(sigma - f, plan.p), pv);
        row.expression = std::exp2((2.0 * pv - 1.0) * low_bit(alpha) - 4.0);
        break;
    }
    report.rows[i] = row;
  });

  if (plan.regime == Regime::T4b) {
    report.fitted_c = 1.0;
    report.calibration_rows = 0;
  } else if (!report.rows.empty()) {
    report.calibration_rows = std::max<int>(1, static_cast<int>(report.rows.size()) / 2);
    double c_fit = report.rows[0].measured / report.rows[0].expression;
    for (int i = 1; i < report.calibration_rows; ++i) {
      c_fit = std::min(c_fit, report.rows[static_cast<std::size_t>(i)].measured /
                                  report.rows[static_cast<std::size_t>(i)].expression);
    }
    report.fitted_c = c_fit;
  }
  report.monotone = true;
  report.dominated = true;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    auto& row = report.rows[i];
    row.paper_bound = report.fitted_c * row.expression;
    if (row.measured < row.paper_bound * (1.0 - kBoundSlack)) report.dominated = false;
    if (i > 0 && !(row.measured > report.rows[i - 1].measured)) report.monotone = false;
  }
  return report;
}

std::string to_csv(const BlowupReport& report) {
  std::ostringstream out;
  out << "k,alpha,measured,paper_bound\n";
  for (const auto& row : report.rows) {
    out << row.k << ',' << row.alpha << ',' << format_double(row.measured) << ','
        << format_double(row.paper_bound) << '\n';
  }
  return out.str();
}

std::vector<ModulusRow> modulus_certificates(const SequencePlan& plan) {
  if (plan.regime != Regime::T3b && plan.regime != Regime::T4b) {
    throw std::invalid_argument("modulus certificates apply to T3b and T4b plans");
  }
  const Resolution m(plan.resolution);
  const auto F = build_martingale<double>(plan, m.bits());
  const auto w = plan_weights(plan);
  std::vector<ModulusRow> rows;
  for (std::size_t k = 0; k < plan.size(); ++k) {
    ModulusRow row;
    row.k = static_cast<int>(k);
    row.alpha = plan.alphas[k];
    row.modulus = modulus_hp(F, top_bit(plan.alphas[k]), plan.p);
    const std::size_t from = plan.regime == Regime::T3b ? k + 1 : k;
    for (std::size_t i = from; i < w.size(); ++i) row.literal_bound += w[i];
    row.lemma0_bound = lemma0_bound(std::span<const double>(w).subspan(k), plan.p);
    row.literal_holds = row.modulus <= row.literal_bound * (1.0 + kBoundSlack);
    row.lemma0_holds = row.modulus <= row.lemma0_bound * (1.0 + kBoundSlack);
    rows.push_back(row);
  }
  return rows;
}

std::vector<KernelIntegralRow> kernel_integral_rows(const SequencePlan& plan, int resolution) {
  const Resolution m(resolution);
  std::vector<KernelIntegralRow> rows;
  for (std::size_t k = 0; k < plan.size(); ++k) {
    const std::uint64_t a = plan.alphas[k];
    const std::uint64_t rest = a - (std::uint64_t{1} << top_bit(a));
    if (rest == 0) continue;
    if (rest > m.cosets()) throw std::out_of_range("kernel index exceeds 2^M");
    FejerSweep sweep(m);
    sweep.advance_to(rest);
    double s = 0.0;
    for (auto v : sweep.scaled_kernel()) s += std::sqrt(static_cast<double>(std::llabs(v)));
    KernelIntegralRow row;
    row.k = static_cast<int>(k);
    row.alpha = a;
    row.integral = std::ldexp(s, -m.bits());
    row.variation = variation(a);
    row.ratio = row.integral / row.variation;
    rows.push_back(row);
  }
  return rows;
}

#define DYADIKA_INSTANTIATE(T)                                                              \
  template T plan_weight<T>(const SequencePlan&, std::size_t);                              \
  template T atom_amplitude<T>(int, Exponent);                                              \
  template T expected_coefficient<T>(const SequencePlan&, std::size_t);                     \
  template Atom<T> block_atom<T>(const DyadicIndex&, Exponent, Resolution);                 \
  template DyadicMartingale<T> build_martingale<T>(const SequencePlan&, int);               \
  template Spectrum<T> expected_spectrum<T>(const SequencePlan&, int);                      \
  template DecompositionRow decomposition_check<T>(const SequencePlan&, std::size_t);                 \
  template std::vector<DecompositionRow> decomposition_rows<T>(const SequencePlan&);

DYADIKA_INSTANTIATE(double)
DYADIKA_INSTANTIATE(Rational)

#undef DYADIKA_INSTANTIATE

}  // namespace dyadika
