#include "dyadika/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "dyadika/parallel.hpp"

namespace dyadika {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kFloatTolerance = 1e-9;

ojson config_json(const RunConfig& c) {
  ojson j;
  j["command"] = c.command;
  j["resolution"] = c.resolution;
  j["mode"] = to_string(c.mode);
  ojson ps = ojson::array();
  for (double p : c.ps) ps.push_back(Exponent(p).label());
  j["p"] = ps;
  j["seed"] = c.seed;
  j["output"] = c.format == OutputFormat::json ? "json" : "csv";
  if (c.command == "counterexample") {
    j["regime"] = c.plan_path.empty() ? c.regime : "plan";
    j["plan"] = c.plan_path;
  }
  return j;
}

Report make_report(const RunConfig& config, std::vector<std::string> columns) {
  Report r;
  r.command = config.command;
  r.config = config_json(config);
  r.columns = std::move(columns);
  return r;
}

std::string csv_cell(const ojson& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  }
  return v.dump();
}

// Pointwise maximal function of the dyadic martingale with terminal values v.
void maximal_into(const std::vector<double>& v, int M, std::vector<double>& level, std::vector<double>& best) {
  const std::size_t N = v.size();
  best.assign(N, 0.0);
  level.assign(v.begin(), v.end());
  for (std::size_t i = 0; i < N; ++i) best[i] = std::fabs(v[i]);
  for (int m = M - 1; m >= 0; --m) {
    const std::size_t count = std::size_t{1} << m;
    for (std::size_t c = 0; c < count; ++c) level[c] = 0.5 * (level[2 * c] + level[2 * c + 1]);
    const int shift = M - m;
    for (std::size_t i = 0; i < N; ++i) best[i] = std::max(best[i], std::fabs(level[i >> shift]));
  }
}

double norm_of(Resolution m, const std::vector<double>& v, Exponent p) {
  return lp_norm(StepFunction<double>(m, v), p);
}

std::vector<Exponent> exponents_or(const RunConfig& c, std::vector<double> fallback) {
  const auto& src = c.ps.empty() ? fallback : c.ps;
  std::vector<Exponent> out;
  for (double p : src) out.emplace_back(p);
  return out;
}

void compare_fixture(Report& r, const Fixtures& fx, const std::string& section, const std::string& key,
                     double value) {
  const auto ref = fx.get(section, key);
  ojson row;
  row["check"] = section + "." + key;
  row["value"] = value;
  if (!ref) {
    row["reference"] = nullptr;
    row["growth"] = nullptr;
    row["status"] = "no_fixture";
  } else {
    const double growth = value / *ref - 1.0;
    row["reference"] = *ref;
    row["growth"] = growth;
    const bool ok = growth <= kFixtureGrowth;
    row["status"] = ok ? "pass" : "fail";
    if (!ok) r.failures.push_back(section + "." + key + " exceeds fixture by more than 5%");
  }
  r.rows.push_back(std::move(row));
}

// ---- kernels ----

template <Scalar T>
struct IdentityTally {
  std::uint64_t checks = 0;
  double max_gap = 0.0;
  bool all_zero = true;
  bool within_tolerance = true;
};

template <Scalar T>
void kernel_suite(Resolution m, Report& r) {
  const std::uint64_t N = m.cosets();
  std::map<std::string, IdentityTally<T>> tally;
  for (const char* id : {"dirichlet_closed", "fejer_closed", "fejer_9a", "shift_f1", "expansion_2n_minus_1"}) {
    tally[id];
  }

  auto record = [&](const std::string& identity, std::uint64_t n, const std::string& pair, const StepFunction<T>& lhs,
                    const StepFunction<T>& rhs) {
    const T gap = max_abs_difference(lhs, rhs);
    const double g = to_double(gap);
    const double scale = std::max(1.0, to_double(sup_abs(lhs)));
    const bool zero = is_zero(gap);
    const bool ok = scalar_mode_of<T>() == ScalarMode::exact ? zero : g <= kFloatTolerance * scale;
    auto& t = tally[identity];
    ++t.checks;
    t.max_gap = std::max(t.max_gap, g);
    t.all_zero = t.all_zero && zero;
    t.within_tolerance = t.within_tolerance && ok;
    ojson row;
    row["identity"] = identity;
    row["n"] = n;
    row["method_pair"] = pair;
    row["max_abs_gap"] = g;
    row["status"] = ok ? "pass" : "fail";
    r.rows.push_back(std::move(row));
  };

  auto ints = [&](const std::vector<std::int64_t>& v) {
    return StepFunction<T>::generate(m, [&](std::size_t i) { return from_int<T>(v[i]); });
  };

  FejerSweep main(m);
  FejerSweep low(m);
  std::vector<std::int64_t> d_power;  // D_{2^top} from the direct sweep
  for (std::uint64_t n = 1; n <= N; ++n) {
    main.advance();
    const T nT = from_int<T>(static_cast<std::int64_t>(n));
    const auto& S = main.scaled_kernel();
    const auto k_direct = StepFunction<T>::generate(m, [&](std::size_t i) {
      T v = from_int<T>(S[i]) / nT;
      return v;
    });
    const auto nk_direct = k_direct * nT;

    if (n < N) {
      record("fejer_9a", n, "direct:decomposition_9a", nk_direct,
             scaled_fejer_kernel<T>(n, m, KernelMethod::decomposition_9a));
    }
    const int top = top_bit(n);
    const std::uint64_t j = n - (std::uint64_t{1} << top);
    if (j == 0) {
      record("dirichlet_closed", n, "direct:closed", ints(main.dirichlet()), dirichlet_dyadic<T>(top, m));
      record("fejer_closed", n, "direct:closed", k_direct, fejer_dyadic<T>(top, m));
      d_power = main.dirichlet();
      low = FejerSweep(m);
      record("shift_f1", n, "direct:shifted", ints(main.dirichlet()), ints(d_power));
    } else {
      low.advance_to(j);
      const auto w = walsh<T>(std::uint64_t{1} << top, m);
      record("shift_f1", n, "direct:shifted", ints(main.dirichlet()), ints(d_power) + w * ints(low.dirichlet()));
    }
    if (is_power_of_two(n + 1)) {
      const int k = top_bit(n + 1);
      record("expansion_2n_minus_1", n, "direct:expansion", nk_direct, expansion_rhs<T>(k, m));
    }
  }

  ojson summary = ojson::object();
  for (const auto& [id, t] : tally) {
    ojson s;
    s["checks"] = t.checks;
    s["max_abs_gap"] = t.max_gap;
    s["exact_zero"] = t.all_zero;
    summary[id] = s;
    if (!t.within_tolerance) r.failures.push_back(id + ": nonzero residual");
  }
  r.summary["identities"] = summary;
}

// ---- bounds ----

double bound_weight(std::uint64_t n, Exponent p) {
  if (p.value() == 0.5) {
    const double v = variation(n);
    return v * v;
  }
  if (p.value() < 0.5) return std::exp2(bit_span(n) * (1.0 / p.value() - 2.0));
  return 1.0;
}

ojson modulus_json(const std::vector<ModulusRow>& rows) {
  ojson arr = ojson::array();
  for (const auto& m : rows) {
    ojson j;
    j["k"] = m.k;
    j["alpha"] = m.alpha;
    j["modulus"] = m.modulus;
    j["literal_bound"] = m.literal_bound;
    j["lemma0_bound"] = m.lemma0_bound;
    j["literal_holds"] = m.literal_holds;
    j["lemma0_holds"] = m.lemma0_holds;
    arr.push_back(j);
  }
  return arr;
}

template <Scalar T>
ojson spectrum_check(const SequencePlan& plan, Report& r) {
  const auto F = build_martingale<T>(plan, plan.resolution);
  const auto got = analyze(F.terminal());
  const auto want = expected_spectrum<T>(plan, plan.resolution);
  T gap = from_int<T>(0);
  T scale = from_int<T>(0);
  for (std::size_t n = 0; n < got.size(); ++n) {
    T d = abs_value<T>(got[n] - want[n]);
    if (d > gap) gap = d;
    T a = abs_value<T>(want[n]);
    if (a > scale) scale = a;
  }
  const bool exact = is_zero(gap);
  const bool ok = scalar_mode_of<T>() == ScalarMode::exact
                      ? exact
                      : to_double(gap) <= kFloatTolerance * std::max(1.0, to_double(scale));
  if (!ok) r.failures.push_back(to_string(plan.regime) + ": spectrum differs from closed form");
  ojson j;
  j["max_abs_gap"] = to_double(gap);
  j["exact_match"] = exact;
  return j;
}

template <Scalar T>
ojson decomposition_json(const SequencePlan& plan, Report& r) {
  ojson arr = ojson::array();
  for (const auto& d : decomposition_rows<T>(plan)) {
    const bool ok = scalar_mode_of<T>() == ScalarMode::exact
                        ? d.exact_zero
                        : std::max(d.split_residual, d.shift_residual) <= kFloatTolerance;
    if (!ok) r.failures.push_back(to_string(plan.regime) + ": decomposition residual at k = " + std::to_string(d.k));
    ojson j;
    j["k"] = d.k;
    j["alpha"] = d.alpha;
    j["split_residual"] = d.split_residual;
    j["shift_residual"] = d.shift_residual;
    j["exact_zero"] = d.exact_zero;
    arr.push_back(j);
  }
  return arr;
}

std::vector<SequencePlan> plans_for(const RunConfig& c) {
  if (!c.plan_path.empty()) {
    std::ifstream in(c.plan_path);
    if (!in) throw std::invalid_argument("cannot open plan file: " + c.plan_path);
    nlohmann::json j;
    in >> j;
    std::vector<SequencePlan> out;
    if (j.is_array()) {
      for (const auto& e : j) out.push_back(plan_from_json(e));
    } else {
      out.push_back(plan_from_json(j));
    }
    return out;
  }
  if (c.regime == "all") {
    return {default_plan(Regime::T1b), default_plan(Regime::T2b), default_plan(Regime::T3b),
            default_plan(Regime::T4b)};
  }
  return {default_plan(parse_regime(c.regime))};
}

template <typename Fn>
double time_ms(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

std::string Report::to_json() const {
  ojson j;
  j["command"] = command;
  j["config"] = config;
  j["status"] = passed() ? "pass" : "fail";
  j["failures"] = failures;
  j["summary"] = summary;
  j["columns"] = columns;
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::string Report::to_csv() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "," : "");
      if (row.contains(columns[i])) out << csv_cell(row.at(columns[i]));
    }
    out << '\n';
  }
  return out.str();
}

Lemma3Summary lemma3_sweep(Resolution m, std::uint64_t n_limit) {
  if (n_limit > m.cosets()) throw std::out_of_range("lemma-3 sweep limit exceeds 2^M");
  Lemma3Summary s;
  FejerSweep sweep(m);
  for (std::uint64_t n = 1; n < n_limit; ++n) {
    sweep.advance();
    ++s.n_checked;
    for (const auto& row : lemma3_lower_bound(sweep.scaled_kernel(), n, m)) {
      ++s.rows_checked;
      if (row.holds) continue;
      ++s.violations;
      if (row.block_low == 0) {
        ++s.violations_low_block;
      } else {
        ++s.violations_other;
      }
      if (!s.first_violation) s.first_violation = n;
    }
  }
  return s;
}

LemmaConstants lemma_constants(Resolution m) {
  LemmaConstants c;
  c.resolution = m.bits();
  c.lemma4 = fit_lemma4_constant(m);
  FejerSweep sweep(m);
  std::vector<std::int64_t> prev_dyadic;  // 2^{n-1} K_{2^{n-1}}
  std::vector<std::int64_t> predecessor;  // (2^n - 1) K_{2^n - 1}
  for (std::uint64_t n = 1; n <= m.cosets(); ++n) {
    sweep.advance();
    const auto& S = sweep.scaled_kernel();
    const double fit = fit_lemma5_constant(S, n, m);
    if (fit > c.lemma5_c) {
      c.lemma5_c = fit;
      c.lemma5_argmax = n;
    }
    if (is_power_of_two(n + 1)) predecessor = S;
    if (is_power_of_two(n)) {
      const double dn = static_cast<double>(n);
      if (n >= 2) {
        const double half = dn / 2.0;
        for (std::size_t i = 0; i < S.size(); ++i) {
          const double cur = static_cast<double>(S[i]) / dn;
          const double prev = static_cast<double>(prev_dyadic[i]) / half;
          if (prev != 0.0) {
            c.kernel_doubling_c = std::max(c.kernel_doubling_c, std::fabs(cur) / std::fabs(prev));
          } else if (cur != 0.0) {
            c.kernel_doubling_c = INFINITY;
          }
          const double pred = std::fabs(static_cast<double>(predecessor[i]) / (dn - 1.0));
          c.kernel_predecessor_c = std::max(c.kernel_predecessor_c, pred / (std::fabs(cur) + 1.0));
        }
      }
      prev_dyadic = S;
    }
  }
  return c;
}

std::vector<AtomShape> bound_atom_shapes(Resolution m, std::uint64_t seed, int random_count) {
  const int M = m.bits();
  std::vector<AtomShape> shapes;
  for (int j = 0; j < M; ++j) {
    auto f = dirichlet_dyadic<double>(j + 1, m) - dirichlet_dyadic<double>(j, m);
    f = f / std::exp2(j);
    shapes.push_back(AtomShape{"block_" + std::to_string(j), "block", j, 0, std::move(f)});
  }
  SeededRandom rng(seed);
  for (int r = 0; r < random_count; ++r) {
    const int level = static_cast<int>(rng.below(static_cast<std::uint64_t>(M)));
    const auto anchor = static_cast<std::uint32_t>(rng.below(m.cosets()));
    const DyadicInterval I(level, Point(m, anchor));
    std::vector<double> v(m.cosets(), 0.0);
    double mean = 0.0;
    for (std::size_t i = I.begin(); i < I.end(); ++i) {
      v[i] = 2.0 * rng.uniform() - 1.0;
      mean += v[i];
    }
    mean /= static_cast<double>(I.size());
    double sup = 0.0;
    for (std::size_t i = I.begin(); i < I.end(); ++i) {
      v[i] -= mean;
      sup = std::max(sup, std::fabs(v[i]));
    }
    if (sup > 0.0) {
      for (std::size_t i = I.begin(); i < I.end(); ++i) v[i] /= sup;
    }
    shapes.push_back(AtomShape{"random_" + std::to_string(r), "random", level,
                               static_cast<std::uint32_t>(I.begin()), StepFunction<double>(m, std::move(v))});
  }
  return shapes;
}

BoundsResult bounds_sweep(Resolution m, const std::vector<Exponent>& ps, std::uint64_t seed, int threads) {
  const auto shapes = bound_atom_shapes(m, seed);
  const int M = m.bits();
  const std::size_t P = ps.size();
  std::vector<std::vector<BoundRow>> per_shape(shapes.size());
  parallel_for(shapes.size(), threads, [&](std::size_t s) {
    const auto& shape = shapes[s];
    const Spectrum<double> c = analyze(shape.f);
    std::vector<double> level;
    std::vector<double> best;
    std::vector<double> v(shape.f.values().begin(), shape.f.values().end());
    maximal_into(v, M, level, best);
    std::vector<double> base(P);
    for (std::size_t q = 0; q < P; ++q) base[q] = norm_of(m, best, ps[q]);
    std::vector<BoundRow> rows(P);
    for (std::size_t q = 0; q < P; ++q) {
      rows[q].p = ps[q].label();
      rows[q].atom = shape.id;
      rows[q].kind = shape.kind;
      rows[q].level = shape.level;
    }
    for (std::uint64_t n = 1; n <= m.cosets(); ++n) {
      const auto sigma = fejer_mean(c, n);
      v.assign(sigma.values().begin(), sigma.values().end());
      maximal_into(v, M, level, best);
      for (std::size_t q = 0; q < P; ++q) {
        if (base[q] == 0.0) continue;
        const double plain = norm_of(m, best, ps[q]) / base[q];
        const double ratio = plain / bound_weight(n, ps[q]);
        if (ratio > rows[q].max_ratio) {
          rows[q].max_ratio = ratio;
          rows[q].argmax_n = n;
        }
        if (is_power_of_two(n) && plain > rows[q].dyadic_max_ratio) {
          rows[q].dyadic_max_ratio = plain;
          rows[q].dyadic_argmax_n = n;
        }
      }
    }
    per_shape[s] = std::move(rows);
  });
  BoundsResult out;
  for (std::size_t q = 0; q < P; ++q) {
    const auto label = ps[q].label();
    double mx = 0.0;
    double dy = 0.0;
    for (const auto& rows : per_shape) {
      out.rows.push_back(rows[q]);
      mx = std::max(mx, rows[q].max_ratio);
      dy = std::max(dy, rows[q].dyadic_max_ratio);
    }
    out.max_ratio[label] = mx;
    out.dyadic_max_ratio[label] = dy;
  }
  return out;
}

std::vector<ConjugationSample> conjugation_norm_ratios(Resolution m, const std::vector<Exponent>& ps,
                                                       std::uint64_t seed, int samples) {
  SeededRandom rng(seed + 0x5bd1e995u);
  std::vector<ConjugationSample> out;
  for (const auto& p : ps) out.push_back(ConjugationSample{p.label(), INFINITY, 0.0});
  for (int s = 0; s < samples; ++s) {
    const auto f = StepFunction<double>::generate(m, [&](std::size_t) { return 2.0 * rng.uniform() - 1.0; });
    const Point t(m, static_cast<std::uint32_t>(rng.below(m.cosets())));
    const DyadicMartingale<double> F(f);
    const DyadicMartingale<double> G(conjugate(f, t));
    for (std::size_t q = 0; q < ps.size(); ++q) {
      const double ratio = hp_norm(G, ps[q]) / hp_norm(F, ps[q]);
      out[q].min_ratio = std::min(out[q].min_ratio, ratio);
      out[q].max_ratio = std::max(out[q].max_ratio, ratio);
    }
  }
  return out;
}

Fixtures Fixtures::load(const std::string& path) {
  Fixtures fx;
  std::ifstream in(path);
  if (!in) return fx;
  fx.data = ojson::parse(in);
  return fx;
}

void Fixtures::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write fixtures: " + path);
  out << data.dump(2) << '\n';
}

std::optional<double> Fixtures::get(const std::string& section, const std::string& key) const {
  if (!data.contains(section) || !data.at(section).contains(key)) return std::nullopt;
  return data.at(section).at(key).get<double>();
}

void Fixtures::set(const std::string& section, const std::string& key, double value) {
  data[section][key] = value;
}

Report run_kernels(const RunConfig& config) {
  const Resolution m(config.resolution);
  Report r = make_report(config, {"identity", "n", "method_pair", "max_abs_gap", "status"});
  if (config.mode == ScalarMode::exact) {
    kernel_suite<Rational>(m, r);
  } else {
    kernel_suite<double>(m, r);
  }
  return r;
}

Report run_lemmas(const RunConfig& config) {
  const Resolution m(config.resolution);
  Report r = make_report(config, {"check", "value", "reference", "growth", "status"});

  const auto l3 = lemma3_sweep(m, m.cosets());
  auto l3row = [&](const std::string& name, double value) {
    ojson row;
    row["check"] = name;
    row["value"] = value;
    row["reference"] = 0;
    row["growth"] = nullptr;
    row["status"] = value == 0 ? "pass" : "fail";
    r.rows.push_back(row);
  };
  l3row("lemma3.violations", static_cast<double>(l3.violations));
  l3row("lemma3.violations_low_block", static_cast<double>(l3.violations_low_block));
  l3row("lemma3.violations_other", static_cast<double>(l3.violations_other));
  r.summary["lemma3"] = {{"n_checked", l3.n_checked},
                         {"rows_checked", l3.rows_checked},
                         {"violations", l3.violations},
                         {"first_violation", l3.first_violation ? ojson(*l3.first_violation) : ojson(nullptr)}};
  if (l3.violations > 0) r.failures.push_back("lemma3: " + std::to_string(l3.violations) + " violated rows");

  const auto c = lemma_constants(m);
  r.summary["lemma4"] = {{"c", c.lemma4.constant}, {"n", c.lemma4.n}, {"k", c.lemma4.k}, {"l", c.lemma4.l},
                         {"working_resolution", m.bits() + 4}};
  r.summary["lemma5"] = {{"c", c.lemma5_c}, {"argmax_n", c.lemma5_argmax}};
  r.summary["kernel_comparisons"] = {{"doubling_c", c.kernel_doubling_c},
                                     {"predecessor_c", c.kernel_predecessor_c}};

  const std::vector<std::pair<std::string, double>> values = {{"lemma4_c", c.lemma4.constant},
                                                              {"lemma5_c", c.lemma5_c},
                                                              {"kernel_doubling_c", c.kernel_doubling_c},
                                                              {"kernel_predecessor_c", c.kernel_predecessor_c}};
  if (config.calibrate) {
    if (config.fixtures_path.empty()) throw std::invalid_argument("--calibrate needs --fixtures PATH");
    Fixtures fx = Fixtures::load(config.fixtures_path);
    fx.data["resolution"] = m.bits();
    fx.data["seed"] = config.seed;
    for (const auto& [k, v] : values) fx.set("lemmas", k, v);
    fx.save(config.fixtures_path);
  }
  const Fixtures fx = config.fixtures_path.empty() ? Fixtures{} : Fixtures::load(config.fixtures_path);
  for (const auto& [k, v] : values) compare_fixture(r, fx, "lemmas", k, v);
  return r;
}

Report run_bounds(const RunConfig& config) {
  const Resolution m(config.resolution);
  const auto ps = exponents_or(config, {0.25, 1.0 / 3.0, 0.5});
  Report r = make_report(config, {"p", "atom", "kind", "level", "max_ratio", "argmax_n", "dyadic_max_ratio",
                                  "dyadic_argmax_n"});
  const auto res = bounds_sweep(m, ps, config.seed, config.threads);
  for (const auto& b : res.rows) {
    ojson row;
    row["p"] = b.p;
    row["atom"] = b.atom;
    row["kind"] = b.kind;
    row["level"] = b.level;
    row["max_ratio"] = b.max_ratio;
    row["argmax_n"] = b.argmax_n;
    row["dyadic_max_ratio"] = b.dyadic_max_ratio;
    row["dyadic_argmax_n"] = b.dyadic_argmax_n;
    r.rows.push_back(row);
  }
  ojson per_p = ojson::object();
  for (const auto& p : ps) {
    const auto label = p.label();
    per_p[label] = {{"max_ratio", res.max_ratio.at(label)}, {"dyadic_max_ratio", res.dyadic_max_ratio.at(label)}};
  }
  r.summary["ratios"] = per_p;
  ojson conj = ojson::object();
  for (const auto& s : conjugation_norm_ratios(m, ps, config.seed)) {
    conj[s.p] = {{"min_ratio", s.min_ratio}, {"max_ratio", s.max_ratio}};
  }
  r.summary["conjugation_norm_ratio"] = conj;

  Fixtures fx = config.fixtures_path.empty() ? Fixtures{} : Fixtures::load(config.fixtures_path);
  if (config.calibrate) {
    if (config.fixtures_path.empty()) throw std::invalid_argument("--calibrate needs --fixtures PATH");
    fx.data["resolution"] = m.bits();
    fx.data["seed"] = config.seed;
    for (const auto& p : ps) {
      fx.set("bounds", "max_ratio@" + p.label(), res.max_ratio.at(p.label()));
      fx.set("bounds", "dyadic_max_ratio@" + p.label(), res.dyadic_max_ratio.at(p.label()));
    }
    fx.save(config.fixtures_path);
  }
  ojson growth = ojson::object();
  for (const auto& p : ps) {
    for (const std::string key : {"max_ratio@", "dyadic_max_ratio@"}) {
      const double value = key == "max_ratio@" ? res.max_ratio.at(p.label()) : res.dyadic_max_ratio.at(p.label());
      const auto ref = fx.get("bounds", key + p.label());
      if (!ref) continue;
      const double g = value / *ref - 1.0;
      growth[key + p.label()] = g;
      if (g > kFixtureGrowth) r.failures.push_back("bounds." + key + p.label() + " exceeds fixture by more than 5%");
    }
  }
  r.summary["fixture_growth"] = growth;
  return r;
}

Report run_counterexample(const RunConfig& config) {
  const auto plans = plans_for(config);
  if (config.format == OutputFormat::csv && plans.size() != 1) {
    throw std::invalid_argument("csv output needs a single plan");
  }
  Report r = make_report(config, {"k", "alpha", "measured", "paper_bound"});
  ojson summaries = ojson::array();
  for (const auto& plan : plans) {
    ojson s;
    s["plan"] = to_json(plan);
    const auto v = validate(plan);
    s["weight_sum"] = v.weight_sum;
    s["problems"] = v.problems;
    if (!v.ok()) {
      r.failures.push_back(to_string(plan.regime) + ": invalid plan");
      summaries.push_back(s);
      continue;
    }
    const auto blow = blowup_sweep(plan, plan.report_rows(), config.threads);
    for (const auto& row : blow.rows) {
      ojson j;
      j["regime"] = to_string(plan.regime);
      j["k"] = row.k;
      j["alpha"] = row.alpha;
      j["measured"] = row.measured;
      j["expression"] = row.expression;
      j["paper_bound"] = row.paper_bound;
      r.rows.push_back(j);
    }
    s["measured_quantity"] = measured_quantity(plan.regime);
    s["fitted_c"] = blow.fitted_c;
    s["calibration_rows"] = blow.calibration_rows;
    s["monotone"] = blow.monotone;
    s["dominated"] = blow.dominated;
    if (!blow.monotone) r.failures.push_back(to_string(plan.regime) + ": measured values not strictly increasing");
    if (!blow.dominated) r.failures.push_back(to_string(plan.regime) + ": lower bound not dominated");
    if (config.mode == ScalarMode::exact) {
      s["spectrum"] = spectrum_check<Rational>(plan, r);
      s["decomposition"] = decomposition_json<Rational>(plan, r);
    } else {
      s["spectrum"] = spectrum_check<double>(plan, r);
      s["decomposition"] = decomposition_json<double>(plan, r);
    }
    if (plan.regime == Regime::T3b || plan.regime == Regime::T4b) {
      s["modulus"] = modulus_json(modulus_certificates(plan));
    }
    ojson kint = ojson::array();
    for (const auto& k : kernel_integral_rows(plan, plan.resolution)) {
      kint.push_back({{"k", k.k}, {"alpha", k.alpha}, {"integral", k.integral}, {"variation", k.variation},
                      {"ratio", k.ratio}});
    }
    s["kernel_integral"] = kint;
    summaries.push_back(s);
  }
  r.summary["plans"] = summaries;
  return r;
}

Report run_stats(const RunConfig& config) {
  const Resolution m(config.resolution);
  Report r = make_report(config, {"n", "msb", "lsb", "span", "variation", "popcount", "blocks", "block_count"});
  for (std::uint64_t n = 1; n < m.cosets(); ++n) {
    const auto d = index_stats(n);
    const auto b = block_decomposition(n);
    ojson row;
    row["n"] = n;
    row["msb"] = d.msb;
    row["lsb"] = d.lsb;
    row["span"] = d.span;
    row["variation"] = d.variation;
    row["popcount"] = d.popcount();
    row["blocks"] = b.to_string();
    row["block_count"] = b.count();
    r.rows.push_back(row);
  }
  return r;
}

Report run_bench(const RunConfig& config) {
  Report r = make_report(config, {"M", "naive_ms", "fast_ms", "speedup", "kernel_n", "direct_kernel_ms",
                                  "decomposed_kernel_ms"});
  SeededRandom rng(config.seed);
  std::vector<double> speedups;
  double last_direct = 0.0;
  double last_decomposed = 0.0;
  for (int M = std::min(4, config.resolution);; M = std::min(M + 2, config.resolution)) {
    const Resolution m(M);
    const auto f = StepFunction<double>::generate(m, [&](std::size_t) { return 2.0 * rng.uniform() - 1.0; });
    Spectrum<double> a(m);
    Spectrum<double> b(m);
    const double naive = time_ms([&] { a = analyze_naive(f); });
    const double fast = time_ms([&] { b = analyze(f); });
    const std::uint64_t n = m.cosets() - 1;
    const double direct = time_ms([&] { (void)scaled_fejer_kernel<double>(n, m, KernelMethod::direct); });
    const double decomposed = time_ms([&] { (void)scaled_fejer_kernel<double>(n, m, KernelMethod::decomposition_9a); });
    const double speedup = naive / std::max(fast, 1e-6);
    speedups.push_back(speedup);
    last_direct = direct;
    last_decomposed = decomposed;
    ojson row;
    row["M"] = M;
    row["naive_ms"] = naive;
    row["fast_ms"] = fast;
    row["speedup"] = speedup;
    row["kernel_n"] = n;
    row["direct_kernel_ms"] = direct;
    row["decomposed_kernel_ms"] = decomposed;
    r.rows.push_back(row);
    if (M == config.resolution) break;
  }
  r.summary["scalar_mode"] = "float";
  if (config.resolution >= 8 && speedups.size() >= 2) {
    if (!(speedups.back() > speedups.front())) r.failures.push_back("bench: fast-transform advantage did not grow with M");
    if (!(last_decomposed < last_direct)) r.failures.push_back("bench: decomposed kernel not faster than direct");
  }
  return r;
}

Report run_command(const RunConfig& config) {
  if (config.command == "kernels") return run_kernels(config);
  if (config.command == "lemmas") return run_lemmas(config);
  if (config.command == "bounds") return run_bounds(config);
  if (config.command == "counterexample") return run_counterexample(config);
  if (config.command == "stats") return run_stats(config);
  if (config.command == "bench") return run_bench(config);
  throw std::invalid_argument("unknown command: " + config.command);
}

std::string render(const Report& report, OutputFormat format) {
  return format == OutputFormat::json ? report.to_json() : report.to_csv();
}

void emit(const Report& report, const RunConfig& config) {
  const std::string text = render(report, config.format);
  if (config.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(config.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report: " + config.out_path);
  out << text;
}

}  // namespace dyadika
