#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dyadika/counterexamples.hpp"
#include "oracles.hpp"

using namespace dyadika;

namespace {

SequencePlan small_plan(Regime r) {
  SequencePlan p = default_plan(r);
  p.resolution = 7;
  switch (r) {
    case Regime::T1b:
      p.alphas = {1, 5, 21};
      p.phi = {2, 4, 6};
      break;
    case Regime::T2b:
      p.alphas = {5, 17};
      p.phi = {phi_span_power(5, p.p), phi_span_power(17, p.p)};
      break;
    case Regime::T3b:
      p.alphas = {1, 5};
      p.phi = {1, 1};
      break;
    case Regime::T4b:
      p.alphas = {3, 5, 17};
      p.phi = {1, 1, 1};
      break;
  }
  return p;
}

// sum_k mu_k a_k from separately built atoms.
std::vector<Rational> atom_sum(const SequencePlan& plan) {
  const Resolution m(plan.resolution);
  StepFunction<Rational> f(m);
  for (std::size_t k = 0; k < plan.size(); ++k) {
    const auto a = block_atom<Rational>(index_stats(plan.alphas[k]), plan.p, m);
    f = f + a.f * plan_weight<Rational>(plan, k);
  }
  return {f.values().begin(), f.values().end()};
}

}  // namespace

TEST_CASE("regime names") {
  for (Regime r : {Regime::T1b, Regime::T2b, Regime::T3b, Regime::T4b}) CHECK(parse_regime(to_string(r)) == r);
  CHECK_THROWS(parse_regime("T5b"));
}

TEST_CASE("alpha generators") {
  CHECK(alternating_alphas(4) == std::vector<std::uint64_t>{1, 5, 21, 85});
  for (std::uint64_t a : alternating_alphas(7)) CHECK(oracle::variation(a) == 2 * static_cast<int>(oracle::runs(a).size()));
  const auto sq = alternating_variation_squared_alphas(3);
  CHECK(sq == std::vector<std::uint64_t>{1, 5, 21845});
  CHECK(oracle::variation(21845) == 16);
  CHECK(power_plus_one_alphas({1, 2, 4, 8}) == std::vector<std::uint64_t>{3, 5, 17, 257});
}

TEST_CASE("phi helpers") {
  CHECK(phi_variation(21) == 6.0);
  // 2^{d (1/p - 2)/2} with p = 1/4 and d(17) = 4.
  CHECK(phi_span_power(17, Exponent(0.25)) == doctest::Approx(16.0));
}

TEST_CASE("default plans validate") {
  for (Regime r : {Regime::T1b, Regime::T2b, Regime::T3b, Regime::T4b}) {
    const auto plan = default_plan(r);
    const auto v = validate(plan);
    CHECK_MESSAGE(v.ok(), to_string(r));
    CHECK(v.weight_sum > 0.0);
  }
  CHECK(default_plan(Regime::T1b).alphas == alternating_alphas(7));
  CHECK(default_plan(Regime::T1b).resolution == 14);
  CHECK(default_plan(Regime::T3b).resolution == 16);
}

TEST_CASE("validation rejects malformed plans") {
  auto p = default_plan(Regime::T1b);
  p.alphas = {5, 6};
  p.phi = {4, 4};
  CHECK_FALSE(validate(p).ok());  // same top bit

  p = default_plan(Regime::T1b);
  p.phi[3] = 1.0;
  CHECK_FALSE(validate(p).ok());  // phi decreasing

  p = default_plan(Regime::T1b);
  p.resolution = 12;
  CHECK_FALSE(validate(p).ok());  // |5461| + 1 = 13

  p = default_plan(Regime::T3b);
  p.alphas = {1, 5, 21};
  p.phi = {1, 1, 1};
  CHECK_FALSE(validate(p).ok());  // V(5)^2 = 16 > V(21) = 6

  p = default_plan(Regime::T4b);
  p.alphas = {5, 9};
  p.phi = {1, 1};
  CHECK_FALSE(validate(p).ok());  // 2 d(5) = 4 > d(9) = 3

  p = default_plan(Regime::T2b);
  p.p = Exponent(0.5);
  CHECK_FALSE(validate(p).ok());

  p = default_plan(Regime::T1b);
  p.budget = 1.0;
  CHECK_FALSE(validate(p).ok());
  CHECK_THROWS_AS(require_valid(p), std::invalid_argument);
}

TEST_CASE("plan json round trip") {
  const auto j = nlohmann::json::parse(R"({"regime": "T4b", "p": "1/4", "resolution": 12,
      "alpha_rule": {"kind": "power_plus_one", "exponents": [1, 2, 4]}})");
  const auto plan = plan_from_json(j);
  CHECK(plan.alphas == std::vector<std::uint64_t>{3, 5, 17});
  CHECK(plan.p.value() == 0.25);
  const auto back = plan_from_json(nlohmann::json::parse(to_json(plan).dump()));
  CHECK(back.alphas == plan.alphas);
  CHECK(back.resolution == 12);
  CHECK(back.phi == plan.phi);
  CHECK_THROWS(plan_from_json(nlohmann::json::parse(R"({"regime": "T1b", "alpha_rule": {"kind": "nope"}})")));
}

TEST_CASE("block atoms") {
  const Resolution m(8);
  const auto a = block_atom<Rational>(index_stats(13), Exponent(0.5), m);
  CHECK(a.support == interval(3, Point::zero(m)));
  CHECK(sup_abs(a.f) == 64);
  CHECK(integrate(a.f) == 0);
  CHECK(certify_atom(a.f, a.support, Exponent(0.5)).ok());
  CHECK(certify_atom(a.f, a.support, Exponent(0.5)).tight);
  const auto q = block_atom<Rational>(index_stats(9), Exponent(0.25), m);
  CHECK(sup_abs(q.f) == Rational(1L << 12));
  CHECK(certify_atom(q.f, q.support, Exponent(0.25)).tight);
  CHECK_NOTHROW(block_atom<Rational>(index_stats(128), Exponent(0.5), m));
  CHECK_THROWS(block_atom<Rational>(index_stats(256), Exponent(0.5), m));
}

TEST_CASE("built martingales match separately built atom sums and brute-force spectra") {
  for (Regime r : {Regime::T1b, Regime::T2b, Regime::T3b, Regime::T4b}) {
    const auto plan = small_plan(r);
    REQUIRE(validate(plan).ok());
    const int M = plan.resolution;
    const auto F = build_martingale<Rational>(plan, M);
    const auto want = atom_sum(plan);
    for (std::size_t i = 0; i < want.size(); ++i) REQUIRE(F.terminal()[i] == want[i]);
    const auto c = oracle::analyze(want, M);
    const auto closed = expected_spectrum<Rational>(plan, M);
    for (std::size_t n = 0; n < c.size(); ++n) REQUIRE(closed[n] == c[n]);
  }
}

TEST_CASE("spectrum coefficients in closed form") {
  const auto t1 = small_plan(Regime::T1b);
  // 2^{|alpha|} Phi^{1/2} / V: alpha = 5, Phi = 4, V = 4.
  CHECK(expected_coefficient<Rational>(t1, 1) == 2);
  const auto t3 = small_plan(Regime::T3b);
  // 2^{|alpha|} / V^2: alpha = 5.
  CHECK(expected_coefficient<Rational>(t3, 1) == oracle::q(1, 4));
  const auto t4 = small_plan(Regime::T4b);
  // 2^{|alpha| + (1/p - 2)[alpha]}: alpha = 17, p = 1/4.
  CHECK(expected_coefficient<Rational>(t4, 2) == 16);
  CHECK(expected_coefficient<Rational>(t4, 0) == 2);
}

TEST_CASE("truncated builds keep only atoms below the level") {
  const auto plan = small_plan(Regime::T1b);
  const auto F = build_martingale<Rational>(plan, plan.resolution);
  for (int A = 0; A <= plan.resolution; ++A) {
    const auto G = build_martingale<Rational>(plan, A);
    REQUIRE(G.terminal() == F.level(A));
  }
  auto empty = plan;
  empty.alphas.clear();
  empty.phi.clear();
  empty.report_from = 0;
  CHECK(build_martingale<Rational>(empty, empty.resolution).terminal() == StepFunction<Rational>(Resolution(7)));
}

TEST_CASE("decomposition residuals vanish") {
  for (Regime r : {Regime::T1b, Regime::T2b, Regime::T3b, Regime::T4b}) {
    const auto plan = small_plan(r);
    for (const auto& row : decomposition_rows<Rational>(plan)) {
      CHECK(row.exact_zero);
      CHECK(row.split_residual == 0.0);
      CHECK(row.shift_residual == 0.0);
    }
    CHECK(decomposition_check<Rational>(plan, 1).exact_zero);
  }
  auto single = small_plan(Regime::T1b);
  single.alphas = {4};
  single.phi = {2};
  single.report_from = 0;
  CHECK(decomposition_check<Rational>(single, 0).exact_zero);
}

TEST_CASE("default T1b sweep") {
  const auto plan = default_plan(Regime::T1b);
  const auto rep = blowup_sweep(plan, plan.report_rows(), 2);
  REQUIRE(rep.rows.size() == 6);
  CHECK(rep.monotone);
  CHECK(rep.dominated);
  CHECK(rep.calibration_rows == 3);
  const double frozen[] = {0.3474344227601602, 0.509772082885628, 0.6481594395490259,
                           0.7644565129956811, 0.8688604873362131, 0.9574364020023788};
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(rep.rows[i].k == static_cast<int>(i) + 1);
    CHECK(rep.rows[i].measured == doctest::Approx(frozen[i]).epsilon(1e-12));
    // V^{1/2} / Phi^{1/4} with Phi = V.
    CHECK(rep.rows[i].expression == doctest::Approx(std::pow(2.0 * (i + 2), 0.25)).epsilon(1e-14));
  }
  const auto serial = blowup_sweep(plan, plan.report_rows(), 1);
  for (std::size_t i = 0; i < 6; ++i) CHECK(serial.rows[i].measured == rep.rows[i].measured);
  CHECK(to_csv(rep).rfind("k,alpha,measured,paper_bound\n", 0) == 0);
}

TEST_CASE("single-row sweep is monotone") {
  auto plan = small_plan(Regime::T1b);
  const auto rep = blowup_sweep(plan, {1}, 1);
  CHECK(rep.rows.size() == 1);
  CHECK(rep.ok());
}

TEST_CASE("T4b final-display bound") {
  const auto plan = default_plan(Regime::T4b);
  const auto rep = blowup_sweep(plan, plan.report_rows(), 1);
  REQUIRE(rep.ok());
  for (const auto& row : rep.rows) {
    // 2^{(2p - 1)[alpha] - 4} with [alpha] = 0.
    CHECK(row.expression == 0.0625);
    CHECK(row.measured >= row.paper_bound);
  }
}

TEST_CASE("modulus certificates") {
  const auto t3 = modulus_certificates(default_plan(Regime::T3b));
  REQUIRE(t3.size() == 3);
  for (const auto& row : t3) CHECK(row.lemma0_holds);
  CHECK(t3[2].literal_bound == 0.0);
  CHECK(t3[2].modulus > 0.0);
  const auto t4 = modulus_certificates(default_plan(Regime::T4b));
  for (const auto& row : t4) CHECK(row.lemma0_holds);
  CHECK_THROWS(modulus_certificates(default_plan(Regime::T1b)));
}

TEST_CASE("third-term kernel integrals") {
  const auto rows = kernel_integral_rows(default_plan(Regime::T1b), 14);
  REQUIRE(!rows.empty());
  CHECK(rows[0].alpha == 5);
  CHECK(rows[0].integral == 1.0);  // 1 * K_1 = 1
  CHECK(rows[0].variation == 4);
}
