#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dyadika/hardy.hpp"
#include "dyadika/transforms.hpp"
#include "oracles.hpp"

using namespace dyadika;

namespace {

StepFunction<double> random_double(Resolution m, std::mt19937_64& rng) {
  return StepFunction<double>::generate(m, [&](std::size_t) { return std::ldexp(static_cast<double>(rng() % 2001) - 1000.0, -8); });
}

StepFunction<Rational> random_rational(Resolution m, std::mt19937_64& rng) {
  return StepFunction<Rational>::generate(m, [&](std::size_t) { return oracle::q(static_cast<long>(rng() % 41) - 20, 8); });
}

// Block atom 2^{j(1/p-1)} (D_{2^{j+1}} - D_{2^j}) for p = 1/2.
StepFunction<Rational> half_atom(int j, Resolution m) {
  return (dirichlet_dyadic<Rational>(j + 1, m) - dirichlet_dyadic<Rational>(j, m)) * Rational(1L << j);
}

}  // namespace

TEST_CASE("exponents") {
  CHECK(Exponent(0.25).label() == "1/4");
  CHECK(Exponent(1.0 / 3.0).label() == "1/3");
  CHECK(Exponent(1.0).label() == "1");
  CHECK_THROWS(Exponent(0.0));
  CHECK_THROWS(Exponent(-1.0));
}

TEST_CASE("lp norms") {
  const Resolution m(8);
  CHECK(lp_norm(StepFunction<double>::constant(m, -3.0), Exponent(0.5)) == doctest::Approx(3.0));
  for (int n = 0; n <= 8; ++n) {
    const auto d = dirichlet_dyadic<Rational>(n, m);
    CHECK(lp_norm(d, Exponent(1.0)) == doctest::Approx(1.0));
    CHECK(lp_norm(d, Exponent(0.5)) == doctest::Approx(std::ldexp(1.0, -n)));
  }
  CHECK_THROWS(lp_norm(StepFunction<double>(m), Exponent(3.0)));
}

TEST_CASE("weak norms") {
  const Resolution m(8);
  CHECK(weak_lp_norm(StepFunction<double>::constant(m, 2.5), Exponent(0.25)) == doctest::Approx(2.5));
  for (int n = 0; n <= 8; ++n) {
    const auto ind = indicator<double>(interval(n, Point::zero(m)));
    for (double p : {0.25, 0.5, 1.0}) REQUIRE(weak_lp_norm(ind, Exponent(p)) == doctest::Approx(std::pow(2.0, -n / p)));
  }
  // Two levels: |f| = 4 on measure 1/4 and 1 elsewhere.
  const auto f = StepFunction<double>::generate(m, [](std::size_t i) { return i < 64 ? -4.0 : 1.0; });
  CHECK(weak_lp_norm(f, Exponent(0.5)) == doctest::Approx(1.0));
  CHECK(weak_lp_norm(f, Exponent(1.0)) == doctest::Approx(1.0));
  CHECK(weak_lp_norm(f, Exponent(2.0)) == doctest::Approx(2.0));

  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_double(Resolution(6), rng);
    for (double p : {0.25, 0.5, 1.0}) REQUIRE(weak_lp_norm(g, Exponent(p)) <= lp_norm(g, Exponent(p)) * (1 + 1e-12));
  }
}

TEST_CASE("martingale levels are coset averages") {
  std::mt19937_64 rng(2);
  const int M = 6;
  const Resolution m(M);
  const auto f = random_rational(m, rng);
  const DyadicMartingale<Rational> F(f);
  const std::vector<Rational> v(f.values().begin(), f.values().end());
  for (int level = 0; level <= M; ++level) {
    const auto want = oracle::coset_average(v, level, M);
    const auto got = F.level(level);
    for (std::size_t i = 0; i < v.size(); ++i) REQUIRE(got[i] == want[i]);
    REQUIRE(F.level_values(level).size() == (std::size_t{1} << level));
    REQUIRE(got == partial_sum(f, std::uint64_t{1} << level));
  }
}

TEST_CASE("maximal function") {
  const Resolution m(6);
  const DyadicMartingale<double> c(StepFunction<double>::constant(m, -2.0));
  CHECK(maximal(c) == StepFunction<double>::constant(m, 2.0));

  std::mt19937_64 rng(4);
  const auto f = random_double(m, rng).map([](double x) { return std::fabs(x) + 0.5; });
  const auto fs = maximal(DyadicMartingale<double>(f));
  const double mean = integrate(f);
  for (std::size_t i = 0; i < 64; ++i) {
    REQUIRE(fs[i] >= std::fabs(f[i]));
    REQUIRE(fs[i] >= mean - 1e-12);
  }

  // An atom on I_M has vanishing averages at every coarser level.
  const auto a = StepFunction<double>::generate(m, [](std::size_t i) { return i == 0 ? 64.0 : (i == 1 ? -64.0 : 0.0); });
  CHECK(maximal(DyadicMartingale<double>(a)) == a.map([](double x) { return std::fabs(x); }));
}

TEST_CASE("hardy norms") {
  const Resolution m(6);
  CHECK(hp_norm(DyadicMartingale<double>(StepFunction<double>::constant(m, 1.0)), Exponent(0.5)) == doctest::Approx(1.0));
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_double(m, rng);
    const DyadicMartingale<double> F(f);
    for (double p : {0.25, 0.5, 1.0, 2.0}) REQUIRE(hp_norm(F, Exponent(p)) >= lp_norm(f, Exponent(p)) * (1 - 1e-12));
  }
}

TEST_CASE("H_p modulus") {
  const int M = 6;
  const Resolution m(M);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const DyadicMartingale<double> F(random_double(m, rng));
    REQUIRE(modulus_hp(F, M, Exponent(0.5)) == 0.0);
    // sup_{m>n+1} |F_m - F_{n+1}| <= 2 sup_{m>n} |F_m - F_n| pointwise.
    for (int n = 0; n < M; ++n) REQUIRE(modulus_hp(F, n + 1, Exponent(0.5)) <= 2.0 * modulus_hp(F, n, Exponent(0.5)) * (1 + 1e-12));
  }
  for (int j = 0; j < M; ++j) {
    const DyadicMartingale<double> W(walsh<double>(std::uint64_t{1} << j, m));
    for (int n = 0; n <= j; ++n) REQUIRE(modulus_hp(W, n, Exponent(0.5)) == doctest::Approx(1.0));
    for (int n = j + 1; n <= M; ++n) REQUIRE(modulus_hp(W, n, Exponent(0.5)) == 0.0);
  }
  // Zero modulus exactly when the spectrum lives below 2^n.
  const auto low = walsh<double>(3, m) + walsh<double>(5, m);
  CHECK(modulus_hp(DyadicMartingale<double>(low), 3, Exponent(1.0)) == 0.0);
  CHECK(modulus_hp(DyadicMartingale<double>(low), 2, Exponent(1.0)) > 0.0);
  CHECK_THROWS(modulus_hp(DyadicMartingale<double>(low), 7, Exponent(1.0)));
}

TEST_CASE("L_p modulus and best approximation") {
  const Resolution m(6);
  CHECK(modulus_lp(rademacher<double>(0, m), 0, Exponent(1.0)) == doctest::Approx(2.0));
  CHECK_THROWS(modulus_lp(rademacher<double>(0, m), 0, Exponent(0.5)));
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_double(m, rng);
    for (int n = 0; n <= 6; ++n) {
      const double w = modulus_lp(f, n, Exponent(1.0));
      const double e = lp_norm(f - partial_sum(f, std::uint64_t{1} << n), Exponent(1.0));
      REQUIRE(w / 2 <= e + 1e-12);
      REQUIRE(e <= w + 1e-12);
      REQUIRE(best_approximation_l2(f, n) == doctest::Approx(lp_norm(f - coset_average(f, n), Exponent(2.0))));
    }
  }
}

TEST_CASE("atom certificates") {
  const Resolution m(8);
  for (int j = 0; j < 7; ++j) {
    const auto I = interval(j, Point::zero(m));
    const auto cert = certify_atom(half_atom(j, m), I, Exponent(0.5));
    REQUIRE(cert.ok());
    REQUIRE(cert.tight);
    REQUIRE(cert.sup_abs == std::ldexp(1.0, 2 * j));
  }
  CHECK(certify_atom(half_atom(3, m), interval(3, Point::zero(m)), Exponent(0.5)).sup_abs == 64.0);
  CHECK(certify_atom(StepFunction<Rational>(m), interval(4, basis(1, m)), Exponent(0.5)).ok());
  const auto one = certify_atom(StepFunction<Rational>::constant(m, Rational(1)), interval(0, Point::zero(m)), Exponent(1.0));
  CHECK_FALSE(one.ok());
  CHECK_FALSE(one.mean_zero);
  CHECK(one.violations().size() == 1);
  CHECK_FALSE(certify_atom(half_atom(3, m), interval(4, Point::zero(m)), Exponent(0.5)).supported);
  CHECK_FALSE(certify_atom(half_atom(3, m), interval(3, Point::zero(m)), Exponent(1.0)).bounded);
}

TEST_CASE("atomic build") {
  const Resolution m(8);
  const auto empty = atomic_build<Rational>({}, {}, 8, m);
  CHECK(empty.terminal() == StepFunction<Rational>(m));

  std::vector<Atom<Rational>> atoms;
  std::vector<Rational> weights;
  for (int j : {1, 3, 5}) {
    atoms.push_back(Atom<Rational>{Exponent(0.5), interval(j, Point::zero(m)), half_atom(j, m)});
    weights.push_back(oracle::q(1, 1L << j));
  }
  const auto F = atomic_build<Rational>(weights, atoms, 8, m);
  const auto G = atomic_build<Rational>(weights, atoms, 4, m);
  CHECK(G.terminal() == half_atom(1, m) * weights[0] + half_atom(3, m) * weights[1]);
  CHECK(partial_sum(F.terminal(), 16) == G.terminal());

  const std::vector<double> w{0.5, 0.125, 1.0 / 32};
  double sum = 0.0;
  for (double x : w) sum += std::sqrt(x);
  CHECK(lemma0_bound(w, Exponent(0.5)) == doctest::Approx(sum * sum));
  CHECK(hp_norm(F, Exponent(0.5)) <= lemma0_bound(w, Exponent(0.5)));

  const std::vector<Atom<Rational>> single{atoms[1]};
  const std::vector<Rational> mu{Rational(3)};
  CHECK(hp_norm(atomic_build<Rational>(mu, single, 8, m), Exponent(0.5)) == doctest::Approx(3.0));
}
