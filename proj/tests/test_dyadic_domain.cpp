#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "dyadika/dyadic_domain.hpp"
#include "oracles.hpp"

using namespace dyadika;

TEST_CASE("resolution bounds") {
  CHECK(Resolution().bits() == 12);
  CHECK(Resolution(3).cosets() == 8);
  CHECK_THROWS(Resolution(0));
  CHECK_THROWS(Resolution(25));
}

TEST_CASE("coordinate words are bit reversals") {
  for (int M = 1; M <= 10; ++M) {
    for (std::uint32_t i = 0; i < (1u << M); ++i) {
      const auto w = coordinate_word(i, M);
      for (int k = 0; k < M; ++k) REQUIRE(static_cast<int>((w >> k) & 1u) == oracle::coord(i, k, M));
      REQUIRE(coset_from_word(w, M) == i);
    }
  }
}

TEST_CASE("basis points") {
  const Resolution m(3);
  CHECK(basis(0, m).coset_index() == 4);
  CHECK(basis(1, m).coset_index() == 2);
  CHECK(basis(2, m).coset_index() == 1);
  CHECK(basis(0, m).coords() == std::vector<std::uint8_t>{1, 0, 0});
  CHECK_THROWS(basis(3, m));
}

TEST_CASE("group addition") {
  const Resolution m(5);
  for (std::uint32_t a = 0; a < 32; ++a) {
    const Point x(m, a);
    REQUIRE(add(x, x) == Point::zero(m));
    REQUIRE(add(x, Point::zero(m)) == x);
  }
  const auto e01 = add(basis(0, m), basis(1, m));
  CHECK(e01.coords() == std::vector<std::uint8_t>{1, 1, 0, 0, 0});
  CHECK_THROWS(add(Point::zero(m), Point::zero(Resolution(4))));
  const std::vector<std::uint8_t> c{0, 1, 1};
  CHECK(Point::from_coords(c).coset_index() == 3);
}

TEST_CASE("intervals") {
  const Resolution m(6);
  const auto G = interval(0, basis(2, m));
  CHECK(G.begin() == 0);
  CHECK(G.size() == 64);
  CHECK(G.measure() == 1.0);

  const auto single = interval(6, Point::zero(m));
  CHECK(single.size() == 1);
  CHECK(single.measure() == doctest::Approx(1.0 / 64));
  CHECK(single.measure_as<Rational>() == oracle::q(1, 64));

  const auto upper = interval(1, basis(0, m));
  CHECK(upper.begin() == 32);
  CHECK(upper.end() == 64);

  CHECK_THROWS(interval(7, Point::zero(m)));
}

TEST_CASE("interval membership matches the coordinate predicate") {
  const int M = 6;
  const Resolution m(M);
  for (int n = 0; n <= M; ++n) {
    for (std::uint32_t y = 0; y < 64; ++y) {
      const auto I = interval(n, Point(m, y));
      for (std::uint32_t x = 0; x < 64; ++x) {
        REQUIRE(I.contains_index(x) == oracle::in_interval(x, n, y, M));
        REQUIRE(I.contains(Point(m, x)) == oracle::in_interval(x, n, y, M));
      }
    }
  }
}

TEST_CASE("complement partition") {
  for (int M = 2; M <= 8; ++M) {
    const Resolution m(M);
    const auto regions = complement_partition(m);
    REQUIRE(regions.size() == static_cast<std::size_t>(M * (M - 1) / 2 + M));
    std::vector<int> hits(m.cosets(), 0);
    Rational total = 0;
    for (const auto& I : regions) {
      total += I.measure_as<Rational>();
      for (std::size_t i = I.begin(); i < I.end(); ++i) ++hits[i];
    }
    REQUIRE(total == 1 - Rational(1, static_cast<long>(m.cosets())));
    REQUIRE(hits[0] == 0);
    for (std::size_t i = 1; i < hits.size(); ++i) REQUIRE(hits[i] == 1);
  }
  const Resolution m2(2);
  const auto r2 = complement_partition(m2);
  REQUIRE(r2.size() == 3);
  CHECK(r2[0] == interval(2, add(basis(0, m2), basis(1, m2))));
  CHECK(r2[1] == interval(2, basis(0, m2)));
  CHECK(r2[2] == interval(2, basis(1, m2)));
  CHECK_THROWS(complement_partition(Resolution(1)));
}

TEST_CASE("lemma-4 regions") {
  const Resolution m(5);
  CHECK(lemma4_region(m, 1, 3) == interval(4, add(basis(1, m), basis(3, m))));
  CHECK(lemma4_region(m, 2, 5) == interval(5, basis(2, m)));
}

TEST_CASE("integration") {
  const Resolution m(6);
  CHECK(integrate(StepFunction<Rational>::constant(m, Rational(1))) == 1);
  const auto I1 = interval(1, Point::zero(m));
  CHECK(integrate(indicator<Rational>(I1), I1) == oracle::q(1, 2));
  for (int n = 0; n <= 6; ++n) {
    const auto d = StepFunction<Rational>::generate(m, [&](std::size_t i) {
      return Rational(interval(n, Point::zero(m)).contains_index(i) ? (1L << n) : 0L);
    });
    REQUIRE(integrate(d) == 1);
  }
}

TEST_CASE("translation permutes values and preserves the integral") {
  std::mt19937_64 rng(7);
  for (int M = 1; M <= 8; ++M) {
    const Resolution m(M);
    const auto f = StepFunction<Rational>::generate(m, [&](std::size_t) { return oracle::q(static_cast<long>(rng() % 19) - 9, 4); });
    for (std::uint32_t h = 0; h < m.cosets(); ++h) {
      const auto g = translate(f, Point(m, h));
      REQUIRE(integrate(g) == integrate(f));
      std::multiset<Rational> a(f.values().begin(), f.values().end());
      std::multiset<Rational> b(g.values().begin(), g.values().end());
      REQUIRE(a == b);
    }
  }
}

TEST_CASE("coset averaging matches the oracle") {
  std::mt19937_64 rng(11);
  const int M = 6;
  const Resolution m(M);
  std::vector<Rational> v(64);
  for (auto& x : v) x = oracle::q(static_cast<long>(rng() % 31) - 15, 3);
  const StepFunction<Rational> f(m, v);
  for (int level = 0; level <= M; ++level) {
    const auto got = coset_average(f, level);
    const auto want = oracle::coset_average(v, level, M);
    for (std::size_t i = 0; i < 64; ++i) REQUIRE(got[i] == want[i]);
  }
}

TEST_CASE("step function arithmetic") {
  const Resolution m(2);
  const StepFunction<Rational> f(m, {1, 2, 3, 4});
  const StepFunction<Rational> g(m, {4, 3, 2, 1});
  CHECK((f + g) == StepFunction<Rational>::constant(m, 5));
  CHECK((f * g)[1] == 6);
  CHECK((f / Rational(2))[0] == oracle::q(1, 2));
  CHECK(sup_abs(f - g) == 3);
  CHECK(max_abs_difference(f, g) == 3);
  CHECK_THROWS(StepFunction<Rational>(m, {1, 2}));
  CHECK(to_float(f)[3] == 4.0);
}
