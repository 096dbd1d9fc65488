#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "dyadika/verifier.hpp"
#include "oracles.hpp"

using namespace dyadika;

TEST_CASE("csv rendering quotes when needed") {
  Report r;
  r.command = "stats";
  r.columns = {"a", "b"};
  r.rows.push_back({{"a", 1}, {"b", "x,y"}});
  r.rows.push_back({{"a", 2.5}, {"b", "say \"hi\""}});
  CHECK(r.to_csv() == "a,b\n1,\"x,y\"\n2.5,\"say \"\"hi\"\"\"\n");
  CHECK(r.passed());
  r.failures.push_back("x");
  CHECK_FALSE(r.passed());
}

TEST_CASE("stats rows follow the index oracles") {
  RunConfig c;
  c.command = "stats";
  c.resolution = 6;
  const auto r = run_command(c);
  REQUIRE(r.rows.size() == 63);
  for (const auto& row : r.rows) {
    const auto n = row.at("n").get<std::uint64_t>();
    REQUIRE(row.at("variation").get<int>() == oracle::variation(n));
    REQUIRE(row.at("block_count").get<std::size_t>() == oracle::runs(n).size());
  }
  CHECK(r.to_csv().rfind("n,msb,lsb,span,variation,popcount,blocks,block_count\n", 0) == 0);
}

TEST_CASE("kernel suite degenerate resolution") {
  RunConfig c;
  c.command = "kernels";
  c.resolution = 1;
  const auto r = run_command(c);
  CHECK(r.passed());
  c.mode = ScalarMode::floating;
  c.resolution = 6;
  CHECK(run_command(c).passed());
}

TEST_CASE("lemma-3 sweep counts") {
  const auto s = lemma3_sweep(Resolution(6), 64);
  CHECK(s.n_checked == 63);
  CHECK(s.violations == 16);
  CHECK(s.violations_other == 0);
  CHECK(s.first_violation == 3u);
  // Only n = 3 mod 4, where n K_n vanishes on I_2(e_0 + e_1).
  const auto t = lemma3_sweep(Resolution(8), 4);
  CHECK(t.violations == 1);
  CHECK_THROWS(lemma3_sweep(Resolution(4), 17));
}

TEST_CASE("lemma constants at M = 6") {
  const auto c = lemma_constants(Resolution(6));
  CHECK(c.lemma4.constant == 0.5);
  CHECK(c.lemma5_c == doctest::Approx(112.0 / 33.0).epsilon(1e-14));
  CHECK(c.lemma5_argmax == 63);
  CHECK(c.kernel_doubling_c == doctest::Approx(65.0 / 33.0).epsilon(1e-14));
}

TEST_CASE("atom shapes") {
  const auto shapes = bound_atom_shapes(Resolution(6), 1, 4);
  REQUIRE(shapes.size() == 10);
  for (const auto& s : shapes) {
    const auto I = interval(s.level, Point(Resolution(6), s.anchor));
    REQUIRE(std::fabs(integrate(s.f)) < 1e-12);
    REQUIRE(sup_abs(s.f) == doctest::Approx(1.0));
    for (std::size_t i = 0; i < 64; ++i) {
      if (!I.contains_index(i)) REQUIRE(s.f[i] == 0.0);
    }
  }
}

TEST_CASE("bounds sweep is thread independent") {
  const std::vector<Exponent> ps{Exponent(0.25), Exponent(0.5)};
  const auto a = bounds_sweep(Resolution(5), ps, 3, 1);
  const auto b = bounds_sweep(Resolution(5), ps, 3, 4);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].max_ratio == b.rows[i].max_ratio);
  CHECK(a.max_ratio == b.max_ratio);
}

TEST_CASE("fixtures round trip") {
  const std::string path = "verifier_fixture_test.json";
  Fixtures f;
  f.set("lemmas", "x", 1.5);
  f.save(path);
  const auto g = Fixtures::load(path);
  CHECK(g.get("lemmas", "x") == 1.5);
  CHECK_FALSE(g.get("lemmas", "y").has_value());
  CHECK_FALSE(Fixtures::load("missing_fixture_file.json").get("lemmas", "x").has_value());
  std::remove(path.c_str());
}

TEST_CASE("usage errors") {
  RunConfig c;
  c.command = "nope";
  CHECK_THROWS_AS(run_command(c), std::invalid_argument);
  c.command = "counterexample";
  c.regime = "all";
  c.format = OutputFormat::csv;
  CHECK_THROWS_AS(run_command(c), std::invalid_argument);
  c.format = OutputFormat::json;
  c.plan_path = "missing_plan.json";
  CHECK_THROWS_AS(run_command(c), std::invalid_argument);
}

TEST_CASE("seeded random is reproducible") {
  SeededRandom a(42);
  SeededRandom b(42);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    REQUIRE(u == b.uniform());
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
  SeededRandom c(5489);
  CHECK(c.next() == 14514284786278117030ull);
}
