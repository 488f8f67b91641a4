#include "tfid/error.hpp"
#include "tfid/experiments.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <random>
#include <sstream>

using namespace tfid;

namespace {

IntGenerator int_gen(std::initializer_list<std::int64_t> col_major) {
  IntGenerator g;
  auto it = col_major.begin();
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 4; ++i) g(i, j) = *it++;
  return g;
}

}  // namespace

TEST_CASE("discretize") {
  const auto l = Lattice4::from_entries(2, 0, 0, 0, 0, 0.25, 0, 0);
  const DiscreteLattice d = discretize(l, 64);
  CHECK(d.gen(0, 0) == 16);
  CHECK(d.gen(1, 1) == 2);
  CHECK(d.continuous().gen.isApprox(l.gen));
  // 0.01 * 8 rounds to zero and the rank collapses.
  CHECK_THROWS_AS(discretize(Lattice4::from_entries(1, 0, 0, 0, 0, 0.01, 0, 0), 64),
                  DegenerateDiscretization);
  CHECK_THROWS_AS(discretize(l, 0), InvalidParams);
}

TEST_CASE("subgroup enumeration") {
  DiscreteLattice d{int_gen({8, 0, 0, 0, 0, 16, 0, 0}), 32};
  CHECK(subgroup_size(d) == 4 * 2);
  const LatticePoints all = enumerate_points(d, 4, 100);
  CHECK_FALSE(all.truncated);
  CHECK(all.points.size() == 8);

  // Columns sharing points: (4,0,0,0) and (8,0,0,0) only generate 4Z_16.
  DiscreteLattice shared{int_gen({4, 0, 0, 0, 8, 0, 0, 0}), 16};
  CHECK(subgroup_size(shared) == 4);

  const LatticePoints box = enumerate_points(d, 1, 4);
  CHECK(box.truncated);
  CHECK(box.points.size() == 6);  // -16 and 16 coincide mod 32
  for (const auto& p : box.points) CHECK((p == p.reduced(32)));

  const LatticePoints wrapped = enumerate_points(d, 4, 4);
  CHECK(wrapped.truncated);
  CHECK(wrapped.points.size() == 8);  // the box covers the whole subgroup
}

TEST_CASE("density_implication_exact") {
  // Dense but with |det tilde| < 1.
  CHECK(density_implication_exact(int_gen({1, 0, 0, 0, 0, 0, 1, 0}), 4));
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::int64_t> u(-20, 20);
  int dense = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    IntGenerator g;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 2; ++j) g(i, j) = u(rng);
    const std::int64_t scale_sq = 64;
    CHECK(density_implication_exact(g, scale_sq));
    const Lattice4 cont(g.cast<double>() / 8.0);
    if (cont.rank() == 2 && two_beurling_density(cont) > std::sqrt(2.0)) ++dense;
  }
  CHECK(dense > 0);
}

TEST_CASE("identifier catalog") {
  const auto catalog = identifier_catalog(64, 7);
  CHECK(catalog.size() == divisors(64).size() + 5);
  for (const auto& id : catalog) CHECK(id.signal.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(catalog.front().name == "delta_train(1)");
  CHECK(catalog.back().name == "random_unit(10)");
  CHECK(unit_gauss_h0(32).hs_norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("run_thm51") {
  for (const std::int64_t a : {8, 1, 64, 2}) {
    const Thm51Outcome out = run_thm51(64, a);
    CHECK(out.identity_deviation < 1e-10);
    CHECK(out.report.recovery_error < 1e-10);
    CHECK(out.report.condition == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(out.report.spreading.lower == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(out.report.spreading.upper == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(out.report.response.lower == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(out.analysis_bounds.lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(out.analysis_bounds.upper == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(out.report.num_points == 64);
  }
  CHECK_THROWS_AS(run_thm51(64, 7), NotADivisor);
  CHECK_THROWS_AS(run_thm51(64, 0), NotADivisor);
}

TEST_CASE("run_gaussian_example") {
  ExperimentConfig config;
  config.L = 64;
  const GaussianOutcome in_region = run_gaussian_example(1, 2.0, 2.0, config);
  CHECK(in_region.sufficient_region);
  CHECK(in_region.caption_region);
  CHECK_FALSE(in_region.outside_riesz_regime);
  CHECK(in_region.record.identifiable);
  CHECK(in_region.record.density_2 ==
        doctest::Approx(two_beurling_density(in_region.record.generator)).epsilon(1e-12));

  const GaussianOutcome small = run_gaussian_example(1, 0.5, 0.5, config);
  CHECK_FALSE(small.sufficient_region);

  // Between the two hyperbolas.
  const GaussianOutcome between = run_gaussian_example(1, 1.5, 1.2, config);
  CHECK(between.sufficient_region);
  CHECK_FALSE(between.caption_region);

  // sqrt(2) beta / alpha = sqrt(2) / 2 is irrational.
  const GaussianOutcome irrational = run_gaussian_example(2, 2.0, 1.0, config);
  CHECK(irrational.outside_riesz_regime);
  CHECK_FALSE(irrational.sufficient_region);
  // sqrt(2) beta / alpha = 1.
  const GaussianOutcome rational = run_gaussian_example(2, 2.0, std::sqrt(2.0), config);
  CHECK(rational.sufficient_region);

  CHECK_THROWS_AS(run_gaussian_example(3, 2.0, 2.0, config), InvalidParams);
  CHECK_THROWS_AS(run_gaussian_example(1, -2.0, 2.0, config), InvalidParams);
}

TEST_CASE("run_notident") {
  ExperimentConfig config;
  config.L = 64;
  const NotIdentOutcome out = run_notident(2.0, 0.25, config);
  CHECK(out.density_formula == doctest::Approx(1.0 / (0.25 * std::sqrt(4.0625))).epsilon(1e-12));
  CHECK(out.record.density_2 == doctest::Approx(out.density_formula).epsilon(1e-12));
  CHECK_FALSE(out.record.identifiable);
  CHECK(out.all_below_tol);
  CHECK_THROWS_AS(run_notident(1.0, 1.0, config), InvalidParams);
  CHECK_THROWS_AS(run_notident(0.0, 0.5, config), InvalidParams);
}

TEST_CASE("density sweep") {
  ExperimentConfig config;
  config.L = 32;
  config.samples = 6;
  config.seed = 3;
  const SweepResult first = run_density_sweep(config);
  const SweepResult second = run_density_sweep(config);
  CHECK(first.records.size() == 6);
  CHECK(first.violations == 0);
  CHECK(first.arithmetic_failures == 0);

  std::ostringstream a, b;
  write_csv(a, first.records);
  write_csv(b, second.records);
  CHECK(a.str() == b.str());

  for (const auto& r : first.records) {
    CHECK(r.density_2 == doctest::Approx(two_beurling_density(r.generator)).epsilon(1e-12));
    CHECK(r.spreading_lower >= config.tol);
    if (r.identifiable) CHECK(r.density_2 <= std::sqrt(2.0) * 1.05);
  }

  std::istringstream lines(a.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == kCsvHeader);

  std::ostringstream js;
  write_json(js, first.records);
  const auto parsed = nlohmann::json::parse(js.str());
  REQUIRE(parsed.size() == first.records.size());
  CHECK(parsed[0]["L"] == 32);
  CHECK(parsed[0].contains("riesz_response_lo"));
  CHECK(parsed[0]["discrete_generator"].size() == 8);

  config.samples = 0;
  const SweepResult empty = run_density_sweep(config);
  std::ostringstream e;
  write_csv(e, empty.records);
  CHECK(e.str() == std::string(kCsvHeader) + "\n");

  CHECK_THROWS_AS(save_records("/nonexistent/dir/out.csv", "csv", first.records), Error);
}
