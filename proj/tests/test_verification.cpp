#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "facloc/generators.hpp"
#include "facloc/rng.hpp"
#include "facloc/verification.hpp"

using namespace facloc;

namespace {

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

bool all_passed(const std::vector<CheckReport>& reps) {
  for (const CheckReport& r : reps)
    if (!r.passed) return false;
  return !reps.empty();
}

}  // namespace

TEST_CASE("rotated l1 mean matches (4/pi) times the Euclidean norm") {
  for (auto [x, y] : {std::pair{3.0, 4.0}, {1.0, 0.0}, {-2.0, 5.0}, {1e-3, 2e-3}}) {
    const CheckReport r = check_rotated_l1(v2(x, y));
    CHECK(r.passed);
    CHECK(r.expected == doctest::Approx(kFourOverPi * std::hypot(x, y)).epsilon(1e-12));
  }
  // the tolerance is absolute, so a large vector needs a finer grid
  CHECK(check_rotated_l1(v2(-7e5, 3e5), 16384).passed);
  CHECK(check_rotated_l1(v2(0.0, 0.0)).passed);
}

TEST_CASE("half-angle cotangent identity for sine sums") {
  for (std::int64_t n : {2, 3, 4, 100, 4096, 100000}) {
    const CheckReport r = check_trig_identity(n);
    CHECK(r.passed);
    CHECK(r.measured == doctest::Approx(1.0 / std::tan(kPi / (2.0 * n))).epsilon(1e-9));
  }
}

TEST_CASE("sphere even moments follow the product formula") {
  CHECK(sphere_even_moment(3, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(sphere_even_moment(3, 2) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(sphere_even_moment(10, 1) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(sphere_even_moment(10, 4) == doctest::Approx(0.00390625).epsilon(1e-12));
  CHECK(sphere_even_moment(2, 1) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("sphere distance series and its truncation budget") {
  // d = 10: sqrt(2) (1 - 1/80 - 5 c4/128 - 21 c6/1024) with the moment values
  const double e2 = 0.1, e4 = 0.025, e6 = 15.0 / 1680.0;
  const double expect = std::sqrt(2.0) * (1.0 - e2 / 8.0 - 5.0 * e4 / 128.0 - 21.0 * e6 / 1024.0);
  CHECK(sphere_distance_series(10) == doctest::Approx(expect).epsilon(1e-12));

  for (int d : {2, 5, 10, 50, 200}) {
    const double budget = sphere_distance_series_budget(d);
    CHECK(budget > 0.0);
    CHECK(budget < 0.05);  // tiny already at d = 2, shrinking with d
    CHECK(sphere_distance_series(d) > 1.0);
    CHECK(sphere_distance_series(d) < std::sqrt(2.0));
  }
  CHECK(sphere_distance_series_budget(50) < sphere_distance_series_budget(5));
}

TEST_CASE("sampled sphere moments and distances match the formulas") {
  RandomStream rng(404);
  CHECK(all_passed(check_sphere_moments(3, 2, 20000, rng)));
  CHECK(all_passed(check_sphere_moments(7, 3, 20000, rng)));
  CHECK(check_sphere_distance(2, 50000, rng).passed);
  CHECK(check_sphere_distance(25, 50000, rng).passed);
}

TEST_CASE("insertion robustness of the Euclidean median holds on random clouds") {
  RandomStream rng(808);
  const std::vector<double> cs{0.2, 0.4};
  const auto reps = check_insertion_robustness(40, cs, rng);
  REQUIRE(reps.size() == cs.size());
  CHECK(all_passed(reps));
}

TEST_CASE("order-statistic median is exactly 1-Lipschitz in the sup norm") {
  RandomStream rng(99);
  const CheckReport r = check_median_lipschitz(20000, rng);
  CHECK(r.passed);
  CHECK(r.measured <= 0.0);
  CHECK(r.tolerance == 0.0);
}

TEST_CASE("the worked three-point example: location, cost, and ordering") {
  const auto reps = check_projmed_example();
  REQUIRE(reps.size() == 4);
  CHECK(all_passed(reps));
  // the projection median is strictly cheaper than the rotation lottery here
  CHECK(reps[3].measured > 0.05);
}

TEST_CASE("floor table lookup: calibrated floors with the pinned high-d minimum") {
  const HdFloors floors = HdFloors::load_default();
  REQUIRE(!floors.floors.empty());
  CHECK(floors.floor_for(16) == doctest::Approx(1.15));
  CHECK(floors.floor_for(64) == doctest::Approx(1.21));
  CHECK(floors.floor_for(256) == doctest::Approx(1.26));
  // dimensions missing from the table fall back to the pinned defaults
  CHECK(floors.floor_for(128) == doctest::Approx(1.2));
  CHECK(floors.floor_for(8) == doctest::Approx(1.0));
}

TEST_CASE("high-dimensional ratio floors certify at small sample counts") {
  RandomStream rng(0xC8);
  const std::vector<int> ds{16, 64};
  const auto reps = check_hd_lower_bound(ds, 300, rng, HdFloors::load_default(), 2);
  CHECK(all_passed(reps));
  bool saw_monotone = false;
  for (const CheckReport& r : reps)
    if (r.name == "hd-ratio-monotone") saw_monotone = true;
  CHECK(saw_monotone);
}

TEST_CASE("random sphere dictator cost clears the series floor") {
  RandomStream rng(515);
  const CheckReport r = check_grd_sphere_floor(5, 500, rng);
  CHECK(r.passed);
  CHECK(r.measured > 1.0);
  CHECK(r.measured < std::sqrt(2.0) + 0.1);
}

TEST_CASE("all_report_costs equals direct evaluation") {
  RandomStream rng(21);
  Instance P = gen_random(17, 3, RandomCloud::GAUSSIAN, rng);
  std::vector<Atom> atoms = P.atoms();
  atoms[2].mult = 4;  // exercise the multiplicity weighting
  const Instance Q(3, std::move(atoms));
  const auto costs = all_report_costs(Q);
  REQUIRE(costs.size() == Q.atoms().size());
  for (std::size_t i = 0; i < costs.size(); ++i)
    CHECK(costs[i] == doctest::Approx(scost(Q, Q.atoms()[i].point)).epsilon(1e-9));
}

TEST_CASE("check suites pass end to end") {
  const auto lemmas = run_check_suite(CheckSuite::LEMMAS, 3, 2);
  CHECK(all_passed(lemmas));
  const auto sp = run_check_suite(CheckSuite::SP, 3, 1);
  CHECK(all_passed(sp));
  REQUIRE(sp.size() == 5);

  const auto all = run_check_suite(CheckSuite::ALL, 12, 2);
  CHECK(all_passed(all));
  CHECK(all.size() > lemmas.size() + sp.size());
}
