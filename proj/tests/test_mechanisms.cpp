#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "facloc/evaluation.hpp"
#include "facloc/generators.hpp"
#include "facloc/instance.hpp"
#include "facloc/mechanisms.hpp"
#include "facloc/medians.hpp"
#include "facloc/rng.hpp"

using namespace facloc;

namespace {

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

Instance inst2(std::vector<std::pair<Vec, std::int64_t>> pts) {
  std::vector<Atom> atoms;
  for (auto& [p, m] : pts) atoms.push_back({std::move(p), m});
  return Instance(2, std::move(atoms));
}

}  // namespace

TEST_CASE("mechanism_name covers every kind") {
  CHECK(mechanism_name(MechanismKind::CWM) == "cwm");
  CHECK(mechanism_name(MechanismKind::RRCWM) == "rrcwm");
  CHECK(mechanism_name(MechanismKind::CMP) == "cmp");
  CHECK(mechanism_name(MechanismKind::RRCMP) == "rrcmp");
  CHECK(mechanism_name(MechanismKind::GRD_UNIFORM) == "grd-uniform");
  CHECK(mechanism_name(MechanismKind::GRD_PROPORTIONAL) == "grd-proportional");
}

TEST_CASE("MechanismSpec::validate enforces the prediction contract") {
  MechanismSpec s;
  s.kind = MechanismKind::CWM;
  CHECK_NOTHROW(s.validate(2));

  s.c = 0.5;  // weight without a prediction arm
  CHECK_THROWS_AS(s.validate(2), std::invalid_argument);

  s = MechanismSpec{};
  s.kind = MechanismKind::CMP;
  CHECK_THROWS_AS(s.validate(2), std::invalid_argument);  // missing prediction

  s.prediction = v2(0, 0);
  s.c = 0.3;
  CHECK_NOTHROW(s.validate(2));
  CHECK_THROWS_AS(s.validate(3), std::invalid_argument);  // dimension mismatch

  s.c = 1.0;  // weight must stay below one
  CHECK_THROWS_AS(s.validate(2), std::invalid_argument);
  s.c = -0.1;
  CHECK_THROWS_AS(s.validate(2), std::invalid_argument);

  s = MechanismSpec{};
  s.kind = MechanismKind::RRCWM;
  s.prediction = v2(0, 0);  // prediction on a non-prediction arm
  CHECK_THROWS_AS(s.validate(2), std::invalid_argument);
}

TEST_CASE("augment_with_prediction appends floor(c n) copies") {
  const Instance P = inst2({{v2(0, 0), 3}, {v2(10, 0), 2}});  // n = 5
  const Vec ghat = v2(4, 4);

  const Instance A = augment_with_prediction(P, ghat, 0.5);  // floor(2.5) = 2
  CHECK(A.n() == 7);
  CHECK(A.atoms().size() == 3);
  CHECK(A.atoms().back().mult == 2);
  CHECK((A.atoms().back().point - ghat).norm() == 0.0);
  CHECK(A.atoms()[0].mult == 3);

  // too small to add a single copy: the instance comes back unchanged
  const Instance B = augment_with_prediction(P, ghat, 0.1);
  CHECK(B.n() == 5);
  CHECK(B.atoms().size() == 2);
}

TEST_CASE("run_cwm reproduces the two-cluster fixed point") {
  const Instance P = gen_fig1_2d(3);
  const Outcome o = run_cwm(P);
  CHECK((o.facility - v2(0, 0)).norm() == 0.0);
  CHECK(scost(P, o.facility) == doctest::Approx(6.0));
  CHECK(!o.randomness.theta.has_value());
  CHECK(!o.randomness.dictator.has_value());
}

TEST_CASE("run_cmp with a heavy prediction moves the median onto it") {
  const Instance P = inst2({{v2(0, 0), 3}, {v2(10, 0), 2}});
  const Outcome o = run_cmp(P, v2(10, 0), 0.9);  // 4 copies, rank shifts right
  CHECK((o.facility - v2(10, 0)).norm() == 0.0);

  // a prediction equal to the median leaves the outcome unchanged at any c
  const Vec m = cwmed(P);
  for (double c : {0.0, 0.3, 0.7, 0.99}) {
    const Outcome p = run_cmp(P, m, c);
    CHECK((p.facility - m).norm() == 0.0);
  }
}

TEST_CASE("run_rrcwm draws a quarter-turn angle and replays exactly") {
  const Instance P = inst2({{v2(1, 0), 5}, {v2(0, 1), 5}, {v2(0, 0), 1}});
  RandomStream a(17), b(17);
  const Outcome oa = run_rrcwm(P, a);
  const Outcome ob = run_rrcwm(P, b);
  REQUIRE(oa.randomness.theta.has_value());
  CHECK(*oa.randomness.theta >= 0.0);
  CHECK(*oa.randomness.theta < kHalfPi);
  CHECK(*oa.randomness.theta == *ob.randomness.theta);
  CHECK((oa.facility - ob.facility).norm() == 0.0);

  MechanismSpec spec;
  spec.kind = MechanismKind::RRCWM;
  const Vec replayed = replay(P, spec, oa.randomness);
  CHECK((replayed - oa.facility).norm() == 0.0);
}

TEST_CASE("run_rrcwm above the plane records the full rotation") {
  const Instance P = gen_clusters_outlier_hd(5);
  RandomStream rng(23);
  const Outcome o = run_rrcwm(P, rng);
  REQUIRE(o.randomness.rotation.has_value());
  CHECK(!o.randomness.theta.has_value());
  CHECK(o.randomness.rotation->rows() == 5);

  MechanismSpec spec;
  spec.kind = MechanismKind::RRCWM;
  CHECK((replay(P, spec, o.randomness) - o.facility).norm() == 0.0);
}

TEST_CASE("run_rrcwm_fixed at the identity reduces to the plain median") {
  const Instance P = inst2({{v2(0, 0), 1}, {v2(2, 1), 1}, {v2(5, -3), 1}});
  const Outcome o = run_rrcwm_fixed(P, rotation_from_angle(0.0));
  CHECK((o.facility - cwmed(P)).norm() == 0.0);
}

TEST_CASE("run_rrcmp replays bitwise") {
  const Instance P = inst2({{v2(0, 0), 4}, {v2(3, 1), 3}, {v2(-1, 2), 2}});
  RandomStream rng(99);
  const Vec ghat = v2(1, 1);
  const Outcome o = run_rrcmp(P, ghat, 0.4, rng);
  MechanismSpec spec;
  spec.kind = MechanismKind::RRCMP;
  spec.c = 0.4;
  spec.prediction = ghat;
  CHECK((replay(P, spec, o.randomness) - o.facility).norm() == 0.0);
}

TEST_CASE("run_grd uniform picks each profile position at its multiplicity rate") {
  const Instance P = inst2({{v2(0, 0), 2}, {v2(1, 0), 1}, {v2(0, 1), 2}});  // n = 5
  RandomStream rng(7);
  std::map<std::size_t, std::int64_t> hits;
  const int trials = 50000;
  for (int t = 0; t < trials; ++t) {
    const Outcome o = run_grd(P, false, rng);
    REQUIRE(o.randomness.dictator.has_value());
    const std::int64_t i = *o.randomness.dictator;
    REQUIRE(i >= 0);
    REQUIRE(i < P.n());
    const std::size_t a = P.atom_of_report(i);
    CHECK((o.facility - P.atoms()[a].point).norm() == 0.0);
    ++hits[a];
  }
  // atom probabilities 2/5, 1/5, 2/5
  CHECK(std::abs(hits[0] / double(trials) - 0.4) < 0.01);
  CHECK(std::abs(hits[1] / double(trials) - 0.2) < 0.01);
  CHECK(std::abs(hits[2] / double(trials) - 0.4) < 0.01);
}

TEST_CASE("run_grd proportional on two agents alternates deterministically") {
  // proposer 0 weights agent 1 by its distance and vice versa, so the winner
  // is always the other report
  const Instance P = inst2({{v2(0, 0), 1}, {v2(1, 0), 1}});
  RandomStream rng(13);
  int zero = 0, one = 0;
  for (int t = 0; t < 20000; ++t) {
    const Outcome o = run_grd(P, true, rng);
    REQUIRE(o.randomness.proposer.has_value());
    REQUIRE(o.randomness.dictator.has_value());
    CHECK(*o.randomness.proposer != *o.randomness.dictator);
    if (*o.randomness.dictator == 0)
      ++zero;
    else
      ++one;
  }
  CHECK(std::abs(zero - one) < 1000);

  // unanimity: all distances vanish and the rule returns the common report
  const Instance U = inst2({{v2(2, 2), 4}});
  const Outcome u = run_grd(U, true, rng);
  CHECK((u.facility - v2(2, 2)).norm() == 0.0);
}

TEST_CASE("grd expected cost: exact lottery values on small instances") {
  const Instance P = inst2({{v2(0, 0), 1}, {v2(1, 0), 1}});
  CHECK(grd_uniform_expected_cost(P) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(grd_proportional_expected_cost(P) == doctest::Approx(1.0).epsilon(1e-12));

  // uniform lottery over the unit circle: cost of each dictator is equal, so
  // the expectation equals any single dictator cost
  const Instance C = gen_unit_circle(6);
  const double single = scost(C, C.atoms()[0].point);
  CHECK(grd_uniform_expected_cost(C) == doctest::Approx(single).epsilon(1e-12));

  // Monte Carlo agreement for the proportional rule on an asymmetric instance
  const Instance A = inst2({{v2(0, 0), 2}, {v2(4, 0), 1}, {v2(0, 3), 1}});
  const double exact = grd_proportional_expected_cost(A);
  RandomStream rng(3);
  double acc = 0.0;
  const int trials = 40000;
  for (int t = 0; t < trials; ++t) acc += scost(A, run_grd(A, true, rng).facility);
  CHECK(acc / trials == doctest::Approx(exact).epsilon(0.02));
}

TEST_CASE("grd_expected_cost validates its weight vector") {
  const Instance P = inst2({{v2(0, 0), 1}, {v2(1, 0), 1}});
  std::vector<double> ok{0.5, 0.5};
  CHECK(grd_expected_cost(P, ok) == doctest::Approx(1.0));
  std::vector<double> bad_sum{0.6, 0.6};
  CHECK_THROWS_AS(grd_expected_cost(P, bad_sum), std::invalid_argument);
  std::vector<double> neg{1.5, -0.5};
  CHECK_THROWS_AS(grd_expected_cost(P, neg), std::invalid_argument);
  std::vector<double> short_w{1.0};
  CHECK_THROWS_AS(grd_expected_cost(P, short_w), std::invalid_argument);
}

TEST_CASE("mac_bound pinches between the linear and rotation bounds") {
  CHECK(mac_bound(0.0) == doctest::Approx(1.0));
  CHECK(mac_bound(0.01) == doctest::Approx(1.0408163265306123).epsilon(1e-12));
  CHECK(mac_bound(0.25) == doctest::Approx(kFourOverPi).epsilon(1e-12));
  CHECK(mac_bound(0.49) == doctest::Approx(kFourOverPi).epsilon(1e-12));
  CHECK_THROWS_AS(mac_bound(0.5), std::invalid_argument);
  CHECK_THROWS_AS(mac_bound(-0.01), std::invalid_argument);
}

TEST_CASE("run_mechanism dispatches on the MechanismSpec") {
  const Instance P = inst2({{v2(0, 0), 2}, {v2(3, 0), 1}});
  RandomStream rng(1);

  MechanismSpec s;
  s.kind = MechanismKind::CWM;
  CHECK((run_mechanism(P, s, rng).facility - cwmed(P)).norm() == 0.0);

  s.kind = MechanismKind::CMP;  // missing prediction must be rejected
  CHECK_THROWS_AS(run_mechanism(P, s, rng), std::invalid_argument);

  s.prediction = v2(3, 0);
  s.c = 0.5;
  CHECK_NOTHROW(run_mechanism(P, s, rng));
}

TEST_CASE("sp_probe finds the classic manipulation of the mean") {
  const Instance P = inst2({{v2(0, 0), 1}, {v2(4, 0), 1}});
  SpProbeConfig cfg;
  cfg.deviations_per_agent = 128;
  RandomStream rng(2024);
  const auto viol = sp_probe(
      P, [](const Instance& Q) { return Q.mean(); }, cfg, rng);
  REQUIRE(viol.has_value());
  CHECK(viol->gain > 0.1);
}

TEST_CASE("sp_probe clears the coordinate-wise median on random instances") {
  RandomStream rng(5);
  SpProbeConfig cfg;
  cfg.deviations_per_agent = 48;
  for (int rep = 0; rep < 8; ++rep) {
    RandomStream gen_rng = rng.substream(rep);
    const Instance P = gen_random(3 + 2 * (rep % 4), 2, RandomCloud::GAUSSIAN, gen_rng);
    RandomStream probe_rng = rng.substream(100 + rep);
    const auto viol = sp_probe(
        P, [](const Instance& Q) { return cwmed(Q); }, cfg, probe_rng);
    CHECK(!viol.has_value());
  }
}

TEST_CASE("sp_probe clears a fixed-rotation median and a fixed dictator") {
  RandomStream rng(6);
  SpProbeConfig cfg;
  cfg.deviations_per_agent = 48;
  const Rotation R = sample_haar_rotation(2, rng);
  for (int rep = 0; rep < 6; ++rep) {
    RandomStream gen_rng = rng.substream(rep);
    const Instance P = gen_random(5, 2, RandomCloud::UNIFORM_BOX, gen_rng);
    RandomStream r1 = rng.substream(200 + rep);
    CHECK(!sp_probe(P, [&R](const Instance& Q) { return rcwmed(Q, R); }, cfg, r1).has_value());
    RandomStream r2 = rng.substream(300 + rep);
    const std::int64_t fixed = rep % P.n();
    CHECK(!sp_probe(
               P, [fixed](const Instance& Q) { return Q.report(fixed).point; }, cfg, r2)
               .has_value());
  }
}
