#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "facloc/instance.hpp"
#include "facloc/medians.hpp"
#include "facloc/rng.hpp"

namespace facloc {

enum class MechanismKind {
  CWM,               // coordinate-wise median
  RRCWM,             // cwm under a uniformly random rotation
  CMP,               // cwm with appended prediction copies
  RRCMP,             // rotated cwm with appended prediction copies
  GRD_UNIFORM,       // random report, uniform over agents
  GRD_PROPORTIONAL,  // random report, second pick weighted by distance
};

std::string mechanism_name(MechanismKind k);

struct MechanismSpec {
  MechanismKind kind = MechanismKind::CWM;
  // Prediction weight in [0, 1); floor(c * n) copies of the prediction are
  // appended. Only the CMP arms carry these two fields.
  double c = 0.0;
  std::optional<Vec> prediction;

  void validate(int dim) const;
};

// Coin tosses recorded at run time; any one of them replays the facility
// exactly through replay().
struct Realized {
  std::optional<double> theta;              // planar rotation draw
  std::optional<Eigen::MatrixXd> rotation;  // Haar draw above the plane
  std::optional<std::int64_t> dictator;     // profile position whose report won
  std::optional<std::int64_t> proposer;     // first pick of the proportional rule
};

struct Outcome {
  Vec facility;
  Realized randomness;
};

// P with floor(c * n) copies of the prediction appended; c so small that no
// copy is added returns P unchanged.
Instance augment_with_prediction(const Instance& P, const Vec& prediction, double c);

Outcome run_cwm(const Instance& P);
Outcome run_rrcwm(const Instance& P, RandomStream& rng);
Outcome run_rrcwm_fixed(const Instance& P, const Rotation& R);
Outcome run_cmp(const Instance& P, const Vec& prediction, double c);
Outcome run_rrcmp(const Instance& P, const Vec& prediction, double c, RandomStream& rng);
Outcome run_grd(const Instance& P, bool proportional, RandomStream& rng);

Outcome run_mechanism(const Instance& P, const MechanismSpec& spec, RandomStream& rng);

// Deterministic re-execution from recorded coin tosses.
Vec replay(const Instance& P, const MechanismSpec& spec, const Realized& r);

// Exact expected cost of a dictator lottery: weights[i] is the probability of
// profile position i in [0, n). Weights must sum to one.
double grd_expected_cost(const Instance& P, std::span<const double> weights, double q = 2.0);
double grd_uniform_expected_cost(const Instance& P, double q = 2.0);
double grd_proportional_expected_cost(const Instance& P, double q = 2.0);

// min{1 + 4 delta / (1 - 2 delta), 4/pi} for delta in [0, 0.5).
double mac_bound(double delta);

// Empirical strategyproofness probe. For every agent it tries
// deviations_per_agent alternative reports: half uniform in a box three
// spreads wide, half along the line through the agent and the truthful
// facility. A violation is a deviation that brings the facility closer to the
// agent's true location by more than tol.
struct SpProbeConfig {
  int deviations_per_agent = 64;
  double tol = 1e-9;
};

struct SpViolation {
  std::int64_t agent = 0;
  Vec deviation;
  double gain = 0.0;  // truthful distance minus deviated distance
};

std::optional<SpViolation> sp_probe(const Instance& P,
                                    const std::function<Vec(const Instance&)>& mechanism,
                                    const SpProbeConfig& cfg, RandomStream& rng);

}  // namespace facloc
