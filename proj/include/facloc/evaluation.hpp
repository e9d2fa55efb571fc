#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "facloc/instance.hpp"
#include "facloc/mechanisms.hpp"

namespace facloc {

// Raised when the optimum solver fails to converge; the CLI maps it to its
// own exit code so scripted sweeps can tell it apart from a failed check.
struct OptNonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Social cost: multiplicity-weighted sum of ell_q distances to the facility.
double scost(const Instance& P, const Vec& facility, double q = 2.0);

struct EvalConfig {
  std::uint64_t seed = 0;
  std::int64_t mc_samples = 2000;  // >= 2
  int quad_panels = 20000;         // even, >= 2
  double opt_tol = 1e-10;
  double q = 2.0;

  void validate() const;
};

enum class EstimateMethod { QUADRATURE, MONTE_CARLO, EXACT };

std::string method_name(EstimateMethod m);

struct OptResult {
  double value = 0.0;
  Vec point;
  bool converged = false;
};

// Best social cost over solver output and any caller-supplied certificate
// points. Certificates are evaluated directly, so the returned value is
// always a valid upper bound on the true optimum; for ratio lower-bound
// checks that is the safe direction.
OptResult opt_value(const Instance& P, double q, const EvalConfig& cfg,
                    const std::vector<Vec>& certificates = {});

struct CostEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n = 0;  // panels or samples
  EstimateMethod method = EstimateMethod::EXACT;
};

// Expected cost of a rotation-randomized arm in the plane by composite
// Simpson quadrature of the cost over the angle in [0, pi/2]. Deterministic;
// panels evaluate in parallel and reduce in a fixed tree order.
CostEstimate expected_cost_quadrature_2d(const Instance& P, const MechanismSpec& spec,
                                         const EvalConfig& cfg, int workers = 1);

// Expected cost by Monte Carlo over coin tosses; sample i always uses
// substream i of the master seed, so the estimate is independent of worker
// count and execution order.
CostEstimate expected_cost_mc(const Instance& P, const MechanismSpec& spec,
                              const EvalConfig& cfg, int workers = 1);

// Exact expected cost for arms whose lottery is enumerable (deterministic
// arms and the dictator lotteries).
CostEstimate expected_cost_exact(const Instance& P, const MechanismSpec& spec,
                                 const EvalConfig& cfg);

struct RatioEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  double ci_lo = 0.0;  // 95% normal interval
  double ci_hi = 0.0;
  EstimateMethod method = EstimateMethod::EXACT;
  std::int64_t n = 0;
  double opt = 0.0;
  Vec opt_certificate;
};

// Expected cost over OPT. Default method selection: deterministic and
// dictator arms exactly, planar rotation arms by quadrature, the rest by
// Monte Carlo; an explicit method overrides it where applicable. A zero OPT
// with zero expected cost reports ratio 1; a zero OPT with positive cost is
// an error.
RatioEstimate ratio(const Instance& P, const MechanismSpec& spec, const EvalConfig& cfg,
                    const std::vector<Vec>& opt_certificates = {}, int workers = 1,
                    std::optional<EstimateMethod> method = std::nullopt);

// min of the four prediction-tradeoff cost bounds at prediction weight c and
// normalized prediction error eta.
double rrcmp_bound(double c, double eta);

struct TradeoffPoint {
  double c = 0.0;
  double eta = 0.0;
  RatioEstimate measured;
  double bound = 0.0;
  bool within_bound = false;  // measured.mean <= bound + 3 se + 0.01
};

// Measures the rotated prediction arm across a (c, eta) grid. The prediction
// is g + eta * (OPT/n) * direction with g the Euclidean 1-median, so eta is
// exactly the normalized prediction error.
std::vector<TradeoffPoint> consistency_robustness_sweep(const Instance& P,
                                                        std::span<const double> cs,
                                                        std::span<const double> etas,
                                                        const EvalConfig& cfg,
                                                        const Vec* direction = nullptr,
                                                        int workers = 1);

struct GrdFloorRow {
  std::int64_t n = 0;
  double exact_cost = 0.0;   // expected dictator cost, computed from distances
  double cot_formula = 0.0;  // 2 cot(pi / 2n)
  double opt = 0.0;
  double ratio = 0.0;
  double floor = 0.0;  // 4/pi - 3/n
  bool ok = false;
};

// Uniform dictator on the n-gon: exact ratio against the 4/pi - 3/n floor.
std::vector<GrdFloorRow> grd_floor_check(std::span<const std::int64_t> ns,
                                         const EvalConfig& cfg);

// One result row of the reporting pipeline; columns are fixed.
struct ResultRow {
  std::string instance_id;
  std::string mechanism;
  double q = 2.0;
  std::string method;
  double mean = 0.0;
  double std_error = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double opt = 0.0;
  double ratio = 0.0;
};

std::string to_csv(std::span<const ResultRow> rows);
std::string to_json_report(std::span<const ResultRow> rows);

ResultRow make_row(const std::string& instance_id, const MechanismSpec& spec, double q,
                   const RatioEstimate& est);

}  // namespace facloc
