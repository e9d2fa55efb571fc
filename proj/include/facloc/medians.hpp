#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "facloc/geometry.hpp"
#include "facloc/instance.hpp"
#include "facloc/rng.hpp"

namespace facloc {

// Weighted median of (value, multiplicity) pairs: the order statistic of rank
// ceil(n/2). For even n this is the lower median, so the result is always one
// of the input values and single-coordinate perturbation bounds stay exact.
double median_1d(std::vector<std::pair<double, std::int64_t>> vals);

// Coordinate-wise median.
Vec cwmed(const Instance& P);

struct MedianResult {
  Vec point;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;  // last step length; 0 when an optimality test fired
};

// Euclidean 1-median by Weiszfeld iteration started at the weighted mean.
// Iterates that land on a report fall back to the residual-pull update, which
// either certifies the report as optimal or steps off it.
MedianResult geometric_median(const Instance& P, double tol = 1e-10, int max_iters = 100000);

// ell_q 1-median (finite q >= 1) by subgradient descent with step a/sqrt(t),
// a = spread of P. Warm-started from the Euclidean and coordinate-wise
// medians; returns the best iterate seen. Used only where a modest tolerance
// suffices; the callers' inequalities stay valid for any upper bound on OPT.
MedianResult q_median(const Instance& P, double q, double tol = 1e-6, int max_iters = 20000);

// Rotate, take the coordinate-wise median, rotate back.
Vec rcwmed(const Instance& P, const Rotation& R);

// Planar arm: the rotation is the angle alone, applied analytically.
Vec rcwmed(const Instance& P, double theta);

// Average of rcwmed over the rotation group: deterministic angle quadrature in
// the plane, Monte Carlo over Haar draws above it.
Vec projection_median_estimate(const Instance& P, int quad_panels, std::int64_t mc_samples,
                               RandomStream& rng);

}  // namespace facloc
