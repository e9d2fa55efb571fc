#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "facloc/evaluation.hpp"
#include "facloc/instance.hpp"
#include "facloc/rng.hpp"

namespace facloc {

// One verdict of an empirical check. Reports are reproducible from the check
// name and seed; a failing report's detail carries the witness needed to
// replay it.
struct CheckReport {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

// Mean of ||R_theta v||_1 over the angle quadrant against (4/pi) ||v||_2.
// The integrand has a single kink in the quadrant; the quadrature splits
// there so composite Simpson converges at full order.
CheckReport check_rotated_l1(const Vec& v, int panels = 2048);

// sum_{k<n} sin(pi k / n) against cot(pi / 2n), compensated summation.
CheckReport check_trig_identity(std::int64_t n);

// E[X_1^m] on the unit sphere: even moments against the product formula
// prod (2j-1)/(d+2j-2), odd moments against zero, both within four standard
// errors.
std::vector<CheckReport> check_sphere_moments(int d, int k_max, std::int64_t samples,
                                              RandomStream& rng);

// E||X - e_1|| against the even-moment series truncated after the sixth
// power; tolerance is four standard errors plus a rigorous tail bound.
CheckReport check_sphere_distance(int d, std::int64_t samples, RandomStream& rng);

double sphere_even_moment(int d, int k);
double sphere_distance_series(int d);
double sphere_distance_series_budget(int d);

// Inserting floor(c n) adversarial reports moves the Euclidean 1-median by
// at most 2 C(P) / ((1-c) n) and inflates the cost of the original reports
// by at most the factor 1 + 2c/(1-c). One report per c over random clouds.
std::vector<CheckReport> check_insertion_robustness(int trials, std::span<const double> cs,
                                                    RandomStream& rng);

// |med(x) - med(y)| <= max_i |x_i - y_i| for odd-length vectors, exactly.
CheckReport check_median_lipschitz(std::int64_t trials, RandomStream& rng);

// The worked three-point example: projection median near (0, 1/2), its cost
// near sqrt(5) + 1/2, the rotation-randomized cost inside [2.82, 2.84], and
// the strict ordering between the two.
std::vector<CheckReport> check_projmed_example();

// Calibrated certification floors for the high-dimensional ratio sweep.
// Loaded from the acceptance data file; floors at or above d = 100 are never
// taken below the pinned 1.2.
struct HdFloors {
  std::vector<std::pair<int, double>> floors;
  double floor_for(int d) const;
  static HdFloors load_default();
};

// Monte Carlo ratio of the rotated median on the embedded cluster pair across
// a dimension grid: each CI lower edge above its floor, means nondecreasing
// within CI overlap, and every mean below the sqrt(6 sqrt(3) - 8) cap.
std::vector<CheckReport> check_hd_lower_bound(std::span<const int> ds, std::int64_t mc_samples,
                                              RandomStream& rng, const HdFloors& floors,
                                              int workers = 1);

// Random-sphere dictator floor: the cheapest report, normalized by n+1, stays
// above the mean-distance series times n/(n+1) minus the concentration slack
// 4 sqrt(2/n) log(n+1).
CheckReport check_grd_sphere_floor(int d, std::int64_t n, RandomStream& rng);

// scost(P, a) for every atom a.
std::vector<double> all_report_costs(const Instance& P);

enum class CheckSuite { ALL, LEMMAS, SP, ROBUSTNESS };

std::vector<CheckReport> run_check_suite(CheckSuite suite, std::uint64_t seed, int workers = 1);

}  // namespace facloc
