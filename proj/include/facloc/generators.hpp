#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "facloc/instance.hpp"
#include "facloc/rng.hpp"

namespace facloc {

// Two clusters of k agents at (1,0) and (0,1) with one outlier at (-M,-M).
Instance gen_two_clusters_outlier_2d(std::int64_t k, double M);

// The same family with the coupling k = M^2 that drives the planar
// lower-bound ratio toward 4/pi as M grows.
Instance gen_paper_lb_2d(std::int64_t M);

// k agents at (1,0), k at (0,1), one at the origin. The coordinate-wise
// median sits at the origin with cost exactly 2k.
Instance gen_fig1_2d(std::int64_t k);

// Embedding of the cluster pair in R^d (d > 2): k = floor(sqrt(d)) agents at
// e1 and e2 each, one outlier at -M(e1+e2) with M = sqrt(k).
Instance gen_clusters_outlier_hd(int d);

// n equally spaced points on the unit circle.
Instance gen_unit_circle(std::int64_t n);

// n+1 iid uniform points on the unit sphere S^{d-1}.
Instance gen_random_sphere(std::int64_t n, int d, RandomStream& rng);

enum class RandomCloud { GAUSSIAN, UNIFORM_BOX };

// n iid points, standard normal or uniform on [-1, 1]^d.
Instance gen_random(std::int64_t n, int d, RandomCloud cloud, RandomStream& rng);

// Named-recipe entry point used by the CLI. Recipes that draw randomness
// require a seed; deterministic ones reject one.
Instance make_from_recipe(const std::string& recipe, const std::map<std::string, double>& params,
                          std::optional<std::uint64_t> seed);

}  // namespace facloc
