#include "facloc/generators.hpp"

#include <cmath>
#include <stdexcept>

namespace facloc {

namespace {

Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

double get_param(const std::map<std::string, double>& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end())
    throw std::invalid_argument("recipe: missing parameter '" + key + "'");
  return it->second;
}

std::int64_t get_int_param(const std::map<std::string, double>& params, const std::string& key) {
  const double v = get_param(params, key);
  const auto i = static_cast<std::int64_t>(std::llround(v));
  if (static_cast<double>(i) != v)
    throw std::invalid_argument("recipe: parameter '" + key + "' must be an integer");
  return i;
}

}  // namespace

Instance gen_two_clusters_outlier_2d(std::int64_t k, double M) {
  if (k < 1) throw std::invalid_argument("gen_two_clusters_outlier_2d: k must be >= 1");
  if (!(M > 0.0)) throw std::invalid_argument("gen_two_clusters_outlier_2d: M must be positive");
  std::vector<Atom> atoms;
  atoms.push_back({vec2(1.0, 0.0), k});
  atoms.push_back({vec2(0.0, 1.0), k});
  atoms.push_back({vec2(-M, -M), 1});
  InstanceMeta meta{"two-clusters-outlier-2d",
                    {{"k", static_cast<double>(k)}, {"M", M}}};
  return Instance(2, std::move(atoms), std::move(meta));
}

Instance gen_paper_lb_2d(std::int64_t M) {
  if (M < 1) throw std::invalid_argument("gen_paper_lb_2d: M must be >= 1");
  Instance base = gen_two_clusters_outlier_2d(M * M, static_cast<double>(M));
  return base.with_meta({"paper-lb-2d", {{"M", static_cast<double>(M)}}});
}

Instance gen_fig1_2d(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("gen_fig1_2d: k must be >= 1");
  std::vector<Atom> atoms;
  atoms.push_back({vec2(1.0, 0.0), k});
  atoms.push_back({vec2(0.0, 1.0), k});
  atoms.push_back({vec2(0.0, 0.0), 1});
  return Instance(2, std::move(atoms), InstanceMeta{"fig1", {{"k", static_cast<double>(k)}}});
}

Instance gen_clusters_outlier_hd(int d) {
  if (d <= 2) throw std::invalid_argument("gen_clusters_outlier_hd: d must exceed 2");
  const auto k = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(d))));
  const double M = std::sqrt(static_cast<double>(k));
  Vec e1 = Vec::Zero(d), e2 = Vec::Zero(d), out = Vec::Zero(d);
  e1[0] = 1.0;
  e2[1] = 1.0;
  out[0] = -M;
  out[1] = -M;
  std::vector<Atom> atoms{{e1, k}, {e2, k}, {out, 1}};
  return Instance(d, std::move(atoms),
                  InstanceMeta{"hd-clusters", {{"d", static_cast<double>(d)}}});
}

Instance gen_unit_circle(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("gen_unit_circle: n must be >= 2");
  std::vector<Atom> atoms;
  atoms.reserve(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const double a = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    atoms.push_back({vec2(std::cos(a), std::sin(a)), 1});
  }
  return Instance(2, std::move(atoms),
                  InstanceMeta{"unit-circle", {{"n", static_cast<double>(n)}}});
}

Instance gen_random_sphere(std::int64_t n, int d, RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("gen_random_sphere: n must be >= 1");
  if (d < 2) throw std::invalid_argument("gen_random_sphere: d must be >= 2");
  std::vector<Atom> atoms;
  atoms.reserve(n + 1);
  for (std::int64_t i = 0; i <= n; ++i) atoms.push_back({sample_unit_sphere(d, rng), 1});
  return Instance(d, std::move(atoms),
                  InstanceMeta{"sphere",
                               {{"n", static_cast<double>(n)},
                                {"d", static_cast<double>(d)},
                                {"seed", static_cast<double>(rng.seed())}}});
}

Instance gen_random(std::int64_t n, int d, RandomCloud cloud, RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("gen_random: n must be >= 1");
  if (d < 1) throw std::invalid_argument("gen_random: d must be >= 1");
  std::vector<Atom> atoms;
  atoms.reserve(n);
  for (std::int64_t i = 0; i < n; ++i) {
    Vec p(d);
    for (int j = 0; j < d; ++j)
      p[j] = cloud == RandomCloud::GAUSSIAN ? rng.normal() : rng.uniform(-1.0, 1.0);
    atoms.push_back({p, 1});
  }
  const char* name = cloud == RandomCloud::GAUSSIAN ? "gaussian" : "box";
  return Instance(d, std::move(atoms),
                  InstanceMeta{name,
                               {{"n", static_cast<double>(n)},
                                {"d", static_cast<double>(d)},
                                {"seed", static_cast<double>(rng.seed())}}});
}

Instance make_from_recipe(const std::string& recipe, const std::map<std::string, double>& params,
                          std::optional<std::uint64_t> seed) {
  const bool random_recipe = recipe == "sphere" || recipe == "gaussian" || recipe == "box";
  if (random_recipe && !seed)
    throw std::invalid_argument("recipe '" + recipe + "' draws randomness and needs a seed");
  if (!random_recipe && seed)
    throw std::invalid_argument("recipe '" + recipe + "' is deterministic; seed not accepted");

  if (recipe == "paper-lb-2d") return gen_paper_lb_2d(get_int_param(params, "M"));
  if (recipe == "two-clusters-outlier-2d")
    return gen_two_clusters_outlier_2d(get_int_param(params, "k"), get_param(params, "M"));
  if (recipe == "fig1") return gen_fig1_2d(get_int_param(params, "k"));
  if (recipe == "hd-clusters")
    return gen_clusters_outlier_hd(static_cast<int>(get_int_param(params, "d")));
  if (recipe == "unit-circle") return gen_unit_circle(get_int_param(params, "n"));
  if (recipe == "sphere") {
    RandomStream rng(*seed);
    return gen_random_sphere(get_int_param(params, "n"),
                             static_cast<int>(get_int_param(params, "d")), rng);
  }
  if (recipe == "gaussian" || recipe == "box") {
    RandomStream rng(*seed);
    return gen_random(get_int_param(params, "n"), static_cast<int>(get_int_param(params, "d")),
                      recipe == "gaussian" ? RandomCloud::GAUSSIAN : RandomCloud::UNIFORM_BOX,
                      rng);
  }
  throw std::invalid_argument("unknown recipe '" + recipe + "'");
}

}  // namespace facloc
