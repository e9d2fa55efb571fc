#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "facloc/geometry.hpp"
#include "facloc/rng.hpp"

using namespace facloc;

namespace {

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

// One-sample Kolmogorov-Smirnov statistic against a uniform law on [lo, hi).
double ks_uniform(std::vector<double> xs, double lo, double hi) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = (xs[i] - lo) / (hi - lo);
    d = std::max(d, std::max((i + 1) / n - f, f - i / n));
  }
  return d;
}

}  // namespace

TEST_CASE("lp_norm agrees with closed forms") {
  Vec v(3);
  v << 3.0, -4.0, 12.0;
  CHECK(lp_norm(v, 1.0) == doctest::Approx(19.0));
  CHECK(lp_norm(v, 2.0) == doctest::Approx(13.0));
  CHECK(lp_norm(v, kInfNorm) == doctest::Approx(12.0));
  CHECK(lp_norm(v, 3.0) == doctest::Approx(std::cbrt(27.0 + 64.0 + 1728.0)));
  CHECK(lp_norm(v, 4.0) == doctest::Approx(std::pow(81.0 + 256.0 + 20736.0, 0.25)));
  CHECK(lp_norm(v, 7.5) ==
        doctest::Approx(std::pow(std::pow(3.0, 7.5) + std::pow(4.0, 7.5) + std::pow(12.0, 7.5),
                                 1.0 / 7.5)));
  CHECK(lp_norm(Vec::Zero(5), 2.0) == 0.0);
  CHECK(lp_norm(v, 2.0) == doctest::Approx(v.norm()).epsilon(1e-14));
}

TEST_CASE("lp_norm rejects q < 1") {
  Vec v = v2(1.0, 1.0);
  CHECK_THROWS_AS(lp_norm(v, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(lp_norm(v, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(lp_norm(v, -2.0), std::invalid_argument);
}

TEST_CASE("Angle validates and reduces to the quarter turn") {
  CHECK(Angle(0.0).value() == 0.0);
  CHECK(Angle(1.5).value() == 1.5);
  CHECK_THROWS_AS(Angle{kHalfPi}, std::invalid_argument);
  CHECK_THROWS_AS(Angle(-0.1), std::invalid_argument);

  CHECK(Angle::reduce(0.3).value() == doctest::Approx(0.3));
  CHECK(Angle::reduce(0.3 + kHalfPi).value() == doctest::Approx(0.3));
  CHECK(Angle::reduce(0.3 + 7.0 * kHalfPi).value() == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(Angle::reduce(-0.2).value() == doctest::Approx(kHalfPi - 0.2));
  CHECK(Angle::reduce(kHalfPi).value() == doctest::Approx(0.0));
}

TEST_CASE("rotation_from_angle produces an exact planar rotation") {
  const double th = 0.7;
  const Rotation R = rotation_from_angle(th);
  CHECK(R.dim() == 2);
  CHECK(R.matrix()(0, 0) == doctest::Approx(std::cos(th)));
  CHECK(R.matrix()(0, 1) == doctest::Approx(-std::sin(th)));
  CHECK(R.matrix()(1, 0) == doctest::Approx(std::sin(th)));
  CHECK(R.orthogonality_defect() <= 1e-15);
  CHECK(R.determinant() == doctest::Approx(1.0).epsilon(1e-14));

  const Vec v = v2(2.0, -1.0);
  const Vec w = R.apply(v);
  CHECK(w.norm() == doctest::Approx(v.norm()).epsilon(1e-14));
  CHECK((R.apply_inverse(w) - v).norm() <= 1e-14);

  double rx, ry;
  rotate2(std::cos(th), std::sin(th), v[0], v[1], rx, ry);
  CHECK(rx == doctest::Approx(w[0]).epsilon(1e-15));
  CHECK(ry == doctest::Approx(w[1]).epsilon(1e-15));
}

TEST_CASE("Rotation::checked rejects non-rotations") {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, 0.0, 0.0, 1.0;
  CHECK_NOTHROW(Rotation::checked(m));
  m << 1.0, 0.0, 0.0, -1.0;  // reflection: orthogonal but det = -1
  CHECK_THROWS_AS(Rotation::checked(m), std::invalid_argument);
  m << 2.0, 0.0, 0.0, 0.5;  // not orthogonal
  CHECK_THROWS_AS(Rotation::checked(m), std::invalid_argument);
}

TEST_CASE("sample_haar_rotation yields valid rotations in every dimension") {
  RandomStream rng(31);
  for (int d = 2; d <= 6; ++d) {
    for (int rep = 0; rep < 20; ++rep) {
      const Rotation R = sample_haar_rotation(d, rng);
      CHECK(R.dim() == d);
      CHECK(R.orthogonality_defect() <= 1e-12);
      CHECK(R.determinant() == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("sample_haar_rotation is deterministic per seed and varies across substreams") {
  RandomStream a(9), b(9);
  const Rotation Ra = sample_haar_rotation(4, a);
  const Rotation Rb = sample_haar_rotation(4, b);
  CHECK((Ra.matrix() - Rb.matrix()).cwiseAbs().maxCoeff() == 0.0);

  RandomStream base(9);
  RandomStream s0 = base.substream(0);
  RandomStream s1 = base.substream(1);
  const Rotation R0 = sample_haar_rotation(4, s0);
  const Rotation R1 = sample_haar_rotation(4, s1);
  CHECK((R0.matrix() - R1.matrix()).cwiseAbs().maxCoeff() > 1e-6);
}

TEST_CASE("planar Haar angle is uniform on the circle and on the quarter fold") {
  const int n = 100000;
  RandomStream rng(20260823);
  std::vector<double> full(n), quarter(n);
  for (int i = 0; i < n; ++i) {
    const Rotation R = sample_haar_rotation(2, rng);
    double a = std::atan2(R.matrix()(1, 0), R.matrix()(0, 0));
    if (a < 0.0) a += 2.0 * kPi;
    full[i] = a;
    quarter[i] = Angle::reduce(a).value();
  }
  // threshold 0.0075 at n = 1e5: false-alarm probability ~ 2 exp(-2 n t^2) < 3e-5
  CHECK(ks_uniform(std::move(full), 0.0, 2.0 * kPi) < 0.0075);
  CHECK(ks_uniform(std::move(quarter), 0.0, kHalfPi) < 0.0075);
}

TEST_CASE("Haar rotation in 3d sends e1 to a uniform sphere point") {
  // the z-coordinate of a uniform point on S^2 is uniform on [-1, 1]
  const int n = 30000;
  RandomStream rng(77);
  std::vector<double> zs(n);
  Vec e1 = Vec::Zero(3);
  e1[0] = 1.0;
  for (int i = 0; i < n; ++i) zs[i] = sample_haar_rotation(3, rng).apply(e1)[2];
  CHECK(ks_uniform(std::move(zs), -1.0, 1.0) < 0.013);
}

TEST_CASE("sample_unit_sphere lies on the sphere and matches the known marginal") {
  RandomStream rng(5);
  for (int d : {2, 3, 7, 25}) {
    for (int rep = 0; rep < 50; ++rep)
      CHECK(sample_unit_sphere(d, rng).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  const int n = 30000;
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = sample_unit_sphere(3, rng)[0];
  CHECK(ks_uniform(std::move(xs), -1.0, 1.0) < 0.013);
}

TEST_CASE("RandomStream basics: ranges, determinism, substream separation") {
  RandomStream a(123), b(123);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(u == b.uniform());
  }
  RandomStream c(123);
  double mean = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) mean += c.uniform();
  mean /= n;
  CHECK(std::abs(mean - 0.5) < 0.005);

  double nm = 0.0, nv = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = c.normal();
    nm += x;
    nv += x * x;
  }
  nm /= n;
  nv = nv / n - nm * nm;
  CHECK(std::abs(nm) < 0.02);
  CHECK(std::abs(nv - 1.0) < 0.03);

  std::vector<std::int64_t> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[c.uniform_index(7)];
  for (std::int64_t k : counts) CHECK(std::abs(k - 10000) < 500);

  RandomStream s0 = a.substream(4), s1 = a.substream(5);
  int agree = 0;
  for (int i = 0; i < 64; ++i)
    if (s0.next_u64() == s1.next_u64()) ++agree;
  CHECK(agree == 0);
}

TEST_CASE("rotation preserves the Euclidean norm but not the l1 norm") {
  RandomStream rng(88);
  const Vec v = v2(3.0, 4.0);
  for (int rep = 0; rep < 100; ++rep) {
    const Rotation R = sample_haar_rotation(2, rng);
    const Vec w = R.apply(v);
    CHECK(w.norm() == doctest::Approx(5.0).epsilon(1e-12));
  }
  // at theta = 45 degrees the l1 norm of (1, 0) stretches to sqrt(2)
  const Rotation R = rotation_from_angle(kPi / 4.0);
  CHECK(lp_norm(R.apply(v2(1.0, 0.0)), 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}
