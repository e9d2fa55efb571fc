#include "facloc/geometry.hpp"

#include <cmath>

namespace facloc {

double lp_norm(const Vec& v, double q) {
  if (std::isinf(q)) return v.cwiseAbs().maxCoeff();
  if (q < 1.0) throw std::invalid_argument("lp_norm: q < 1 is not a norm");
  if (q == 1.0) return v.cwiseAbs().sum();
  if (q == 2.0) return v.norm();
  if (q == 3.0) {
    double s = 0.0;
    for (int i = 0; i < v.size(); ++i) {
      const double a = std::abs(v[i]);
      s += a * a * a;
    }
    return std::cbrt(s);
  }
  if (q == 4.0) {
    double s = 0.0;
    for (int i = 0; i < v.size(); ++i) {
      const double a = v[i] * v[i];
      s += a * a;
    }
    return std::sqrt(std::sqrt(s));
  }
  double s = 0.0;
  for (int i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]), q);
  return std::pow(s, 1.0 / q);
}

Angle Angle::reduce(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("Angle: non-finite angle");
  double t = std::fmod(theta, kHalfPi);
  if (t < 0.0) t += kHalfPi;
  if (t >= kHalfPi) t = 0.0;  // fmod rounding at the boundary
  return Angle(t);
}

Rotation Rotation::checked(Eigen::MatrixXd m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument("Rotation: matrix must be square, d >= 1");
  Rotation r(std::move(m));
  if (r.orthogonality_defect() > 1e-10)
    throw std::invalid_argument("Rotation: columns are not orthonormal");
  if (std::abs(r.determinant() - 1.0) > 1e-8)
    throw std::invalid_argument("Rotation: determinant is not 1");
  return r;
}

Vec Rotation::apply(const Vec& v) const {
  if (v.size() != m_.rows()) throw std::invalid_argument("Rotation: dimension mismatch");
  return m_ * v;
}

Vec Rotation::apply_inverse(const Vec& v) const {
  if (v.size() != m_.rows()) throw std::invalid_argument("Rotation: dimension mismatch");
  return m_.transpose() * v;
}

double Rotation::orthogonality_defect() const {
  const auto d = m_.rows();
  return (m_.transpose() * m_ - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
}

Rotation rotation_from_angle(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("rotation_from_angle: non-finite angle");
  Eigen::MatrixXd m(2, 2);
  const double c = std::cos(theta), s = std::sin(theta);
  m << c, -s, s, c;
  return Rotation::trusted(std::move(m));
}

Rotation sample_haar_rotation(int d, RandomStream& rng) {
  if (d < 1) throw std::invalid_argument("sample_haar_rotation: d must be >= 1");
  Eigen::MatrixXd a(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) a(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& packed = qr.matrixQR();
  for (int j = 0; j < d; ++j)
    if (packed(j, j) < 0.0) q.col(j) = -q.col(j);
  if (q.determinant() < 0.0) q.col(d - 1) = -q.col(d - 1);
  return Rotation::trusted(std::move(q));
}

Vec sample_unit_sphere(int d, RandomStream& rng) {
  if (d < 1) throw std::invalid_argument("sample_unit_sphere: d must be >= 1");
  Vec v(d);
  while (true) {
    for (int i = 0; i < d; ++i) v[i] = rng.normal();
    const double n = v.norm();
    if (n > 0.0) return v / n;
  }
}

}  // namespace facloc
