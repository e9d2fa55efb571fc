#pragma once

#include <Eigen/Dense>
#include <limits>
#include <stdexcept>

#include "facloc/rng.hpp"

namespace facloc {

using Vec = Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kHalfPi = kPi / 2.0;
inline constexpr double kFourOverPi = 4.0 / kPi;
inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

// ||v||_q for q >= 1 or q = infinity. q < 1 is not a norm and is rejected.
double lp_norm(const Vec& v, double q);

// Planar rotation angle reduced to [0, pi/2). The rotated coordinate-wise
// median is invariant under quarter turns, so this fundamental domain covers
// every distinct outcome of the planar rotation draw.
class Angle {
 public:
  explicit Angle(double theta) : theta_(theta) {
    if (!(theta >= 0.0 && theta < kHalfPi))
      throw std::invalid_argument("Angle: theta must lie in [0, pi/2)");
  }

  // Folds an arbitrary finite angle into [0, pi/2).
  static Angle reduce(double theta);

  double value() const { return theta_; }

 private:
  double theta_;
};

// Orthogonal matrix with determinant one. Construction through checked() tests
// the algebraic invariants; trusted() skips them for matrices our samplers
// just produced (the O(d^3) check would dominate high-dimensional sweeps).
class Rotation {
 public:
  static Rotation checked(Eigen::MatrixXd m);
  static Rotation trusted(Eigen::MatrixXd m) { return Rotation(std::move(m)); }

  const Eigen::MatrixXd& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

  Vec apply(const Vec& v) const;
  Vec apply_inverse(const Vec& v) const;  // transpose, = inverse for rotations

  // max_ij |R^T R - I|; zero for an exact rotation.
  double orthogonality_defect() const;
  double determinant() const { return m_.determinant(); }

 private:
  explicit Rotation(Eigen::MatrixXd m) : m_(std::move(m)) {}
  Eigen::MatrixXd m_;
};

// [[cos t, -sin t], [sin t, cos t]]; accepts any finite angle.
Rotation rotation_from_angle(double theta);

// Rotate a 2-vector by theta without forming a matrix.
inline void rotate2(double c, double s, double x, double y, double& rx, double& ry) {
  rx = c * x - s * y;
  ry = s * x + c * y;
}

// Haar-uniform rotation: QR of an iid Gaussian matrix, columns re-signed by
// the diagonal of the triangular factor (zero counts as +), last column
// flipped if the determinant lands at -1.
Rotation sample_haar_rotation(int d, RandomStream& rng);

// Uniform point on the unit sphere S^{d-1}; redraws on an all-zero Gaussian.
Vec sample_unit_sphere(int d, RandomStream& rng);

}  // namespace facloc
