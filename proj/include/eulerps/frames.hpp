#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "eulerps/lattice.hpp"

namespace eulerps {

using cplx = std::complex<double>;
using CVec3 = Eigen::Vector3cd;
using CVec2 = Eigen::Vector2cd;
using Mat3 = Eigen::Matrix3d;
using CMat3 = Eigen::Matrix3cd;
using Mat2 = Eigen::Matrix2d;
using CMat2 = Eigen::Matrix2cd;

/// Antisymmetric matrix with cross_matrix(a) * b == a x b.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 3, 3> cross_matrix(const Eigen::MatrixBase<Derived>& a) {
  Eigen::Matrix<typename Derived::Scalar, 3, 3> m;
  using S = typename Derived::Scalar;
  m << S(0), -a(2), a(1),
       a(2), S(0), -a(0),
      -a(1), a(0), S(0);
  return m;
}

/// a x b without conjugation (Eigen's cross() conjugates complex results).
inline CVec3 cross(const CVec3& a, const CVec3& b) {
  return CVec3(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0));
}
inline CVec3 cross(const Vec3& a, const CVec3& b) { return cross(a.cast<cplx>().eval(), b); }

/// I - j j^T / |j|^2. Throws InvalidModeError for j = 0.
Mat3 leray_projector(const Vec3& j);

/// Applies leray_projector(j) to w without forming the matrix.
CVec3 project_divergence_free(const Vec3& j, const CVec3& w);

/// diag(-1, -1, 1)
Mat3 signature_matrix();
/// diag(-1, 1)
Mat2 reduced_signature_matrix();

enum class FrameKind { generic, plus_n, minus_n };

struct RotationFrame {
  Vec3 j;
  Mat3 R;
  double norm = 0.0;   // |j|
  double norm2 = 0.0;  // |j x n|
  FrameKind special = FrameKind::generic;
};

/// True iff j x n vanishes exactly. For lattice wavevectors and an axis-aligned
/// n this is the integer test "only the n-axis index component is nonzero".
bool parallel_to(const Vec3& j, const Vec3& n);

/// Rotation with first row j/|j|, rows 2 and 3 built from j x n and j x (j x n).
///
/// When j is parallel to n the generic rows are undefined; then R = Q for
/// j = a n and R = S Q for j = -a n (a > 0), where Q is the fixed frame of n
/// itself. For n along +e_x, Q is the identity, so R is I or S.
RotationFrame rotation_frame(const Vec3& j, const Vec3& n);

/// The constant vector n, its base frame Q and the per-mode rotations of a lattice.
class FrameSet {
 public:
  FrameSet(ModeSetPtr modes, const Vec3& n);

  const ModeSet& modes() const { return *modes_; }
  const ModeSetPtr& modes_ptr() const { return modes_; }
  const Vec3& n() const { return n_; }
  /// Rotation taking n to +|n| e_x; identity when n is along +e_x.
  const Mat3& base() const { return base_; }
  const RotationFrame& operator[](std::size_t i) const { return frames_[i]; }

  /// Frame of an arbitrary wavevector (e.g. j+k outside the lattice).
  RotationFrame frame_of(const Vec3& j) const { return rotation_frame(j, n_); }

 private:
  ModeSetPtr modes_;
  Vec3 n_;
  Mat3 base_;
  std::vector<RotationFrame> frames_;
};

}  // namespace eulerps
