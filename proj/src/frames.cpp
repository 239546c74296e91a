#include "eulerps/frames.hpp"

#include <Eigen/Geometry>

#include "eulerps/errors.hpp"

namespace eulerps {

Mat3 leray_projector(const Vec3& j) {
  const double jj = j.squaredNorm();
  if (jj == 0.0) throw InvalidModeError("projector of the zero wavevector");
  return Mat3::Identity() - j * j.transpose() / jj;
}

CVec3 project_divergence_free(const Vec3& j, const CVec3& w) {
  const double jj = j.squaredNorm();
  if (jj == 0.0) throw InvalidModeError("projector of the zero wavevector");
  const cplx jw = j(0) * w(0) + j(1) * w(1) + j(2) * w(2);
  return w - j.cast<cplx>() * (jw / jj);
}

Mat3 signature_matrix() { return Eigen::Vector3d(-1.0, -1.0, 1.0).asDiagonal(); }

Mat2 reduced_signature_matrix() { return Eigen::Vector2d(-1.0, 1.0).asDiagonal(); }

bool parallel_to(const Vec3& j, const Vec3& n) { return j.cross(n).isZero(0.0); }

namespace {

RotationFrame generic_frame(const Vec3& j, const Vec3& n) {
  RotationFrame f;
  f.j = j;
  const Vec3 jn = j.cross(n);
  f.norm = j.norm();
  f.norm2 = jn.norm();
  f.R.row(0) = j.transpose() / f.norm;
  f.R.row(1) = jn.transpose() / f.norm2;
  f.R.row(2) = j.cross(jn).transpose() / (f.norm2 * f.norm);
  return f;
}

}  // namespace

RotationFrame rotation_frame(const Vec3& j, const Vec3& n) {
  if (j.squaredNorm() == 0.0) throw InvalidModeError("rotation frame of the zero wavevector");
  if (n.squaredNorm() == 0.0) throw InvalidModeError("rotation frame needs a nonzero n");
  if (!parallel_to(j, n)) return generic_frame(j, n);

  RotationFrame f;
  f.j = j;
  f.norm = j.norm();
  f.norm2 = 0.0;
  const bool plus = j.dot(n) > 0.0;
  f.special = plus ? FrameKind::plus_n : FrameKind::minus_n;

  Mat3 base = Mat3::Identity();
  const Vec3 ex = Vec3::UnitX();
  if (!parallel_to(n, ex)) {
    base = generic_frame(n, ex).R;
  } else if (n(0) < 0.0) {
    base = signature_matrix();
  }
  f.R = plus ? base : Mat3(signature_matrix() * base);
  return f;
}

FrameSet::FrameSet(ModeSetPtr modes, const Vec3& n) : modes_(std::move(modes)), n_(n) {
  if (n.squaredNorm() == 0.0) throw InvalidModeError("frame vector n must be nonzero");
  base_ = rotation_frame(n, n).R;
  frames_.reserve(modes_->size());
  for (std::size_t i = 0; i < modes_->size(); ++i) {
    frames_.push_back(rotation_frame(modes_->wavevector(i), n_));
  }
}

}  // namespace eulerps
