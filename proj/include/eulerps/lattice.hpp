#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace eulerps {

using Vec3 = Eigen::Vector3d;
using IntVec3 = std::array<int, 3>;

inline IntVec3 operator+(const IntVec3& a, const IntVec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline IntVec3 operator-(const IntVec3& a) { return {-a[0], -a[1], -a[2]}; }
inline IntVec3 operator-(const IntVec3& a, const IntVec3& b) { return a + (-b); }
inline bool is_zero(const IntVec3& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0; }

/// Unit wavenumbers of the periodic box along x, y, z (all strictly positive).
class AnisotropyMatrix {
 public:
  AnisotropyMatrix() = default;
  AnisotropyMatrix(double nu_x, double nu_y, double nu_z);

  double nu_x() const { return nu_[0]; }
  double nu_y() const { return nu_[1]; }
  double nu_z() const { return nu_[2]; }
  double operator[](std::size_t i) const { return nu_[i]; }
  bool isotropic() const { return nu_[0] == 1.0 && nu_[1] == 1.0 && nu_[2] == 1.0; }

 private:
  std::array<double, 3> nu_{1.0, 1.0, 1.0};
};

/// Symmetric box |a_i| <= N on integer mode indices; the zero mode is never included.
class TruncationSpec {
 public:
  explicit TruncationSpec(int N);
  int N() const { return N_; }

 private:
  int N_;
};

/// Physical wavevector (nu_x a_x, nu_y a_y, nu_z a_z). Throws InvalidModeError for a = 0.
Vec3 wavevector(const IntVec3& a, const AnisotropyMatrix& aniso);

/// True iff a != 0 and every |a_i| <= N.
bool in_lattice(const IntVec3& a, const TruncationSpec& trunc);

/// The truncated lattice in lexicographic order on (a_x, a_y, a_z).
///
/// With this ordering the partner of mode i is mode size()-1-i, and the
/// canonical half-lattice (first nonzero component positive) is exactly the
/// upper half [size()/2, size()). Half-lattice slot h corresponds to mode
/// size()/2 + h.
class ModeSet {
 public:
  ModeSet(const TruncationSpec& trunc, const AnisotropyMatrix& aniso);

  int N() const { return trunc_.N(); }
  const TruncationSpec& truncation() const { return trunc_; }
  const AnisotropyMatrix& anisotropy() const { return aniso_; }

  std::size_t size() const { return modes_.size(); }
  std::size_t half_size() const { return modes_.size() / 2; }

  const IntVec3& mode(std::size_t i) const { return modes_[i]; }
  const Vec3& wavevector(std::size_t i) const { return wavevectors_[i]; }
  double norm(std::size_t i) const { return norms_[i]; }
  double norm_squared(std::size_t i) const { return norms_[i] * norms_[i]; }

  std::size_t partner(std::size_t i) const { return modes_.size() - 1 - i; }
  bool is_canonical(std::size_t i) const { return i >= half_size(); }
  std::size_t half_slot(std::size_t i) const { return i - half_size(); }
  std::size_t from_half_slot(std::size_t h) const { return h + half_size(); }

  std::optional<std::size_t> index_of(const IntVec3& a) const;
  /// Index of a; throws OutOfRangeError (or InvalidModeError for a = 0).
  std::size_t require_index(const IntVec3& a) const;

  const std::vector<IntVec3>& modes() const { return modes_; }

  /// {"N": int, "aniso": [3 reals], "modes": [[ax,ay,az], ...]}
  std::string to_json() const;

 private:
  TruncationSpec trunc_;
  AnisotropyMatrix aniso_;
  std::vector<IntVec3> modes_;
  std::vector<Vec3> wavevectors_;
  std::vector<double> norms_;
};

using ModeSetPtr = std::shared_ptr<const ModeSet>;

ModeSetPtr build_lattice(const TruncationSpec& trunc, const AnisotropyMatrix& aniso);

}  // namespace eulerps
