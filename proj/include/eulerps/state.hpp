#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eulerps/frames.hpp"
#include "eulerps/lattice.hpp"

namespace eulerps {

/// Vorticity coefficients on the canonical half-lattice. The value at -a is
/// always conj(value at a), so no operation can break reality.
class VorticityState {
 public:
  explicit VorticityState(ModeSetPtr modes);

  const ModeSet& modes() const { return *modes_; }
  const ModeSetPtr& modes_ptr() const { return modes_; }

  /// Value at lattice mode index i (conjugated partner for non-canonical i).
  CVec3 at(std::size_t i) const;
  /// Value at integer mode a; zero outside the lattice and at the zero mode.
  CVec3 at(const IntVec3& a) const;

  /// Stores v at mode i; a non-canonical i stores conj(v) at its partner.
  void set(std::size_t i, const CVec3& v);

  std::size_t half_size() const { return half_.size(); }
  const CVec3& half(std::size_t h) const { return half_[h]; }
  CVec3& half(std::size_t h) { return half_[h]; }
  const std::vector<CVec3>& half_values() const { return half_; }

  /// All lattice values in mode order, partners resolved.
  std::vector<CVec3> resolved() const;

  /// max over modes of |omega_j| (Euclidean norm of the complex triple).
  double amp_max() const;
  bool all_finite() const;

  VorticityState& operator+=(const VorticityState& other);
  VorticityState& operator*=(double s);
  friend VorticityState operator+(VorticityState a, const VorticityState& b) { return a += b; }
  friend VorticityState operator*(double s, VorticityState a) { return a *= s; }

  /// max over half-lattice slots of |a - b|.
  friend double max_abs_difference(const VorticityState& a, const VorticityState& b);

 private:
  ModeSetPtr modes_;
  std::vector<CVec3> half_;
};

/// Reduced coordinates (checked y, z components) on the half-lattice. The value
/// at -a is S~ conj(value at a) with S~ = diag(-1, 1).
class ReducedState {
 public:
  explicit ReducedState(ModeSetPtr modes);

  const ModeSet& modes() const { return *modes_; }
  const ModeSetPtr& modes_ptr() const { return modes_; }

  CVec2 at(std::size_t i) const;
  void set(std::size_t i, const CVec2& v);

  std::size_t half_size() const { return half_.size(); }
  const CVec2& half(std::size_t h) const { return half_[h]; }
  CVec2& half(std::size_t h) { return half_[h]; }

  std::vector<CVec2> resolved() const;

  double amp_max() const;
  bool all_finite() const;

  ReducedState& operator+=(const ReducedState& other);
  ReducedState& operator*=(double s);
  friend ReducedState operator+(ReducedState a, const ReducedState& b) { return a += b; }
  friend ReducedState operator*(double s, ReducedState a) { return a *= s; }

  friend double max_abs_difference(const ReducedState& a, const ReducedState& b);

 private:
  ModeSetPtr modes_;
  std::vector<CVec2> half_;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double E = 0.0;
  double h = 0.0;
  double div_max = 0.0;
  double amp_max = 0.0;
};

/// Relative divergence tolerance used for subspace membership checks.
inline constexpr double kDivergenceTolerance = 1e-10;

VorticityState set_mode(VorticityState state, const IntVec3& a, const CVec3& value);

/// Uniform components in [-amplitude, amplitude] (real and imaginary parts),
/// Leray-projected per mode. Deterministic in seed on every platform.
VorticityState random_divfree_state(const ModeSetPtr& modes, std::uint64_t seed, double amplitude);

/// Same sampling without the projection.
VorticityState random_state(const ModeSetPtr& modes, std::uint64_t seed, double amplitude);

/// max over modes of |j . omega_j|.
double divergence_residual(const VorticityState& state);

/// omega~_j = lower two components of R_j omega_j. Throws NotOnSubspaceError
/// if any |(R_j omega_j)_x| exceeds tol * amp_max.
ReducedState to_reduced(const VorticityState& state, const FrameSet& frames,
                        double tol = kDivergenceTolerance);

/// omega_j = R_j^T (0, omega~_j); exactly divergence-free in the checked frame.
VorticityState from_reduced(const ReducedState& reduced, const FrameSet& frames);

/// {"t": real, "modes": [{"a": [ints], "re": [3 reals], "im": [3 reals]}, ...]}
std::string snapshot_to_json(const VorticityState& state, double t);

struct Snapshot {
  VorticityState state;
  double t;
};

/// Parses a snapshot; modes not listed are zero. Throws ConfigError on schema
/// errors and OutOfRangeError for modes outside the lattice.
Snapshot snapshot_from_json(const std::string& text, const ModeSetPtr& modes);

}  // namespace eulerps
