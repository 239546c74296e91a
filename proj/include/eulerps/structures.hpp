#pragma once

#include <string>
#include <string_view>

#include <Eigen/Core>

#include "eulerps/frames.hpp"
#include "eulerps/state.hpp"

namespace eulerps {

/// Which structure matrix drives a computation.
///  direct    - the A-matrix form of the mode equations (not antisymmetric)
///  simple    - J, a Poisson structure on the divergence-free subspace only
///  projected - J evaluated at the Leray-projected vorticity; Poisson everywhere
///  reduced   - the 2x2 restriction to the divergence-free subspace
enum class Structure { direct, simple, projected, reduced };

std::string_view to_string(Structure s);
/// Throws std::invalid_argument for unknown names.
Structure parse_structure(std::string_view name);

/// A(j,k) = w (k x j)^T - (k . w) [k]_x, w standing for omega_{j+k}.
CMat3 A_block(const Vec3& j, const Vec3& k, const CVec3& w);

/// J(j,k) = w (k x j)^T + (j . w) [k]_x.
CMat3 J_block(const Vec3& j, const Vec3& k, const CVec3& w);

/// J(j, k, P_{j+k} w). Defined as zero when j + k = 0 (omega_0 = 0).
CMat3 Jproj_block(const Vec3& j, const Vec3& k, const CVec3& w);

/// R_j J(j, k, R_{j+k}^T wcheck) R_k^T. Zero when j + k = 0.
CMat3 Jcheck_block(const Vec3& j, const Vec3& k, const CVec3& wcheck, const FrameSet& frames);

/// How a restricted block was evaluated.
enum class TildeRoute {
  generic,        // none of j, k, j+k parallel to n
  j_parallel,     // special table, j || n
  k_parallel,     // special table, k || n
  sum_parallel,   // special table, j+k || n
  conjugation,    // several parallel; lower-right block of Jcheck_block
  zero_sum,       // j + k = 0, block vanishes
};

std::string_view to_string(TildeRoute r);

/// The restricted block is linear in omega~_{j+k}: J~ = y * w_y + z * w_z,
/// with real 2x2 coefficient matrices depending on (j, k) only.
struct TildeCoefficients {
  Mat2 y = Mat2::Zero();
  Mat2 z = Mat2::Zero();
  TildeRoute route = TildeRoute::generic;
};

/// Closed-form coefficients of the restricted structure.
TildeCoefficients tilde_coefficients(const Vec3& j, const Vec3& k, const FrameSet& frames);

struct TildeBlock {
  CMat2 value;
  TildeRoute route;
};

/// Restricted 2x2 block from the closed-form tables.
TildeBlock Jtilde_block(const Vec3& j, const Vec3& k, const CVec2& wtilde, const FrameSet& frames);

/// Lower-right 2x2 of Jcheck_block(j, k, (0, wtilde)).
CMat2 Jtilde_by_conjugation(const Vec3& j, const Vec3& k, const CVec2& wtilde, const FrameSet& frames);

/// Dense Poisson tensor over every lattice mode; block (j, k) is the chosen
/// structure at omega_{j+k}, zero when j + k leaves the lattice.
struct GlobalTensor {
  ModeSetPtr modes;
  Structure structure = Structure::projected;
  int block = 3;
  Eigen::MatrixXcd matrix;

  Eigen::Index dimension() const { return matrix.rows(); }
  /// JSON header describing layout and mode ordering.
  std::string header_json() const;
  /// Row-major little-endian (re, im) float64 pairs.
  void write_binary(const std::string& path) const;
};

GlobalTensor assemble_global(const VorticityState& state, Structure which, int workers = 1);
GlobalTensor assemble_global(const ReducedState& reduced, const FrameSet& frames, int workers = 1);

/// Flattened covector (3 entries per lattice mode, in mode order).
Eigen::VectorXcd flatten(const std::vector<CVec3>& field);

}  // namespace eulerps
