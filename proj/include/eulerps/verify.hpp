#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "eulerps/frames.hpp"
#include "eulerps/state.hpp"
#include "eulerps/structures.hpp"

namespace eulerps {

using BlockFn = std::function<CMat3(const Vec3&, const Vec3&, const CVec3&)>;

/// Block functions for the two full-coordinate Poisson structures. `simple` is
/// J itself; the projected block is derived as simple(j, k, P_{j+k} w).
struct StructurePair {
  BlockFn simple = J_block;

  CMat3 projected(const Vec3& j, const Vec3& k, const CVec3& w) const;
  CMat3 operator()(Structure which, const Vec3& j, const Vec3& k, const CVec3& w) const;
};

/// |B(j,k,w) + B(k,j,w)^T| / max(1, |B(j,k,w)|), Frobenius norms.
double check_antisymmetry(const Vec3& j, const Vec3& k, const CVec3& w, const BlockFn& block = J_block);
/// |B k| / max(1, |B| |k|)
double right_kernel_residual(const Vec3& j, const Vec3& k, const CVec3& w, const BlockFn& block = J_block);
/// |j^T B| / max(1, |B| |j|)
double left_kernel_residual(const Vec3& j, const Vec3& k, const CVec3& w, const BlockFn& block = J_block);
/// |J - A - ((j+k).w) [k]_x| / max(1, |J|)
double difference_identity_residual(const Vec3& j, const Vec3& k, const CVec3& w);

struct JacobiResult {
  double residual = 0.0;  // max over (alpha, beta, gamma) of |Z|
  double scale = 1.0;     // max(1, |omega_{i+j+k}|) * max(|i|,|j|,|k|)^4
  bool inside = true;     // i+j, j+k, k+i and i+j+k (unless zero) all in the lattice
};

/// Jacobi residual of the structure matrix for the mode triple (i, j, k),
/// with analytic derivatives (each block is linear in its omega argument).
JacobiResult jacobi_residual(const IntVec3& i, const IntVec3& j, const IntVec3& k, const VorticityState& state,
                             Structure which, const StructurePair& blocks = {});

/// |P(j,k,omega_{j+k}) (k x omega_{-k})/|k|^2 + P(j,-j-k,omega_{-k}) ((-j-k) x omega_{j+k})/|j+k|^2|
/// divided by max(sum of the two term norms, |j| |omega_{j+k}| |omega_{-k}|). P is the projected block.
double casimir_identity_residual(const IntVec3& j, const IntVec3& k, const VorticityState& state);

/// max_j |sum_k j^T P(j,k,omega_{j+k}) g_k| relative to the summed term magnitudes.
double divergence_casimir_check(const VorticityState& state, const std::vector<CVec3>& g,
                                const StructurePair& blocks = {});

struct ReducedIdentityResult {
  double residual = 0.0;
  bool flagged = false;  // a parallel-to-n mode was involved; coefficients came from conjugation
};

/// Left-hand sides of the three restricted-structure helicity identities for
/// b in {y, z}, max magnitude relative to max(1, largest term).
ReducedIdentityResult reduced_identity_residual(const Vec3& j, const Vec3& k, const FrameSet& frames);

/// |J~ tables - lower-right of R_j J R_k^T| / max(1, |conjugated|)
double cross_check_tilde(const Vec3& j, const Vec3& k, const CVec2& wtilde, const FrameSet& frames);

/// Restricted antisymmetry: |y(j,k) + y(k,j)^T| + |z(j,k) + z(k,j)^T|.
double tilde_antisymmetry(const Vec3& j, const Vec3& k, const FrameSet& frames);

/// Rank tolerance default: 2^-46 relative to sigma_max * dimension.
inline constexpr double kRankTolerance = 0x1.0p-46;

struct RankReport {
  Eigen::Index rank = 0;
  Eigen::Index corank = 0;
  Eigen::VectorXd singular_values;
};

/// Numerical rank: count of sigma > tol * sigma_max * dimension (0 for a zero matrix).
RankReport poisson_rank(const Eigen::MatrixXcd& tensor, double tol = kRankTolerance);
RankReport poisson_rank(const GlobalTensor& tensor, double tol = kRankTolerance);

/// |K c| / (|K| |c|), Frobenius norm for K; 0 for a zero tensor or covector.
double kernel_residual(const Eigen::MatrixXcd& tensor, const Eigen::VectorXcd& covector);
bool kernel_contains(const Eigen::MatrixXcd& tensor, const Eigen::VectorXcd& covector, double tol);

// ---------------------------------------------------------------------------
// Identity suite

struct VerifyConfig {
  int N = 1;
  AnisotropyMatrix aniso{};
  Vec3 n = Vec3::UnitX();
  std::uint64_t seed = 20190401;
  std::size_t cases = 1000;
  double amplitude = 1.0;
  double strict_tolerance = 1e-13;    // block-level identities
  double identity_tolerance = 1e-12;  // Jacobi, Casimirs, restricted tables
  int workers = 1;
  StructurePair blocks{};
};

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t cases = 0;
  bool passed = true;
  std::string worst_case;
};

/// A measured quantity reported without a pass/fail claim.
struct Measurement {
  std::string name;
  double value = 0.0;
  std::size_t cases = 0;
  std::string note;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<Measurement> measurements;
  std::uint64_t seed = 0;
  int N = 0;
  bool all_passed() const;
  std::string to_json() const;
};

VerifyReport run_identity_suite(const VerifyConfig& config);

}  // namespace eulerps
