#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eulerps/frames.hpp"
#include "eulerps/state.hpp"
#include "eulerps/structures.hpp"
#include "eulerps/verify.hpp"

namespace eulerps {

/// Shear flow omega = G C(p.x): vorticity supported on the line n p.
struct ShearFlowSpec {
  IntVec3 p{1, 0, 0};
  Vec3 G = Vec3::UnitZ();
  /// Profile coefficients c_n, n != 0, with c_{-n} = conj(c_n).
  std::map<int, cplx> coefficients;

  /// Throws std::invalid_argument unless p is a nonzero coprime triple, the
  /// physical wavevector of p is exactly orthogonal to G, and the profile is
  /// real (c_{-n} = conj(c_n), both present, n != 0).
  void validate(const AnisotropyMatrix& aniso) const;
};

/// omega_{n p} = G c_n, all other modes zero. Throws TruncationTooSmallError
/// if some n p with c_n != 0 leaves the box.
VorticityState shear_state(const ShearFlowSpec& spec, const ModeSetPtr& modes);

/// max |d omega/dt| / amp_max (0 for the zero state). The reduced structure
/// needs frames; the others ignore them.
double equilibrium_residual(const VorticityState& state, Structure which, const FrameSet* frames = nullptr,
                            int workers = 1);

/// Equilibrium tolerance used by gradient_span_test.
inline constexpr double kEquilibriumTolerance = 1e-12;

struct GradientSpanReport {
  bool in_kernel = false;
  double kernel_residual = 0.0;
  /// |grad H - best fit in span{grad h, e_k (x) k}| / |grad H|
  double projection_residual = 0.0;
  /// angle in radians between grad H and grad h restricted to populated modes
  double angle = 0.0;
  std::size_t populated_modes = 0;
  std::string to_json() const;
};

/// Throws MisuseError when the state is not an equilibrium of the tensor's structure.
GradientSpanReport gradient_span_test(const VorticityState& state, const GlobalTensor& tensor,
                                      double tol = kEquilibriumTolerance);

struct CorankReport {
  Eigen::Index dimension = 0;
  Eigen::Index rank = 0;
  Eigen::Index corank = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<Eigen::Index> baseline_ranks;
  Eigen::Index baseline_corank = 0;  // largest baseline corank over seeds
  bool baseline_seed_independent = true;
  Eigen::Index kernel_enlargement = 0;  // corank - baseline_corank
  bool degenerate = false;              // zero state, nothing to compare
  double amplitude = 0.0;
  std::string to_json() const;
};

struct CorankOptions {
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  double tol = kRankTolerance;
  Structure structure = Structure::projected;
  int workers = 1;
};

/// Rank at the state versus seeded generic divergence-free baselines scaled to
/// the same amp_max.
CorankReport corank_comparison(const VorticityState& state, const CorankOptions& options = {});
CorankReport corank_comparison(const ShearFlowSpec& spec, const ModeSetPtr& modes,
                               const CorankOptions& options = {});

}  // namespace eulerps
