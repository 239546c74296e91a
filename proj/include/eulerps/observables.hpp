#pragma once

#include <vector>

#include "eulerps/frames.hpp"
#include "eulerps/state.hpp"

namespace eulerps {

/// Per-mode derivative d f / d omega_k over every lattice mode (mode order),
/// treating all omega_k as independent variables.
using CotangentField = std::vector<CVec3>;

/// H = 1/2 sum_j omega_{-j} . omega_j / |j|^2
double energy(const VorticityState& state);

/// H~ = 1/2 sum_j omega~_{-j}^T S~ omega~_j / |j|^2
double energy_reduced(const ReducedState& reduced);

/// h = sum_k (i/|k|^2) k . (omega_k x omega_{-k}).
/// Throws InconsistentStateError if the imaginary part is not negligible.
double helicity(const VorticityState& state);

/// h~ = sum_k (2/|k|) Im(conj(omega~_{k,y}) omega~_{k,z})
double helicity_reduced(const ReducedState& reduced);

/// dH/d omega_k = omega_{-k} / |k|^2
CotangentField grad_energy(const VorticityState& state);

/// dh/d omega_k = -(2i/|k|^2) k x omega_{-k}
CotangentField grad_helicity(const VorticityState& state);

/// Gradient of the reduced helicity: (2i/|k|) (omega~_{-k,z}, omega~_{-k,y}), mode order.
std::vector<CVec2> grad_helicity_reduced(const ReducedState& reduced);

/// Gradient of the reduced energy: S~ omega~_{-k} / |k|^2, mode order.
std::vector<CVec2> grad_energy_reduced(const ReducedState& reduced);

/// v_j = i (j x omega_j) / |j|^2, mode order.
std::vector<CVec3> velocity_modes(const VorticityState& state);

DiagnosticsRecord diagnostics(const VorticityState& state, double t);

}  // namespace eulerps
