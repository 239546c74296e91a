#include "eulerps/observables.hpp"

#include <cmath>
#include <string>

#include "eulerps/errors.hpp"

namespace eulerps {

namespace {

constexpr cplx I(0.0, 1.0);

cplx plain_dot(const CVec3& a, const CVec3& b) { return a(0) * b(0) + a(1) * b(1) + a(2) * b(2); }

}  // namespace

double energy(const VorticityState& state) {
  const ModeSet& modes = state.modes();
  cplx sum = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    sum += plain_dot(state.at(modes.partner(i)), state.at(i)) / modes.norm_squared(i);
  }
  return 0.5 * sum.real();
}

double energy_reduced(const ReducedState& reduced) {
  const ModeSet& modes = reduced.modes();
  cplx sum = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const CVec2 minus = reduced.at(modes.partner(i));
    const CVec2 plus = reduced.at(i);
    sum += (-minus(0) * plus(0) + minus(1) * plus(1)) / modes.norm_squared(i);
  }
  return 0.5 * sum.real();
}

double helicity(const VorticityState& state) {
  const ModeSet& modes = state.modes();
  cplx sum = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const CVec3 term_vec = cross(state.at(i), state.at(modes.partner(i)));
    const cplx term = I * modes.wavevector(i).cast<cplx>().dot(term_vec) / modes.norm_squared(i);
    sum += term;
    scale += std::abs(term);
  }
  if (std::abs(sum.imag()) > 1e-13 * std::max(std::abs(sum.real()), scale)) {
    throw InconsistentStateError("helicity has imaginary part " + std::to_string(sum.imag()));
  }
  return sum.real();
}

double helicity_reduced(const ReducedState& reduced) {
  const ModeSet& modes = reduced.modes();
  double sum = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const CVec2 w = reduced.at(i);
    sum += 2.0 * (std::conj(w(0)) * w(1)).imag() / modes.norm(i);
  }
  return sum;
}

CotangentField grad_energy(const VorticityState& state) {
  const ModeSet& modes = state.modes();
  CotangentField g(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) g[i] = state.at(modes.partner(i)) / modes.norm_squared(i);
  return g;
}

CotangentField grad_helicity(const VorticityState& state) {
  const ModeSet& modes = state.modes();
  CotangentField g(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const CVec3 kx = cross(modes.wavevector(i), state.at(modes.partner(i)));
    g[i] = (-2.0 * I / modes.norm_squared(i)) * kx;
  }
  return g;
}

std::vector<CVec2> grad_helicity_reduced(const ReducedState& reduced) {
  const ModeSet& modes = reduced.modes();
  std::vector<CVec2> g(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const CVec2 minus = reduced.at(modes.partner(i));
    g[i] = (2.0 * I / modes.norm(i)) * CVec2(minus(1), minus(0));
  }
  return g;
}

std::vector<CVec2> grad_energy_reduced(const ReducedState& reduced) {
  const ModeSet& modes = reduced.modes();
  std::vector<CVec2> g(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const CVec2 minus = reduced.at(modes.partner(i));
    g[i] = CVec2(-minus(0), minus(1)) / modes.norm_squared(i);
  }
  return g;
}

std::vector<CVec3> velocity_modes(const VorticityState& state) {
  const ModeSet& modes = state.modes();
  std::vector<CVec3> v(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    v[i] = I * cross(modes.wavevector(i), state.at(i)) / modes.norm_squared(i);
  }
  return v;
}

DiagnosticsRecord diagnostics(const VorticityState& state, double t) {
  return {t, energy(state), helicity(state), divergence_residual(state), state.amp_max()};
}

}  // namespace eulerps
