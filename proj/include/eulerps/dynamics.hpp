#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "eulerps/errors.hpp"
#include "eulerps/observables.hpp"
#include "eulerps/state.hpp"
#include "eulerps/structures.hpp"

namespace eulerps {

/// d omega_j/dt = sum_k block(j, k, omega_{j+k}) omega_{-k} / |k|^2 for
/// which in {direct, simple, projected}. Terms with j + k outside the lattice
/// (or zero) vanish. Evaluation is parallel over output modes; every per-mode
/// sum runs in a fixed order, so the result does not depend on `workers`.
VorticityState vector_field_full(const VorticityState& state, Structure which, int workers = 1);

/// Cached restricted-structure coefficients for every (j, k) pair of a lattice.
class ReducedOperator {
 public:
  explicit ReducedOperator(const FrameSet& frames);

  /// d omega~_j/dt = sum_k J~(j, k) S~ omega~_{-k} / |k|^2
  ReducedState apply(const ReducedState& reduced, int workers = 1) const;

  const ModeSet& modes() const { return *modes_; }

 private:
  ModeSetPtr modes_;
  // coefficient pair for (half slot h, mode c) at index h * size + c
  std::vector<TildeCoefficients> coeffs_;
};

/// One-shot reduced field; builds a ReducedOperator internally.
ReducedState vector_field_reduced(const ReducedState& reduced, const FrameSet& frames, int workers = 1);

/// Classical fourth-order Runge-Kutta step. Throws BlowUpError when a stage
/// produces non-finite values. Negative dt integrates backwards.
template <typename State, typename Field>
State rk4_step(const State& y, double dt, Field&& field) {
  auto checked = [](State s) {
    if (!s.all_finite()) throw BlowUpError("non-finite value in Runge-Kutta stage");
    return s;
  };
  const State k1 = checked(field(y));
  const State k2 = checked(field(y + (0.5 * dt) * k1));
  const State k3 = checked(field(y + (0.5 * dt) * k2));
  const State k4 = checked(field(y + dt * k3));
  State next = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return checked(std::move(next));
}

struct IntegrateOptions {
  double t0 = 0.0;
  /// Record diagnostics every this many steps (the initial state is always recorded).
  std::size_t record_every = 1;
  int workers = 1;
  /// Called for every recorded state.
  std::function<void(std::size_t step, const VorticityState&, const DiagnosticsRecord&)> observer;
};

struct IntegrationResult {
  VorticityState final_state;
  double t_final = 0.0;
  std::vector<DiagnosticsRecord> records;
};

/// Blow-up carrying the step index and the last finite state.
class IntegrationBlowUp : public BlowUpError {
 public:
  IntegrationBlowUp(const std::string& what, std::size_t step, VorticityState last_good, double t)
      : BlowUpError(what, step), last_good_(std::move(last_good)), t_(t) {}
  const VorticityState& last_good() const { return last_good_; }
  double t_last_good() const { return t_; }

 private:
  VorticityState last_good_;
  double t_;
};

/// Repeated rk4_step under the chosen full-coordinate structure. Time is
/// accumulated as t += dt so a run resumed from a snapshot replays bit-identically.
IntegrationResult integrate(const VorticityState& initial, double dt, std::size_t steps, Structure which,
                            const IntegrateOptions& options = {});

/// Reduced-coordinate integration with a prebuilt operator.
ReducedState integrate_reduced(const ReducedState& initial, double dt, std::size_t steps,
                               const ReducedOperator& op, int workers = 1);

}  // namespace eulerps
