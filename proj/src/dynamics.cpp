#include "eulerps/dynamics.hpp"

#include <stdexcept>

#include "eulerps/parallel.hpp"

namespace eulerps {

namespace {

cplx dot(const Vec3& a, const CVec3& w) { return a(0) * w(0) + a(1) * w(1) + a(2) * w(2); }

}  // namespace

VorticityState vector_field_full(const VorticityState& state, Structure which, int workers) {
  if (which == Structure::reduced) {
    throw std::invalid_argument("vector_field_full: use vector_field_reduced for the reduced structure");
  }
  const ModeSet& modes = state.modes();
  const std::size_t M = modes.size();
  const auto omega = state.resolved();
  std::vector<CVec3> grad(M);
  for (std::size_t c = 0; c < M; ++c) grad[c] = omega[modes.partner(c)] / modes.norm_squared(c);

  VorticityState out(state.modes_ptr());
  parallel_for(out.half_size(), workers, [&](std::size_t h) {
    const std::size_t r = modes.from_half_slot(h);
    const Vec3& j = modes.wavevector(r);
    CVec3 acc = CVec3::Zero();
    for (std::size_t c = 0; c < M; ++c) {
      const auto sum = modes.index_of(modes.mode(r) + modes.mode(c));
      if (!sum) continue;
      const Vec3& k = modes.wavevector(c);
      const CVec3& g = grad[c];
      CVec3 w = omega[*sum];
      const cplx kj_g = dot(k.cross(j), g);
      const CVec3 k_x_g = cross(k, g);
      switch (which) {
        case Structure::direct:
          acc += w * kj_g - dot(k, w) * k_x_g;
          break;
        case Structure::simple:
          acc += w * kj_g + dot(j, w) * k_x_g;
          break;
        default:
          w = project_divergence_free(modes.wavevector(*sum), w);
          acc += w * kj_g + dot(j, w) * k_x_g;
          break;
      }
    }
    out.half(h) = acc;
  });
  return out;
}

ReducedOperator::ReducedOperator(const FrameSet& frames) : modes_(frames.modes_ptr()) {
  const ModeSet& modes = *modes_;
  const std::size_t M = modes.size();
  coeffs_.resize(modes.half_size() * M);
  for (std::size_t h = 0; h < modes.half_size(); ++h) {
    const Vec3& j = modes.wavevector(modes.from_half_slot(h));
    for (std::size_t c = 0; c < M; ++c) {
      const auto sum = modes.index_of(modes.mode(modes.from_half_slot(h)) + modes.mode(c));
      if (!sum) continue;
      coeffs_[h * M + c] = tilde_coefficients(j, modes.wavevector(c), frames);
    }
  }
}

ReducedState ReducedOperator::apply(const ReducedState& reduced, int workers) const {
  const ModeSet& modes = *modes_;
  const std::size_t M = modes.size();
  const auto omega = reduced.resolved();
  std::vector<CVec2> grad(M);
  for (std::size_t c = 0; c < M; ++c) {
    const CVec2& minus = omega[modes.partner(c)];
    grad[c] = CVec2(-minus(0), minus(1)) / modes.norm_squared(c);
  }
  ReducedState out(reduced.modes_ptr());
  parallel_for(out.half_size(), workers, [&](std::size_t h) {
    const std::size_t r = modes.from_half_slot(h);
    CVec2 acc = CVec2::Zero();
    for (std::size_t c = 0; c < M; ++c) {
      const auto sum = modes.index_of(modes.mode(r) + modes.mode(c));
      if (!sum) continue;
      const TildeCoefficients& tc = coeffs_[h * M + c];
      const CVec2& w = omega[*sum];
      const CVec2 yg = tc.y.cast<cplx>() * grad[c];
      const CVec2 zg = tc.z.cast<cplx>() * grad[c];
      acc += yg * w(0) + zg * w(1);
    }
    out.half(h) = acc;
  });
  return out;
}

ReducedState vector_field_reduced(const ReducedState& reduced, const FrameSet& frames, int workers) {
  return ReducedOperator(frames).apply(reduced, workers);
}

IntegrationResult integrate(const VorticityState& initial, double dt, std::size_t steps, Structure which,
                            const IntegrateOptions& options) {
  if (steps < 1) throw std::invalid_argument("integrate: steps must be >= 1");
  const std::size_t every = options.record_every == 0 ? 1 : options.record_every;
  auto field = [&](const VorticityState& s) { return vector_field_full(s, which, options.workers); };

  IntegrationResult result{initial, options.t0, {}};
  auto record = [&](std::size_t step) {
    const DiagnosticsRecord rec = diagnostics(result.final_state, result.t_final);
    result.records.push_back(rec);
    if (options.observer) options.observer(step, result.final_state, rec);
  };
  record(0);
  for (std::size_t step = 1; step <= steps; ++step) {
    try {
      result.final_state = rk4_step(result.final_state, dt, field);
    } catch (const BlowUpError& e) {
      throw IntegrationBlowUp(std::string(e.what()) + " at step " + std::to_string(step), step,
                              result.final_state, result.t_final);
    }
    result.t_final += dt;
    if (step % every == 0 || step == steps) record(step);
  }
  return result;
}

ReducedState integrate_reduced(const ReducedState& initial, double dt, std::size_t steps,
                               const ReducedOperator& op, int workers) {
  ReducedState s = initial;
  auto field = [&](const ReducedState& x) { return op.apply(x, workers); };
  for (std::size_t step = 0; step < steps; ++step) s = rk4_step(s, dt, field);
  return s;
}

}  // namespace eulerps
