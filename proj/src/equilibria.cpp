#include "eulerps/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/QR>
#include <json.hpp>

#include "eulerps/dynamics.hpp"
#include "eulerps/errors.hpp"
#include "eulerps/observables.hpp"

namespace eulerps {

void ShearFlowSpec::validate(const AnisotropyMatrix& aniso) const {
  if (is_zero(p)) throw std::invalid_argument("shear direction p must be nonzero");
  if (std::gcd(std::gcd(std::abs(p[0]), std::abs(p[1])), std::abs(p[2])) != 1)
    throw std::invalid_argument("shear direction p must have coprime components");
  const Vec3 wp = wavevector(p, aniso);
  if (wp.dot(G) != 0.0) throw std::invalid_argument("shear amplitude G must be orthogonal to p");
  for (const auto& [n, c] : coefficients) {
    if (n == 0) throw std::invalid_argument("profile coefficient c_0 is not allowed");
    const auto partner = coefficients.find(-n);
    if (partner == coefficients.end() || partner->second != std::conj(c))
      throw std::invalid_argument("profile must satisfy c_{-n} = conj(c_n) for n = " + std::to_string(n));
  }
}

VorticityState shear_state(const ShearFlowSpec& spec, const ModeSetPtr& modes) {
  spec.validate(modes->anisotropy());
  VorticityState state(modes);
  for (const auto& [n, c] : spec.coefficients) {
    if (n < 0 || c == cplx(0.0)) continue;
    const IntVec3 a{n * spec.p[0], n * spec.p[1], n * spec.p[2]};
    const auto idx = modes->index_of(a);
    if (!idx) {
      throw TruncationTooSmallError("shear harmonic n = " + std::to_string(n) + " lies outside the box N = " +
                                    std::to_string(modes->N()));
    }
    state.set(*idx, c * spec.G.cast<cplx>());
  }
  return state;
}

double equilibrium_residual(const VorticityState& state, Structure which, const FrameSet* frames, int workers) {
  const double amp = state.amp_max();
  if (amp == 0.0) return 0.0;
  if (which == Structure::reduced) {
    if (!frames) throw MisuseError("the reduced equilibrium residual needs a frame set");
    const ReducedState reduced = to_reduced(state, *frames);
    return vector_field_reduced(reduced, *frames, workers).amp_max() / reduced.amp_max();
  }
  return vector_field_full(state, which, workers).amp_max() / amp;
}

GradientSpanReport gradient_span_test(const VorticityState& state, const GlobalTensor& tensor, double tol) {
  if (tensor.structure == Structure::reduced) throw MisuseError("gradient span test needs a full-coordinate tensor");
  const double eq = equilibrium_residual(state, tensor.structure);
  if (!(eq <= tol)) throw MisuseError("gradient span test requires an equilibrium (residual " + std::to_string(eq) + ")");

  const ModeSet& modes = state.modes();
  const Eigen::VectorXcd gH = flatten(grad_energy(state));
  const Eigen::VectorXcd gh = flatten(grad_helicity(state));
  GradientSpanReport r;
  r.kernel_residual = kernel_residual(tensor.matrix, gH);
  r.in_kernel = r.kernel_residual <= tol;

  const Eigen::Index dim = static_cast<Eigen::Index>(3 * modes.size());
  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(dim, static_cast<Eigen::Index>(modes.size()) + 1);
  basis.col(0) = gh;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    basis.block(3 * static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i) + 1, 3, 1) =
        modes.wavevector(i).cast<cplx>();
  }
  const double norm_H = gH.norm();
  if (norm_H > 0.0) {
    const Eigen::VectorXcd coef = basis.colPivHouseholderQr().solve(gH);
    r.projection_residual = (gH - basis * coef).norm() / norm_H;
  }

  cplx inner = 0.0;
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (state.at(i).norm() == 0.0) continue;
    ++r.populated_modes;
    const auto a = gH.segment<3>(3 * static_cast<Eigen::Index>(i));
    const auto b = gh.segment<3>(3 * static_cast<Eigen::Index>(i));
    inner += a.dot(b);
    na += a.squaredNorm();
    nb += b.squaredNorm();
  }
  if (na > 0.0 && nb > 0.0) r.angle = std::acos(std::min(1.0, std::abs(inner) / std::sqrt(na * nb)));
  return r;
}

std::string GradientSpanReport::to_json() const {
  return nlohmann::json{{"in_kernel", in_kernel},
                        {"kernel_residual", kernel_residual},
                        {"projection_residual", projection_residual},
                        {"angle", angle},
                        {"populated_modes", populated_modes}}
      .dump(2);
}

CorankReport corank_comparison(const VorticityState& state, const CorankOptions& options) {
  CorankReport r;
  r.seeds = options.seeds;
  r.amplitude = state.amp_max();
  const auto tensor = assemble_global(state, options.structure, options.workers);
  const auto own = poisson_rank(tensor, options.tol);
  r.dimension = tensor.dimension();
  r.rank = own.rank;
  r.corank = own.corank;
  if (r.amplitude == 0.0) {
    r.degenerate = true;
    r.baseline_ranks.assign(options.seeds.size(), 0);
    r.baseline_corank = r.dimension;
    return r;
  }
  for (std::size_t s = 0; s < options.seeds.size(); ++s) {
    auto base = random_divfree_state(state.modes_ptr(), options.seeds[s], 1.0);
    base *= r.amplitude / base.amp_max();
    const auto rank = poisson_rank(assemble_global(base, options.structure, options.workers), options.tol);
    r.baseline_ranks.push_back(rank.rank);
    r.baseline_corank = std::max(r.baseline_corank, rank.corank);
    if (rank.rank != r.baseline_ranks.front()) r.baseline_seed_independent = false;
  }
  r.kernel_enlargement = r.corank - r.baseline_corank;
  return r;
}

CorankReport corank_comparison(const ShearFlowSpec& spec, const ModeSetPtr& modes, const CorankOptions& options) {
  return corank_comparison(shear_state(spec, modes), options);
}

std::string CorankReport::to_json() const {
  return nlohmann::json{{"dimension", dimension},
                        {"rank", rank},
                        {"corank", corank},
                        {"seeds", seeds},
                        {"baseline_ranks", baseline_ranks},
                        {"baseline_corank", baseline_corank},
                        {"baseline_seed_independent", baseline_seed_independent},
                        {"kernel_enlargement", kernel_enlargement},
                        {"degenerate", degenerate},
                        {"amplitude", amplitude}}
      .dump(2);
}

}  // namespace eulerps
