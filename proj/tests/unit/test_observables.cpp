#include <doctest.h>

#include "eulerps/errors.hpp"
#include "eulerps/observables.hpp"
#include "support/oracles.hpp"

using namespace eulerps;

namespace {
ModeSetPtr lattice(int N) { return build_lattice(TruncationSpec(N), AnisotropyMatrix(1, 1.2, 0.9)); }

double max_rel(const std::vector<CVec3>& a, const std::vector<CVec3>& b) {
  double diff = 0, scale = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, (a[i] - b[i]).norm());
    scale = std::max(scale, b[i].norm());
  }
  return diff / scale;
}
}  // namespace

TEST_CASE("energy and helicity agree with the velocity-space oracles") {
  const auto m = lattice(2);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto s = random_divfree_state(m, seed, 1.0);
    CHECK(energy(s) == doctest::Approx(oracle::energy(s)).epsilon(1e-13));
    CHECK(helicity(s) == doctest::Approx(oracle::helicity(s)).epsilon(1e-13));
    CHECK(energy(s) > 0.0);
  }
}

TEST_CASE("single-harmonic values") {
  const auto m = build_lattice(TruncationSpec(1), AnisotropyMatrix());
  // omega_{+-e_x} = e_z: E = 1/2 * 2 * 1 = 1, no helicity for a real planar field.
  const auto s = set_mode(VorticityState(m), {1, 0, 0}, CVec3(0.0, 0.0, 1.0));
  CHECK(energy(s) == doctest::Approx(1.0));
  CHECK(helicity(s) == doctest::Approx(0.0));
  // ABC-like circular mode omega = (0, 1, i) at e_x carries helicity 2 * (+-1).
  const auto c = set_mode(VorticityState(m), {1, 0, 0}, CVec3(0.0, 1.0, cplx(0, 1)));
  CHECK(std::abs(helicity(c)) == doctest::Approx(4.0));
  CHECK(helicity(c) == doctest::Approx(oracle::helicity(c)));
}

TEST_CASE("analytic gradients match central differences") {
  const auto m = lattice(1);
  const double eps = 1e-5;
  for (std::uint64_t seed : {3u, 4u}) {
    const auto s = random_state(m, seed, 1.0);
    const auto gE = oracle::fd_gradient(s, [](const VorticityState& t) { return energy(t); }, eps);
    CHECK(max_rel(grad_energy(s), gE) < 1e-6);
    const auto d = random_divfree_state(m, seed, 1.0);
    const auto gh = oracle::fd_gradient(d, [](const VorticityState& t) { return helicity(t); }, eps);
    CHECK(max_rel(grad_helicity(d), gh) < 1e-6);
  }
}

TEST_CASE("reduced functionals and gradients agree with the full ones") {
  const auto m = lattice(2);
  const FrameSet frames(m, Vec3::UnitX());
  const auto s = random_divfree_state(m, 21, 1.0);
  const auto r = to_reduced(s, frames);
  CHECK(energy_reduced(r) == doctest::Approx(energy(s)).epsilon(1e-13));
  CHECK(helicity_reduced(r) == doctest::Approx(helicity(s)).epsilon(1e-13));

  // Chain rule: the reduced gradient is the lower block of R_k times the full one.
  const auto gH = grad_energy(s), gh = grad_helicity(s);
  const auto rH = grad_energy_reduced(r), rh = grad_helicity_reduced(r);
  for (std::size_t i = 0; i < m->size(); ++i) {
    const CVec3 fH = frames[i].R.cast<cplx>() * gH[i];
    const CVec3 fh = frames[i].R.cast<cplx>() * gh[i];
    CHECK((fH.tail<2>() - rH[i]).norm() < 1e-13 * std::max(1.0, rH[i].norm()));
    CHECK((fh.tail<2>() - rh[i]).norm() < 1e-13 * std::max(1.0, rh[i].norm()));
  }
}

TEST_CASE("velocity modes invert the curl") {
  const auto m = lattice(1);
  const auto s = random_divfree_state(m, 8, 1.0);
  const auto v = velocity_modes(s);
  for (std::size_t i = 0; i < m->size(); ++i) {
    const Vec3 j = m->wavevector(i);
    const CVec3 curl = cplx(0, 1) * eulerps::cross(j, v[i]);
    CHECK((curl - s.at(i)).norm() < 1e-14);
  }
  const auto d = diagnostics(s, 0.5);
  CHECK(d.t == 0.5);
  CHECK(d.E == energy(s));
  CHECK(d.amp_max == s.amp_max());
}
