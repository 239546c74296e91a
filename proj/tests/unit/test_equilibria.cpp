#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eulerps/dynamics.hpp"
#include "eulerps/equilibria.hpp"
#include "eulerps/errors.hpp"
#include "eulerps/observables.hpp"

using namespace eulerps;

namespace {

ShearFlowSpec spec(IntVec3 p, Vec3 G, std::map<int, cplx> c) {
  ShearFlowSpec s;
  s.p = p;
  s.G = G;
  s.coefficients = std::move(c);
  return s;
}

ModeSetPtr lattice(int N) { return build_lattice(TruncationSpec(N), AnisotropyMatrix()); }

}  // namespace

TEST_CASE("single-harmonic shear state") {
  const auto m = lattice(1);
  const auto s = shear_state(spec({1, 0, 0}, Vec3(0, 0, 1), {{1, 1.0}, {-1, 1.0}}), m);
  CHECK(s.at(IntVec3{1, 0, 0}) == CVec3(0.0, 0.0, 1.0));
  CHECK(s.at(IntVec3{-1, 0, 0}) == CVec3(0.0, 0.0, 1.0));
  int populated = 0;
  for (std::size_t i = 0; i < m->size(); ++i) populated += s.at(i).norm() > 0;
  CHECK(populated == 2);
}

TEST_CASE("diagonal shear populates one pair per harmonic") {
  const auto m = lattice(2);
  const auto s = shear_state(spec({1, 1, 0}, Vec3(1, -1, 0), {{1, 0.5}, {-1, 0.5}, {2, cplx(0, 0.25)}, {-2, cplx(0, -0.25)}}), m);
  CHECK(s.at(IntVec3{1, 1, 0}) == CVec3(0.5, -0.5, 0.0));
  CHECK(s.at(IntVec3{2, 2, 0}) == CVec3(cplx(0, 0.25), cplx(0, -0.25), 0.0));
  CHECK(s.at(IntVec3{-2, -2, 0}) == CVec3(cplx(0, -0.25), cplx(0, 0.25), 0.0));
  CHECK(divergence_residual(s) == 0.0);
}

TEST_CASE("invalid shear specifications") {
  const auto m = lattice(1);
  CHECK_THROWS_AS(shear_state(spec({1, 0, 0}, Vec3(1, 0, 1), {{1, 1.0}, {-1, 1.0}}), m), std::invalid_argument);
  CHECK_THROWS_AS(shear_state(spec({2, 0, 0}, Vec3(0, 0, 1), {{1, 1.0}, {-1, 1.0}}), m), std::invalid_argument);
  CHECK_THROWS_AS(shear_state(spec({1, 0, 0}, Vec3(0, 0, 1), {{1, cplx(0, 1)}, {-1, cplx(0, 1)}}), m),
                  std::invalid_argument);
  CHECK_THROWS_AS(shear_state(spec({1, 0, 0}, Vec3(0, 0, 1), {{2, 1.0}, {-2, 1.0}}), m), TruncationTooSmallError);
  // Orthogonality is checked against the physical wavevector.
  const auto aniso = build_lattice(TruncationSpec(1), AnisotropyMatrix(2, 1, 1));
  CHECK_THROWS_AS(shear_state(spec({1, 1, 0}, Vec3(1, -1, 0), {{1, 1.0}, {-1, 1.0}}), aniso), std::invalid_argument);
  CHECK_NOTHROW(shear_state(spec({1, 1, 0}, Vec3(1, -2, 0), {{1, 1.0}, {-1, 1.0}}), aniso));
}

TEST_CASE("shear states are equilibria of every structure") {
  const auto m = lattice(2);
  const FrameSet frames(m, Vec3::UnitX());
  const std::vector<ShearFlowSpec> specs{
      spec({1, 0, 0}, Vec3(0, 0, 1), {{1, 1.0}, {-1, 1.0}}),
      spec({1, 1, 0}, Vec3(1, -1, 0), {{1, 0.5}, {-1, 0.5}}),
      spec({0, 1, 2}, Vec3(1, 0, 0), {{1, cplx(0.3, 0.4)}, {-1, cplx(0.3, -0.4)}}),
      spec({1, 0, 0}, Vec3(0, 1, 1), {{1, 1.0}, {-1, 1.0}, {2, cplx(0, 2)}, {-2, cplx(0, -2)}}),
  };
  for (const auto& sp : specs) {
    const auto s = shear_state(sp, m);
    for (Structure which : {Structure::direct, Structure::simple, Structure::projected, Structure::reduced}) {
      CHECK(equilibrium_residual(s, which, &frames) <= 1e-14);
    }
  }
  const auto generic = random_divfree_state(m, 3, 1.0);
  CHECK(equilibrium_residual(generic, Structure::projected) > 0.1);
  CHECK(equilibrium_residual(VorticityState(m), Structure::projected) == 0.0);
  CHECK_THROWS_AS(equilibrium_residual(generic, Structure::reduced), MisuseError);
}

TEST_CASE("gradient span test at a single-harmonic shear") {
  const auto m = lattice(1);
  const auto s = shear_state(spec({1, 0, 0}, Vec3(0, 0, 1), {{1, 1.0}, {-1, 1.0}}), m);
  const auto t = assemble_global(s, Structure::projected);
  const auto r = gradient_span_test(s, t);
  CHECK(r.in_kernel);
  CHECK(r.kernel_residual <= 1e-15);
  // grad H points along G and grad h along p x G, so nothing of grad H is explained.
  CHECK(r.projection_residual == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.angle == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
  CHECK(r.populated_modes == 2);

  const auto generic = random_divfree_state(m, 4, 1.0);
  const auto tg = assemble_global(generic, Structure::projected);
  CHECK_FALSE(kernel_contains(tg.matrix, flatten(grad_energy(generic)), 1e-8));
  CHECK_THROWS_AS(gradient_span_test(generic, tg), MisuseError);
}

TEST_CASE("corank comparison") {
  const auto m = lattice(1);
  const auto sp = spec({1, 0, 0}, Vec3(0, 0, 1), {{1, 1.0}, {-1, 1.0}});
  const auto r = corank_comparison(sp, m);
  CHECK(r.dimension == 78);
  CHECK(r.rank + r.corank == r.dimension);
  CHECK(r.baseline_seed_independent);
  CHECK(r.kernel_enlargement > 0);
  CHECK_FALSE(r.degenerate);
  CHECK(r.amplitude == 1.0);

  const auto z = corank_comparison(VorticityState(m));
  CHECK(z.degenerate);
  CHECK(z.rank == 0);
  for (auto b : z.baseline_ranks) CHECK(b == 0);
}

TEST_CASE("shear states stay fixed under time stepping") {
  const auto m = lattice(2);
  const auto s = shear_state(spec({1, 1, 0}, Vec3(1, -1, 0), {{1, 0.5}, {-1, 0.5}}), m);
  const auto run = integrate(s, 1e-3, 200, Structure::projected);
  CHECK(max_abs_difference(run.final_state, s) <= 1e-12);
}
