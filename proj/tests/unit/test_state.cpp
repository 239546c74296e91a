#include <doctest.h>

#include "eulerps/errors.hpp"
#include "eulerps/state.hpp"

using namespace eulerps;

namespace {
ModeSetPtr lattice(int N) { return build_lattice(TruncationSpec(N), AnisotropyMatrix(1, 1, 1)); }
}  // namespace

TEST_CASE("reality holds by construction") {
  const auto m = lattice(1);
  VorticityState s(m);
  const std::size_t i = *m->index_of({0, 1, -1});  // canonical
  const std::size_t p = m->partner(i);
  s.set(p, CVec3(cplx(1, 2), cplx(0, -1), cplx(3, 0)));
  CHECK(s.at(p) == CVec3(cplx(1, 2), cplx(0, -1), cplx(3, 0)));
  CHECK(s.at(i) == s.at(p).conjugate());
  CHECK(s.at(IntVec3{0, 0, 0}) == CVec3::Zero());
  CHECK(s.at(IntVec3{2, 0, 0}) == CVec3::Zero());
  const auto r = s.resolved();
  for (std::size_t k = 0; k < m->size(); ++k) CHECK(r[k] == r[m->partner(k)].conjugate());
}

TEST_CASE("set_mode example") {
  const auto m = lattice(1);
  const auto s = set_mode(VorticityState(m), {1, 0, 0}, CVec3(0.0, 0.0, 1.0));
  CHECK(s.at(IntVec3{-1, 0, 0}) == CVec3(0.0, 0.0, 1.0));
  CHECK(s.amp_max() == 1.0);
  CHECK(divergence_residual(s) == 0.0);
  CHECK_THROWS_AS(set_mode(VorticityState(m), {2, 0, 0}, CVec3::Zero()), OutOfRangeError);
}

TEST_CASE("random states are seeded, bounded and projected") {
  const auto m = lattice(2);
  const auto a = random_divfree_state(m, 42, 0.5);
  const auto b = random_divfree_state(m, 42, 0.5);
  const auto c = random_divfree_state(m, 43, 0.5);
  CHECK(max_abs_difference(a, b) == 0.0);
  CHECK(max_abs_difference(a, c) > 0.0);
  CHECK(divergence_residual(a) < 1e-15);
  const auto raw = random_state(m, 42, 0.5);
  CHECK(divergence_residual(raw) > 1e-3);
  for (const auto& v : raw.half_values())
    for (int d = 0; d < 3; ++d) CHECK(std::max(std::abs(v(d).real()), std::abs(v(d).imag())) <= 0.5);
  CHECK_THROWS(random_divfree_state(m, 1, 0.0));
}

TEST_CASE("arithmetic keeps the half-lattice representation") {
  const auto m = lattice(1);
  const auto a = random_state(m, 1, 1.0);
  const auto b = random_state(m, 2, 1.0);
  const auto s = a + 2.0 * b;
  for (std::size_t h = 0; h < s.half_size(); ++h) CHECK((s.half(h) - (a.half(h) + 2.0 * b.half(h))).norm() == 0.0);
  CHECK(a.all_finite());
}

TEST_CASE("reduced coordinates round-trip on the divergence-free subspace") {
  const auto m = lattice(2);
  for (const Vec3& n : {Vec3(1, 0, 0), Vec3(1, 2, -1)}) {
    const FrameSet frames(m, n);
    const auto s = random_divfree_state(m, 5, 1.0);
    const auto red = to_reduced(s, frames);
    CHECK(max_abs_difference(from_reduced(red, frames), s) < 1e-15);
    // Partner rule omega~_{-j} = S~ conj(omega~_j), compared with direct rotation of omega_{-j}.
    for (std::size_t i = 0; i < m->size(); ++i) {
      const CVec3 direct = frames[i].R.cast<cplx>() * s.at(i);
      CHECK((direct.tail<2>() - red.at(i)).norm() < 1e-15);
    }
  }
}

TEST_CASE("to_reduced rejects off-subspace states") {
  const auto m = lattice(1);
  const FrameSet frames(m, Vec3::UnitX());
  const auto s = random_state(m, 3, 1.0);
  CHECK_THROWS_AS(to_reduced(s, frames), NotOnSubspaceError);
}

TEST_CASE("snapshots round-trip bit-exactly") {
  const auto m = lattice(2);
  const auto s = random_divfree_state(m, 11, 0.3);
  const std::string text = snapshot_to_json(s, 0.1 + 0.2);
  const Snapshot back = snapshot_from_json(text, m);
  CHECK(back.t == 0.1 + 0.2);
  CHECK(max_abs_difference(back.state, s) == 0.0);
  CHECK(snapshot_to_json(back.state, back.t) == text);
}

TEST_CASE("snapshot schema errors") {
  const auto m = lattice(1);
  CHECK_THROWS_AS(snapshot_from_json("{", m), ConfigError);
  CHECK_THROWS_AS(snapshot_from_json(R"({"modes": []})", m), ConfigError);
  CHECK_THROWS_AS(snapshot_from_json(R"({"t": 0, "modes": [{"a": [-1,0,0], "re": [0,0,0], "im": [0,0,0]}]})", m),
                  ConfigError);
  CHECK_THROWS_AS(snapshot_from_json(R"({"t": 0, "modes": [{"a": [2,0,0], "re": [0,0,0], "im": [0,0,0]}]})", m),
                  OutOfRangeError);
}
