#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "eulerps/errors.hpp"
#include "eulerps/structures.hpp"
#include "support/oracles.hpp"

using namespace eulerps;

namespace {

struct Rng {
  std::mt19937_64 g{12345};
  double u() { return std::uniform_real_distribution<double>(-1.0, 1.0)(g); }
  int i(int N) { return std::uniform_int_distribution<int>(-N, N)(g); }
  IntVec3 mode(int N) {
    for (;;) {
      IntVec3 a{i(N), i(N), i(N)};
      if (!is_zero(a)) return a;
    }
  }
  CVec3 c3() { return CVec3(cplx(u(), u()), cplx(u(), u()), cplx(u(), u())); }
  CVec2 c2() { return CVec2(cplx(u(), u()), cplx(u(), u())); }
};

const AnisotropyMatrix kAniso(1.0, 1.3, 0.7);

}  // namespace

TEST_CASE("blocks match the entrywise oracle") {
  Rng r;
  for (int c = 0; c < 300; ++c) {
    const Vec3 j = wavevector(r.mode(2), kAniso), k = wavevector(r.mode(2), kAniso);
    const CVec3 w = r.c3();
    CHECK((J_block(j, k, w) - oracle::J(j, k, w)).norm() < 1e-14);
    CHECK((A_block(j, k, w) - oracle::A(j, k, w)).norm() < 1e-14);
    if ((j + k).squaredNorm() > 0) {
      CHECK((Jproj_block(j, k, w) - oracle::J(j, k, oracle::project(j + k, w))).norm() < 1e-14);
    }
  }
}

TEST_CASE("projected block vanishes at j + k = 0") {
  const Vec3 j(1, 2, 0);
  CHECK(Jproj_block(j, -j, CVec3(1.0, 2.0, 3.0)) == CMat3::Zero());
}

TEST_CASE("single-mode examples") {
  // omega_{j+k} = e_z, j = e_x, k = e_y: w (k x j)^T = e_z (-e_z)^T, j.w = 0.
  const CMat3 J = J_block(Vec3(1, 0, 0), Vec3(0, 1, 0), CVec3(0.0, 0.0, 1.0));
  CMat3 expected = CMat3::Zero();
  expected(2, 2) = -1.0;
  CHECK((J - expected).norm() == 0.0);
  CHECK(to_string(parse_structure("reduced")) == "reduced");
  CHECK_THROWS(parse_structure("bogus"));
}

TEST_CASE("restricted blocks match the conjugated construction") {
  Rng r;
  const Vec3 ex = Vec3::UnitX();
  const auto modes = build_lattice(TruncationSpec(3), AnisotropyMatrix());
  const FrameSet frames(modes, ex);
  int counts[4] = {0, 0, 0, 0};
  for (int c = 0; c < 4000; ++c) {
    IntVec3 a = r.mode(3), b = r.mode(3);
    const int kind = c % 4;
    const int s = r.i(2) >= 0 ? 1 : -1;
    const int mag = 1 + (c / 4) % 3;
    if (kind == 1) a = {s * mag, 0, 0};
    if (kind == 2) b = {s * mag, 0, 0};
    if (kind == 3) b = IntVec3{s * mag, 0, 0} - a;
    if (is_zero(a) || is_zero(b) || is_zero(a + b)) continue;
    const Vec3 j = wavevector(a, AnisotropyMatrix()), k = wavevector(b, AnisotropyMatrix());
    const int parallel = int(parallel_to(j, ex)) + int(parallel_to(k, ex)) + int(parallel_to(j + k, ex));
    if (parallel > 1) continue;
    const CVec2 wt = r.c2();
    const TildeBlock t = Jtilde_block(j, k, wt, frames);
    const CMat2 ref = oracle::Jtilde(j, k, wt, ex);
    CHECK((t.value - ref).norm() <= 1e-12 * std::max(1.0, ref.norm()));
    switch (t.route) {
      case TildeRoute::generic: ++counts[0]; break;
      case TildeRoute::j_parallel: ++counts[1]; CHECK(parallel_to(j, ex)); break;
      case TildeRoute::k_parallel: ++counts[2]; CHECK(parallel_to(k, ex)); break;
      case TildeRoute::sum_parallel: ++counts[3]; CHECK(parallel_to(j + k, ex)); break;
      default: FAIL("unexpected route"); break;
    }
  }
  for (int n : counts) CHECK(n >= 100);
}

TEST_CASE("restricted block example with j along y, k along n") {
  const auto modes = build_lattice(TruncationSpec(1), AnisotropyMatrix());
  const FrameSet frames(modes, Vec3::UnitX());
  const CVec2 wt(1.0, 0.0);
  const TildeBlock t = Jtilde_block(Vec3(0, 1, 0), Vec3(1, 0, 0), wt, frames);
  const CMat2 ref = oracle::Jtilde(Vec3(0, 1, 0), Vec3(1, 0, 0), wt, Vec3::UnitX());
  CMat2 expected;
  expected << 0.0, 1.0, 0.0, 0.0;
  CHECK((ref - expected).norm() < 1e-15);
  CHECK((t.value - expected).norm() < 1e-15);
  CHECK(t.route == TildeRoute::k_parallel);
}

TEST_CASE("restricted blocks for a tilted n") {
  Rng r;
  const Vec3 n = Vec3(0.6, -1.1, 0.4);
  const auto modes = build_lattice(TruncationSpec(2), AnisotropyMatrix());
  const FrameSet frames(modes, n);
  for (int c = 0; c < 500; ++c) {
    const Vec3 j = wavevector(r.mode(2), AnisotropyMatrix()), k = wavevector(r.mode(2), AnisotropyMatrix());
    if ((j + k).squaredNorm() == 0) continue;
    const CVec2 wt = r.c2();
    const CMat2 ref = oracle::Jtilde(j, k, wt, n.normalized());
    CHECK((Jtilde_block(j, k, wt, frames).value - ref).norm() <= 1e-12 * std::max(1.0, ref.norm()));
    CHECK((Jtilde_by_conjugation(j, k, wt, frames) - ref).norm() <= 1e-12 * std::max(1.0, ref.norm()));
  }
}

TEST_CASE("several parallel vectors fall back to conjugation") {
  const auto modes = build_lattice(TruncationSpec(2), AnisotropyMatrix());
  const FrameSet frames(modes, Vec3::UnitX());
  const auto c = tilde_coefficients(Vec3(1, 0, 0), Vec3(1, 0, 0), frames);
  CHECK(c.route == TildeRoute::conjugation);
  CHECK(tilde_coefficients(Vec3(1, 1, 0), Vec3(-1, -1, 0), frames).route == TildeRoute::zero_sum);
}

TEST_CASE("global tensor is antisymmetric and exports its layout") {
  const auto modes = build_lattice(TruncationSpec(1), AnisotropyMatrix(1, 2, 1));
  const auto s = random_state(modes, 9, 1.0);
  for (Structure which : {Structure::simple, Structure::projected}) {
    const auto t = assemble_global(s, which, 2);
    CHECK(t.dimension() == 78);
    CHECK((t.matrix + t.matrix.transpose()).norm() < 1e-13 * t.matrix.norm());
    CHECK((assemble_global(s, which, 1).matrix - t.matrix).norm() == 0.0);
  }
  const auto d = assemble_global(s, Structure::direct);
  CHECK((d.matrix + d.matrix.transpose()).norm() > 1e-3);
  CHECK_THROWS(assemble_global(s, Structure::reduced));

  const FrameSet frames(modes, Vec3::UnitX());
  const auto red = to_reduced(random_divfree_state(modes, 4, 1.0), frames);
  const auto rt = assemble_global(red, frames);
  CHECK(rt.dimension() == 52);
  CHECK((rt.matrix + rt.matrix.transpose()).norm() < 1e-13 * rt.matrix.norm());

  const auto path = std::filesystem::temp_directory_path() / "eulerps_tensor_test.bin";
  const auto t = assemble_global(s, Structure::projected);
  t.write_binary(path.string());
  std::ifstream in(path, std::ios::binary);
  std::vector<double> raw(2 * 78 * 78);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size() * sizeof(double)));
  CHECK(in.gcount() == static_cast<std::streamsize>(raw.size() * sizeof(double)));
  CHECK(raw[2 * (5 * 78 + 7)] == t.matrix(5, 7).real());
  CHECK(raw[2 * (5 * 78 + 7) + 1] == t.matrix(5, 7).imag());
  std::filesystem::remove(path);
  const auto header = nlohmann::json::parse(t.header_json());
  CHECK(header.at("dimension") == 78);
  CHECK(header.at("modes").size() == 26);
}
