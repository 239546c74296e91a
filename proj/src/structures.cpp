#include "eulerps/structures.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "eulerps/parallel.hpp"

namespace eulerps {

std::string_view to_string(Structure s) {
  switch (s) {
    case Structure::direct: return "direct";
    case Structure::simple: return "simple";
    case Structure::projected: return "projected";
    case Structure::reduced: return "reduced";
  }
  return "?";
}

Structure parse_structure(std::string_view name) {
  if (name == "direct") return Structure::direct;
  if (name == "simple") return Structure::simple;
  if (name == "projected") return Structure::projected;
  if (name == "reduced") return Structure::reduced;
  throw std::invalid_argument("unknown structure '" + std::string(name) + "'");
}

std::string_view to_string(TildeRoute r) {
  switch (r) {
    case TildeRoute::generic: return "generic";
    case TildeRoute::j_parallel: return "j_parallel";
    case TildeRoute::k_parallel: return "k_parallel";
    case TildeRoute::sum_parallel: return "sum_parallel";
    case TildeRoute::conjugation: return "conjugation";
    case TildeRoute::zero_sum: return "zero_sum";
  }
  return "?";
}

namespace {

cplx dot(const Vec3& a, const CVec3& w) { return a(0) * w(0) + a(1) * w(1) + a(2) * w(2); }

}  // namespace

CMat3 A_block(const Vec3& j, const Vec3& k, const CVec3& w) {
  const Vec3 kxj = k.cross(j);
  return w * kxj.cast<cplx>().transpose() - dot(k, w) * cross_matrix(k).cast<cplx>();
}

CMat3 J_block(const Vec3& j, const Vec3& k, const CVec3& w) {
  const Vec3 kxj = k.cross(j);
  return w * kxj.cast<cplx>().transpose() + dot(j, w) * cross_matrix(k).cast<cplx>();
}

CMat3 Jproj_block(const Vec3& j, const Vec3& k, const CVec3& w) {
  const Vec3 l = j + k;
  if (l.squaredNorm() == 0.0) return CMat3::Zero();
  return J_block(j, k, project_divergence_free(l, w));
}

CMat3 Jcheck_block(const Vec3& j, const Vec3& k, const CVec3& wcheck, const FrameSet& frames) {
  const Vec3 l = j + k;
  if (l.squaredNorm() == 0.0) return CMat3::Zero();
  const Mat3 Rj = frames.frame_of(j).R;
  const Mat3 Rk = frames.frame_of(k).R;
  const Mat3 Rl = frames.frame_of(l).R;
  const CVec3 w = Rl.transpose().cast<cplx>() * wcheck;
  return Rj.cast<cplx>() * J_block(j, k, w) * Rk.transpose().cast<cplx>();
}

CMat2 Jtilde_by_conjugation(const Vec3& j, const Vec3& k, const CVec2& wtilde, const FrameSet& frames) {
  const CVec3 wcheck(cplx(0.0), wtilde(0), wtilde(1));
  return Jcheck_block(j, k, wcheck, frames).bottomRightCorner<2, 2>();
}

namespace {

double norm2(const Vec3& a, const Vec3& n) { return a.cross(n).norm(); }

// y-coefficient, (y,y) entry, for generic j, k, j+k. n is a unit vector.
double generic_y_yy(const Vec3& j, const Vec3& k, const Vec3& n) {
  const double j2 = norm2(j, n), k2 = norm2(k, n), l2 = norm2(j + k, n);
  const Vec3 comb = k * (j2 * j2) + j * (k2 * k2);
  return -n.dot(j.cross(k).cross(comb)) / (j2 * k2 * l2);
}

TildeCoefficients generic_coefficients(const Vec3& j, const Vec3& k, const Vec3& n) {
  const Vec3 l = j + k;
  const double jn = j.norm(), kn = k.norm(), ln = l.norm();
  const double j2 = norm2(j, n), k2 = norm2(k, n), l2 = norm2(l, n);
  const Vec3 jxk = j.cross(k);
  const double njk = n.dot(jxk);

  TildeCoefficients c;
  c.route = TildeRoute::generic;
  c.y(0, 0) = generic_y_yy(j, k, n);
  c.y(0, 1) = njk * j2 * kn / (l2 * k2);
  c.y(1, 0) = njk * k2 * jn / (l2 * j2);
  c.y(1, 1) = 0.0;

  const double perp = n.cross(jxk).squaredNorm();
  c.z(0, 0) = -njk * perp / (j2 * k2 * l2 * ln);
  c.z(0, 1) = -(kn / ln) * generic_y_yy(j, -l, n);
  c.z(1, 0) = (jn / ln) * generic_y_yy(k, -l, n);
  c.z(1, 1) = njk * jn * kn * l2 / (j2 * k2 * ln);
  return c;
}

// Special tables, written in the base frame where n is along +e_x.
TildeCoefficients j_parallel_coefficients(const Vec3& j, const Vec3& k, double s) {
  const double l = (j + k).norm(), kn = k.norm();
  TildeCoefficients c;
  c.route = TildeRoute::j_parallel;
  c.y << j(0) * k(2) * s, 0.0,
        -j(0) * k(1), 0.0;
  c.z << j(0) * j(0) * k(1) * s / l, j(0) * k(2) * kn * s / l,
         j(0) * j(0) * k(2) / l, -j(0) * k(1) * kn / l;
  return c;
}

TildeCoefficients k_parallel_coefficients(const Vec3& j, const Vec3& k, double s) {
  const double l = (j + k).norm(), jn = j.norm();
  TildeCoefficients c;
  c.route = TildeRoute::k_parallel;
  c.y << -k(0) * j(2) * s, k(0) * j(1),
         0.0, 0.0;
  c.z << -k(0) * k(0) * j(1) * s / l, -k(0) * k(0) * j(2) / l,
         -k(0) * j(2) * jn * s / l, k(0) * j(1) * jn / l;
  return c;
}

TildeCoefficients sum_parallel_coefficients(const Vec3& j, const Vec3& k, double s) {
  const double lx = j(0) + k(0), jn = j.norm(), kn = k.norm();
  TildeCoefficients c;
  c.route = TildeRoute::sum_parallel;
  c.y << lx * j(2) * s, kn * j(1) * s,
         jn * j(1) * s, 0.0;
  c.z << -lx * j(1), kn * j(2),
         jn * j(2), 0.0;
  return c;
}

TildeCoefficients conjugation_coefficients(const Vec3& j, const Vec3& k, const FrameSet& frames) {
  TildeCoefficients c;
  c.route = TildeRoute::conjugation;
  c.y = Jtilde_by_conjugation(j, k, CVec2(1.0, 0.0), frames).real();
  c.z = Jtilde_by_conjugation(j, k, CVec2(0.0, 1.0), frames).real();
  return c;
}

}  // namespace

TildeCoefficients tilde_coefficients(const Vec3& j, const Vec3& k, const FrameSet& frames) {
  const Vec3 l = j + k;
  if (l.squaredNorm() == 0.0) {
    TildeCoefficients c;
    c.route = TildeRoute::zero_sum;
    return c;
  }
  const Vec3& n = frames.n();
  const bool pj = parallel_to(j, n), pk = parallel_to(k, n), pl = parallel_to(l, n);
  const int count = int(pj) + int(pk) + int(pl);
  if (count == 0) return generic_coefficients(j, k, n.normalized());
  if (count > 1) return conjugation_coefficients(j, k, frames);

  const Mat3& Q = frames.base();
  const Vec3 jb = Q * j, kb = Q * k;
  if (pj) return j_parallel_coefficients(jb, kb, jb(0) > 0.0 ? 1.0 : -1.0);
  if (pk) return k_parallel_coefficients(jb, kb, kb(0) > 0.0 ? 1.0 : -1.0);
  return sum_parallel_coefficients(jb, kb, jb(0) + kb(0) > 0.0 ? 1.0 : -1.0);
}

TildeBlock Jtilde_block(const Vec3& j, const Vec3& k, const CVec2& wtilde, const FrameSet& frames) {
  const TildeCoefficients c = tilde_coefficients(j, k, frames);
  return {c.y.cast<cplx>() * wtilde(0) + c.z.cast<cplx>() * wtilde(1), c.route};
}

std::string GlobalTensor::header_json() const {
  nlohmann::json j;
  j["structure"] = std::string(to_string(structure));
  j["block"] = block;
  j["dimension"] = dimension();
  j["layout"] = "row-major";
  j["dtype"] = "complex128-le (re, im float64 pairs)";
  j["N"] = modes->N();
  const auto& an = modes->anisotropy();
  j["aniso"] = {an[0], an[1], an[2]};
  auto arr = nlohmann::json::array();
  for (const auto& a : modes->modes()) arr.push_back({a[0], a[1], a[2]});
  j["modes"] = std::move(arr);
  return j.dump();
}

void GlobalTensor::write_binary(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  auto put = [&out](double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    char bytes[8];
    for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xffu);
    out.write(bytes, 8);
  };
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      put(matrix(r, c).real());
      put(matrix(r, c).imag());
    }
  }
}

GlobalTensor assemble_global(const VorticityState& state, Structure which, int workers) {
  if (which == Structure::reduced) {
    throw std::invalid_argument("reduced tensor needs frames; use the ReducedState overload");
  }
  const ModeSet& modes = state.modes();
  const std::size_t M = modes.size();
  GlobalTensor t;
  t.modes = state.modes_ptr();
  t.structure = which;
  t.block = 3;
  t.matrix = Eigen::MatrixXcd::Zero(3 * M, 3 * M);
  const auto omega = state.resolved();
  parallel_for(M, workers, [&](std::size_t r) {
    const Vec3& j = modes.wavevector(r);
    for (std::size_t c = 0; c < M; ++c) {
      const auto sum = modes.index_of(modes.mode(r) + modes.mode(c));
      if (!sum) continue;
      const Vec3& k = modes.wavevector(c);
      const CVec3& w = omega[*sum];
      CMat3 b;
      switch (which) {
        case Structure::direct: b = A_block(j, k, w); break;
        case Structure::simple: b = J_block(j, k, w); break;
        default: b = Jproj_block(j, k, w); break;
      }
      t.matrix.block<3, 3>(3 * r, 3 * c) = b;
    }
  });
  return t;
}

GlobalTensor assemble_global(const ReducedState& reduced, const FrameSet& frames, int workers) {
  const ModeSet& modes = reduced.modes();
  const std::size_t M = modes.size();
  GlobalTensor t;
  t.modes = reduced.modes_ptr();
  t.structure = Structure::reduced;
  t.block = 2;
  t.matrix = Eigen::MatrixXcd::Zero(2 * M, 2 * M);
  const auto omega = reduced.resolved();
  parallel_for(M, workers, [&](std::size_t r) {
    for (std::size_t c = 0; c < M; ++c) {
      const auto sum = modes.index_of(modes.mode(r) + modes.mode(c));
      if (!sum) continue;
      t.matrix.block<2, 2>(2 * r, 2 * c) =
          Jtilde_block(modes.wavevector(r), modes.wavevector(c), omega[*sum], frames).value;
    }
  });
  return t;
}

Eigen::VectorXcd flatten(const std::vector<CVec3>& field) {
  Eigen::VectorXcd v(3 * field.size());
  for (std::size_t i = 0; i < field.size(); ++i) v.segment<3>(3 * i) = field[i];
  return v;
}

}  // namespace eulerps
