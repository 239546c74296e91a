#include "eulerps/lattice.hpp"

#include <cstdlib>

#include <json.hpp>

#include "eulerps/errors.hpp"

namespace eulerps {

AnisotropyMatrix::AnisotropyMatrix(double nu_x, double nu_y, double nu_z) : nu_{nu_x, nu_y, nu_z} {
  for (double v : nu_) {
    if (!(v > 0.0)) throw std::invalid_argument("anisotropy entries must be strictly positive");
  }
}

TruncationSpec::TruncationSpec(int N) : N_(N) {
  if (N < 1) throw std::invalid_argument("truncation N must be >= 1");
}

Vec3 wavevector(const IntVec3& a, const AnisotropyMatrix& aniso) {
  if (is_zero(a)) throw InvalidModeError("wavevector of the zero mode");
  return {aniso[0] * a[0], aniso[1] * a[1], aniso[2] * a[2]};
}

bool in_lattice(const IntVec3& a, const TruncationSpec& trunc) {
  if (is_zero(a)) return false;
  for (int c : a) {
    if (std::abs(c) > trunc.N()) return false;
  }
  return true;
}

ModeSet::ModeSet(const TruncationSpec& trunc, const AnisotropyMatrix& aniso) : trunc_(trunc), aniso_(aniso) {
  const int N = trunc.N();
  const std::size_t side = 2 * N + 1;
  modes_.reserve(side * side * side - 1);
  for (int ax = -N; ax <= N; ++ax) {
    for (int ay = -N; ay <= N; ++ay) {
      for (int az = -N; az <= N; ++az) {
        const IntVec3 a{ax, ay, az};
        if (is_zero(a)) continue;
        modes_.push_back(a);
      }
    }
  }
  wavevectors_.reserve(modes_.size());
  norms_.reserve(modes_.size());
  for (const auto& a : modes_) {
    wavevectors_.push_back(eulerps::wavevector(a, aniso_));
    norms_.push_back(wavevectors_.back().norm());
  }
}

std::optional<std::size_t> ModeSet::index_of(const IntVec3& a) const {
  if (!in_lattice(a, trunc_)) return std::nullopt;
  const long N = trunc_.N();
  const long side = 2 * N + 1;
  const long linear = ((a[0] + N) * side + (a[1] + N)) * side + (a[2] + N);
  const long center = (side * side * side - 1) / 2;
  return static_cast<std::size_t>(linear > center ? linear - 1 : linear);
}

std::size_t ModeSet::require_index(const IntVec3& a) const {
  if (is_zero(a)) throw InvalidModeError("the zero mode is excluded from the lattice");
  auto idx = index_of(a);
  if (!idx) {
    throw OutOfRangeError("mode (" + std::to_string(a[0]) + "," + std::to_string(a[1]) + "," +
                          std::to_string(a[2]) + ") outside lattice box N=" + std::to_string(N()));
  }
  return *idx;
}

std::string ModeSet::to_json() const {
  nlohmann::json j;
  j["N"] = N();
  j["aniso"] = {aniso_[0], aniso_[1], aniso_[2]};
  auto modes = nlohmann::json::array();
  for (const auto& a : modes_) modes.push_back({a[0], a[1], a[2]});
  j["modes"] = std::move(modes);
  return j.dump();
}

ModeSetPtr build_lattice(const TruncationSpec& trunc, const AnisotropyMatrix& aniso) {
  return std::make_shared<const ModeSet>(trunc, aniso);
}

}  // namespace eulerps
