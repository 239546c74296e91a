#include "eulerps/state.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "eulerps/errors.hpp"

namespace eulerps {

VorticityState::VorticityState(ModeSetPtr modes)
    : modes_(std::move(modes)), half_(modes_->half_size(), CVec3::Zero()) {}

CVec3 VorticityState::at(std::size_t i) const {
  if (modes_->is_canonical(i)) return half_[modes_->half_slot(i)];
  return half_[modes_->half_slot(modes_->partner(i))].conjugate();
}

CVec3 VorticityState::at(const IntVec3& a) const {
  const auto idx = modes_->index_of(a);
  return idx ? at(*idx) : CVec3::Zero();
}

void VorticityState::set(std::size_t i, const CVec3& v) {
  if (modes_->is_canonical(i)) {
    half_[modes_->half_slot(i)] = v;
  } else {
    half_[modes_->half_slot(modes_->partner(i))] = v.conjugate();
  }
}

std::vector<CVec3> VorticityState::resolved() const {
  std::vector<CVec3> out(modes_->size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i);
  return out;
}

double VorticityState::amp_max() const {
  double m = 0.0;
  for (const auto& v : half_) m = std::max(m, v.norm());
  return m;
}

bool VorticityState::all_finite() const {
  return std::all_of(half_.begin(), half_.end(), [](const CVec3& v) { return v.allFinite(); });
}

VorticityState& VorticityState::operator+=(const VorticityState& other) {
  for (std::size_t h = 0; h < half_.size(); ++h) half_[h] += other.half_[h];
  return *this;
}

VorticityState& VorticityState::operator*=(double s) {
  for (auto& v : half_) v *= s;
  return *this;
}

double max_abs_difference(const VorticityState& a, const VorticityState& b) {
  double m = 0.0;
  for (std::size_t h = 0; h < a.half_.size(); ++h) m = std::max(m, (a.half_[h] - b.half_[h]).norm());
  return m;
}

ReducedState::ReducedState(ModeSetPtr modes)
    : modes_(std::move(modes)), half_(modes_->half_size(), CVec2::Zero()) {}

CVec2 ReducedState::at(std::size_t i) const {
  if (modes_->is_canonical(i)) return half_[modes_->half_slot(i)];
  const CVec2& v = half_[modes_->half_slot(modes_->partner(i))];
  return {-std::conj(v(0)), std::conj(v(1))};
}

void ReducedState::set(std::size_t i, const CVec2& v) {
  if (modes_->is_canonical(i)) {
    half_[modes_->half_slot(i)] = v;
  } else {
    half_[modes_->half_slot(modes_->partner(i))] = CVec2(-std::conj(v(0)), std::conj(v(1)));
  }
}

std::vector<CVec2> ReducedState::resolved() const {
  std::vector<CVec2> out(modes_->size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i);
  return out;
}

double ReducedState::amp_max() const {
  double m = 0.0;
  for (const auto& v : half_) m = std::max(m, v.norm());
  return m;
}

bool ReducedState::all_finite() const {
  return std::all_of(half_.begin(), half_.end(), [](const CVec2& v) { return v.allFinite(); });
}

ReducedState& ReducedState::operator+=(const ReducedState& other) {
  for (std::size_t h = 0; h < half_.size(); ++h) half_[h] += other.half_[h];
  return *this;
}

ReducedState& ReducedState::operator*=(double s) {
  for (auto& v : half_) v *= s;
  return *this;
}

double max_abs_difference(const ReducedState& a, const ReducedState& b) {
  double m = 0.0;
  for (std::size_t h = 0; h < a.half_.size(); ++h) m = std::max(m, (a.half_[h] - b.half_[h]).norm());
  return m;
}

VorticityState set_mode(VorticityState state, const IntVec3& a, const CVec3& value) {
  state.set(state.modes().require_index(a), value);
  return state;
}

namespace {

// 53 random bits mapped to [0, 1); avoids the implementation-defined
// std::uniform_real_distribution so states are reproducible across toolchains.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

VorticityState sample_state(const ModeSetPtr& modes, std::uint64_t seed, double amplitude, bool project) {
  if (!(amplitude > 0.0)) throw std::invalid_argument("amplitude must be positive");
  std::mt19937_64 rng(seed);
  VorticityState state(modes);
  for (std::size_t h = 0; h < state.half_size(); ++h) {
    CVec3 v;
    for (int c = 0; c < 3; ++c) {
      const double re = amplitude * (2.0 * unit_uniform(rng) - 1.0);
      const double im = amplitude * (2.0 * unit_uniform(rng) - 1.0);
      v(c) = cplx(re, im);
    }
    state.half(h) = project ? project_divergence_free(modes->wavevector(modes->from_half_slot(h)), v) : v;
  }
  return state;
}

}  // namespace

VorticityState random_divfree_state(const ModeSetPtr& modes, std::uint64_t seed, double amplitude) {
  return sample_state(modes, seed, amplitude, true);
}

VorticityState random_state(const ModeSetPtr& modes, std::uint64_t seed, double amplitude) {
  return sample_state(modes, seed, amplitude, false);
}

double divergence_residual(const VorticityState& state) {
  const ModeSet& modes = state.modes();
  double m = 0.0;
  for (std::size_t h = 0; h < state.half_size(); ++h) {
    const Vec3& j = modes.wavevector(modes.from_half_slot(h));
    m = std::max(m, std::abs(j.cast<cplx>().dot(state.half(h))));
  }
  return m;
}

ReducedState to_reduced(const VorticityState& state, const FrameSet& frames, double tol) {
  const ModeSet& modes = state.modes();
  const double limit = tol * state.amp_max();
  ReducedState out(state.modes_ptr());
  for (std::size_t h = 0; h < state.half_size(); ++h) {
    const std::size_t i = modes.from_half_slot(h);
    const CVec3 checked = frames[i].R.cast<cplx>() * state.half(h);
    if (std::abs(checked(0)) > limit) {
      throw NotOnSubspaceError("state not divergence-free at mode index " + std::to_string(i) +
                               ": |checked x| = " + std::to_string(std::abs(checked(0))));
    }
    out.half(h) = checked.tail<2>();
  }
  return out;
}

VorticityState from_reduced(const ReducedState& reduced, const FrameSet& frames) {
  const ModeSet& modes = reduced.modes();
  VorticityState out(reduced.modes_ptr());
  for (std::size_t h = 0; h < reduced.half_size(); ++h) {
    const std::size_t i = modes.from_half_slot(h);
    const CVec3 checked(cplx(0.0), reduced.half(h)(0), reduced.half(h)(1));
    out.half(h) = frames[i].R.transpose().cast<cplx>() * checked;
  }
  return out;
}

std::string snapshot_to_json(const VorticityState& state, double t) {
  const ModeSet& modes = state.modes();
  nlohmann::json j;
  j["t"] = t;
  auto arr = nlohmann::json::array();
  for (std::size_t h = 0; h < state.half_size(); ++h) {
    const IntVec3& a = modes.mode(modes.from_half_slot(h));
    const CVec3& v = state.half(h);
    arr.push_back({{"a", {a[0], a[1], a[2]}},
                   {"re", {v(0).real(), v(1).real(), v(2).real()}},
                   {"im", {v(0).imag(), v(1).imag(), v(2).imag()}}});
  }
  j["modes"] = std::move(arr);
  return j.dump();
}

Snapshot snapshot_from_json(const std::string& text, const ModeSetPtr& modes) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("snapshot parse error: ") + e.what());
  }
  try {
    Snapshot snap{VorticityState(modes), j.at("t").get<double>()};
    for (const auto& entry : j.at("modes")) {
      const auto a = entry.at("a").get<IntVec3>();
      const auto re = entry.at("re").get<std::array<double, 3>>();
      const auto im = entry.at("im").get<std::array<double, 3>>();
      const std::size_t i = modes->require_index(a);
      if (!modes->is_canonical(i)) throw ConfigError("snapshot lists a non-canonical mode");
      snap.state.set(i, CVec3(cplx(re[0], im[0]), cplx(re[1], im[1]), cplx(re[2], im[2])));
    }
    return snap;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("snapshot schema error: ") + e.what());
  }
}

}  // namespace eulerps
