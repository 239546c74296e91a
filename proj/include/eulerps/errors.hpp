#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eulerps {

/// Zero wavevector or zero mode where a nonzero one is required.
class InvalidModeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mode index outside the truncated lattice.
class OutOfRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A state expected on the divergence-free subspace is not.
class NotOnSubspaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Complex-valued result of a functional that must be real.
class InconsistentStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shear support (n * p) does not fit inside the lattice box.
class TruncationTooSmallError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its contract (e.g. span test off equilibrium).
class MisuseError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Bad or missing configuration value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite value produced during time stepping.
class BlowUpError : public std::runtime_error {
 public:
  explicit BlowUpError(const std::string& what, std::size_t step = 0)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace eulerps
