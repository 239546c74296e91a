#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eulerps/equilibria.hpp"
#include "eulerps/lattice.hpp"
#include "eulerps/structures.hpp"

namespace eulerps {

enum class InitialKind { random, snapshot, shear, zero };

struct InitialCondition {
  InitialKind kind = InitialKind::random;
  std::string snapshot_path;  // kind == snapshot
  ShearFlowSpec shear;        // kind == shear
};

struct Tolerances {
  double identity = 1e-12;
  double strict = 1e-13;
  double rank = kRankTolerance;
  double divergence = kDivergenceTolerance;
  double equilibrium = 1e-14;
};

struct OutputPaths {
  std::string report;         // JSON report; empty writes to stdout
  std::string csv = "diagnostics.csv";
  std::string snapshot_dir;   // empty disables periodic snapshots
  std::string final_snapshot;
  std::string last_good = "last_good.json";
  std::string tensor = "tensor";  // export writes <tensor>.bin and <tensor>.json
};

struct RunConfig {
  int N = 1;
  std::array<double, 3> aniso{1.0, 1.0, 1.0};
  Vec3 n_vector = Vec3::UnitX();
  Structure structure = Structure::projected;
  double dt = 1e-3;
  std::size_t steps = 1000;
  std::uint64_t seed = 20190401;
  double amplitude = 1.0;
  std::size_t cases = 1000;
  int workers = 1;
  std::size_t record_every = 1;
  std::size_t snapshot_every = 0;
  std::vector<std::uint64_t> baseline_seeds{1, 2, 3, 4, 5};
  std::string fault_injection = "none";
  Tolerances tolerances;
  InitialCondition initial;
  OutputPaths output;

  AnisotropyMatrix anisotropy() const { return AnisotropyMatrix(aniso[0], aniso[1], aniso[2]); }
};

/// Parses a JSON config document; unknown keys and type errors throw ConfigError.
RunConfig parse_config(const std::string& text);
/// Reads and parses a config file (ConfigError if unreadable).
RunConfig load_config(const std::string& path);

/// Applies "key=value" overrides to the JSON document before parsing. The value
/// is read as JSON when it parses, otherwise as a string; dotted keys reach
/// nested objects ("tolerances.rank=1e-14").
std::string apply_overrides(const std::string& text, const std::vector<std::string>& overrides);

}  // namespace eulerps
