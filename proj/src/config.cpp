#include "eulerps/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "eulerps/errors.hpp"

namespace eulerps {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

Vec3 read_vec3(const json& v) {
  const auto a = v.get<std::array<double, 3>>();
  return Vec3(a[0], a[1], a[2]);
}

ShearFlowSpec read_shear(const json& obj) {
  reject_unknown(obj, {"type", "p", "G", "coefficients"}, "initial (shear)");
  ShearFlowSpec spec;
  spec.p = obj.at("p").get<IntVec3>();
  spec.G = read_vec3(obj.at("G"));
  // {"1": [re, im], ...}; missing negative harmonics are filled by conjugation.
  for (const auto& [key, value] : obj.at("coefficients").items()) {
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ConfigError("shear coefficient key '" + key + "' is not an integer");
    }
    const auto c = value.get<std::array<double, 2>>();
    spec.coefficients[n] = cplx(c[0], c[1]);
  }
  for (const auto& [n, c] : std::map<int, cplx>(spec.coefficients)) {
    if (!spec.coefficients.count(-n)) spec.coefficients[-n] = std::conj(c);
  }
  return spec;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  RunConfig cfg;
  try {
    reject_unknown(doc,
                   {"N", "aniso", "n_vector", "structure", "dt", "steps", "seed", "amplitude", "cases", "workers",
                    "record_every", "snapshot_every", "baseline_seeds", "fault_injection", "tolerances", "initial",
                    "output"},
                   "config");
    read(doc, "N", cfg.N);
    read(doc, "aniso", cfg.aniso);
    if (doc.contains("n_vector")) cfg.n_vector = read_vec3(doc.at("n_vector"));
    if (doc.contains("structure")) cfg.structure = parse_structure(doc.at("structure").get<std::string>());
    read(doc, "dt", cfg.dt);
    read(doc, "steps", cfg.steps);
    read(doc, "seed", cfg.seed);
    read(doc, "amplitude", cfg.amplitude);
    read(doc, "cases", cfg.cases);
    read(doc, "workers", cfg.workers);
    read(doc, "record_every", cfg.record_every);
    read(doc, "snapshot_every", cfg.snapshot_every);
    read(doc, "baseline_seeds", cfg.baseline_seeds);
    read(doc, "fault_injection", cfg.fault_injection);

    if (doc.contains("tolerances")) {
      const json& t = doc.at("tolerances");
      reject_unknown(t, {"identity", "strict", "rank", "divergence", "equilibrium"}, "tolerances");
      read(t, "identity", cfg.tolerances.identity);
      read(t, "strict", cfg.tolerances.strict);
      read(t, "rank", cfg.tolerances.rank);
      read(t, "divergence", cfg.tolerances.divergence);
      read(t, "equilibrium", cfg.tolerances.equilibrium);
    }
    if (doc.contains("initial")) {
      const json& init = doc.at("initial");
      const auto type = init.at("type").get<std::string>();
      if (type == "random") {
        reject_unknown(init, {"type"}, "initial (random)");
        cfg.initial.kind = InitialKind::random;
      } else if (type == "zero") {
        reject_unknown(init, {"type"}, "initial (zero)");
        cfg.initial.kind = InitialKind::zero;
      } else if (type == "snapshot") {
        reject_unknown(init, {"type", "path"}, "initial (snapshot)");
        cfg.initial.kind = InitialKind::snapshot;
        cfg.initial.snapshot_path = init.at("path").get<std::string>();
      } else if (type == "shear") {
        cfg.initial.kind = InitialKind::shear;
        cfg.initial.shear = read_shear(init);
      } else {
        throw ConfigError("unknown initial condition type '" + type + "'");
      }
    }
    if (doc.contains("output")) {
      const json& o = doc.at("output");
      reject_unknown(o, {"report", "csv", "snapshot_dir", "final_snapshot", "last_good", "tensor"}, "output");
      read(o, "report", cfg.output.report);
      read(o, "csv", cfg.output.csv);
      read(o, "snapshot_dir", cfg.output.snapshot_dir);
      read(o, "final_snapshot", cfg.output.final_snapshot);
      read(o, "last_good", cfg.output.last_good);
      read(o, "tensor", cfg.output.tensor);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config value error: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  if (cfg.N < 1) throw ConfigError("N must be at least 1");
  for (double a : cfg.aniso)
    if (!(a > 0.0)) throw ConfigError("aniso entries must be positive");
  if (cfg.n_vector.squaredNorm() == 0.0 || !cfg.n_vector.allFinite()) throw ConfigError("n_vector must be nonzero");
  if (!std::isfinite(cfg.dt) || cfg.dt == 0.0) throw ConfigError("dt must be a nonzero number");
  if (!(cfg.amplitude > 0.0)) throw ConfigError("amplitude must be positive");
  if (cfg.workers < 1) throw ConfigError("workers must be at least 1");
  if (cfg.record_every < 1) throw ConfigError("record_every must be at least 1");
  if (cfg.fault_injection != "none" && cfg.fault_injection != "j_sign")
    throw ConfigError("fault_injection must be 'none' or 'j_sign'");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string apply_overrides(const std::string& text, const std::vector<std::string>& overrides) {
  json doc;
  try {
    doc = text.empty() ? json::object() : json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq), raw = item.substr(eq + 1);
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;
    json* node = &doc;
    std::size_t start = 0;
    for (std::size_t dot; (dot = key.find('.', start)) != std::string::npos; start = dot + 1) {
      node = &(*node)[key.substr(start, dot - start)];
      if (!node->is_object() && !node->is_null()) throw ConfigError("override '" + key + "' descends into a non-object");
    }
    (*node)[key.substr(start)] = value;
  }
  return doc.dump();
}

}  // namespace eulerps
