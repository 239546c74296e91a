#include "eulerps/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "eulerps/dynamics.hpp"
#include "eulerps/equilibria.hpp"
#include "eulerps/errors.hpp"
#include "eulerps/format.hpp"
#include "eulerps/observables.hpp"
#include "eulerps/verify.hpp"

namespace eulerps {

namespace {

using nlohmann::json;

ModeSetPtr lattice_for(const RunConfig& cfg) { return build_lattice(TruncationSpec(cfg.N), cfg.anisotropy()); }

void write_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

void emit_report(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.report.empty()) {
    out << text << '\n';
  } else {
    write_file(cfg.output.report, text + "\n");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double relative_drift(double now, double start) {
  const double d = std::abs(now - start);
  return start == 0.0 ? d : d / std::abs(start);
}

}  // namespace

Snapshot initial_state(const RunConfig& cfg, const ModeSetPtr& modes) {
  switch (cfg.initial.kind) {
    case InitialKind::random: return {random_divfree_state(modes, cfg.seed, cfg.amplitude), 0.0};
    case InitialKind::zero: return {VorticityState(modes), 0.0};
    case InitialKind::snapshot: return snapshot_from_json(read_file(cfg.initial.snapshot_path), modes);
    case InitialKind::shear: return {shear_state(cfg.initial.shear, modes), 0.0};
  }
  throw ConfigError("unhandled initial condition");
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  VerifyConfig v;
  v.N = cfg.N;
  v.aniso = cfg.anisotropy();
  v.n = cfg.n_vector;
  v.seed = cfg.seed;
  v.cases = cfg.cases;
  v.amplitude = cfg.amplitude;
  v.strict_tolerance = cfg.tolerances.strict;
  v.identity_tolerance = cfg.tolerances.identity;
  v.workers = cfg.workers;
  if (cfg.fault_injection == "j_sign") {
    // Negative control: flip the sign of the second term of J.
    v.blocks.simple = [](const Vec3& j, const Vec3& k, const CVec3& w) {
      return CMat3(w * k.cross(j).cast<cplx>().transpose() -
                   (j(0) * w(0) + j(1) * w(1) + j(2) * w(2)) * cross_matrix(k).cast<cplx>());
    };
  }
  const VerifyReport report = run_identity_suite(v);
  emit_report(cfg, report.to_json(), out);
  for (const auto& c : report.checks) {
    if (!c.passed && !cfg.output.report.empty()) out << "FAILED " << c.name << " max_residual=" << format_double(c.max_residual) << '\n';
  }
  return report.all_passed() ? kExitOk : kExitFailure;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const auto modes = lattice_for(cfg);
  const FrameSet frames(modes, cfg.n_vector);
  Snapshot snap = initial_state(cfg, modes);
  VorticityState state = std::move(snap.state);
  double t = snap.t;

  const bool reduced = cfg.structure == Structure::reduced;
  std::optional<ReducedOperator> op;
  std::optional<ReducedState> rstate;
  if (reduced) {
    op.emplace(frames);
    rstate.emplace(to_reduced(state, frames, cfg.tolerances.divergence));
    state = from_reduced(*rstate, frames);
  }

  std::ostringstream csv;
  csv << kDiagnosticsHeader << '\n';
  const DiagnosticsRecord first = diagnostics(state, t);
  csv << diagnostics_row(first) << '\n';
  double div_worst = first.amp_max > 0.0 ? first.div_max / first.amp_max : first.div_max;
  DiagnosticsRecord last = first;

  auto save_snapshot = [&](std::size_t step) {
    if (cfg.output.snapshot_dir.empty() || cfg.snapshot_every == 0) return;
    if (step % cfg.snapshot_every != 0) return;
    write_file((std::filesystem::path(cfg.output.snapshot_dir) / ("snapshot_" + std::to_string(step) + ".json")).string(),
               snapshot_to_json(state, t));
  };
  save_snapshot(0);

  for (std::size_t step = 1; step <= cfg.steps; ++step) {
    try {
      if (reduced) {
        *rstate = rk4_step(*rstate, cfg.dt, [&](const ReducedState& r) { return op->apply(r, cfg.workers); });
      } else {
        state = rk4_step(state, cfg.dt, [&](const VorticityState& s) {
          return vector_field_full(s, cfg.structure, cfg.workers);
        });
      }
    } catch (const BlowUpError& e) {
      write_file(cfg.output.last_good, snapshot_to_json(state, t));
      write_file(cfg.output.csv, csv.str());
      out << "blow-up at step " << step << " (t=" << format_double(t) << "): " << e.what()
          << "; last good state written to " << cfg.output.last_good << '\n';
      throw BlowUpError(e.what(), step);
    }
    t += cfg.dt;
    if (reduced) state = from_reduced(*rstate, frames);
    if (step % cfg.record_every == 0 || step == cfg.steps) {
      last = diagnostics(state, t);
      csv << diagnostics_row(last) << '\n';
      div_worst = std::max(div_worst, last.amp_max > 0.0 ? last.div_max / last.amp_max : last.div_max);
    }
    save_snapshot(step);
  }

  write_file(cfg.output.csv, csv.str());
  if (!cfg.output.final_snapshot.empty()) write_file(cfg.output.final_snapshot, snapshot_to_json(state, t));

  json summary{{"steps", cfg.steps},
               {"t_final", t},
               {"energy_drift", relative_drift(last.E, first.E)},
               {"helicity_drift", relative_drift(last.h, first.h)},
               {"max_relative_divergence", div_worst}};
  emit_report(cfg, summary.dump(2), out);
  return kExitOk;
}

int cmd_shear(const RunConfig& cfg, std::ostream& out) {
  if (cfg.initial.kind != InitialKind::shear) throw ConfigError("the shear command needs an initial shear spec");
  const auto modes = lattice_for(cfg);
  const FrameSet frames(modes, cfg.n_vector);
  const VorticityState state = shear_state(cfg.initial.shear, modes);

  json residuals;
  double worst = 0.0;
  for (Structure s : {Structure::direct, Structure::simple, Structure::projected, Structure::reduced}) {
    const double r = equilibrium_residual(state, s, &frames, cfg.workers);
    residuals[std::string(to_string(s))] = r;
    worst = std::max(worst, r);
  }
  const bool equilibrium = worst <= cfg.tolerances.equilibrium;

  json report{{"equilibrium_residuals", residuals}, {"equilibrium", equilibrium}};
  if (equilibrium && state.amp_max() > 0.0) {
    const auto tensor = assemble_global(state, Structure::projected, cfg.workers);
    report["gradient_span"] = json::parse(gradient_span_test(state, tensor).to_json());
  }
  if (cfg.steps > 0) {
    const auto run = integrate(state, cfg.dt, cfg.steps, cfg.structure == Structure::reduced ? Structure::projected
                                                                                             : cfg.structure,
                               IntegrateOptions{0.0, cfg.steps, cfg.workers, {}});
    const double dev = max_abs_difference(run.final_state, state);
    report["steps"] = cfg.steps;
    report["max_state_deviation"] = dev;
  }
  emit_report(cfg, report.dump(2), out);
  return equilibrium ? kExitOk : kExitFailure;
}

int cmd_rank(const RunConfig& cfg, std::ostream& out) {
  const auto modes = lattice_for(cfg);
  const VorticityState state = initial_state(cfg, modes).state;
  CorankOptions opts;
  opts.seeds = cfg.baseline_seeds;
  opts.tol = cfg.tolerances.rank;
  opts.structure = cfg.structure == Structure::reduced ? Structure::projected : cfg.structure;
  opts.workers = cfg.workers;
  const CorankReport corank = corank_comparison(state, opts);

  json report{{"corank", json::parse(corank.to_json())}};
  const double eq = equilibrium_residual(state, opts.structure, nullptr, cfg.workers);
  if (state.amp_max() > 0.0 && eq <= kEquilibriumTolerance) {
    const auto tensor = assemble_global(state, opts.structure, cfg.workers);
    report["gradient_span"] = json::parse(gradient_span_test(state, tensor).to_json());
  } else {
    report["gradient_span"] = nullptr;
    report["equilibrium_residual"] = eq;
  }
  emit_report(cfg, report.dump(2), out);
  return kExitOk;
}

int cmd_export(const RunConfig& cfg, std::ostream& out) {
  const auto modes = lattice_for(cfg);
  const VorticityState state = initial_state(cfg, modes).state;
  GlobalTensor tensor;
  if (cfg.structure == Structure::reduced) {
    const FrameSet frames(modes, cfg.n_vector);
    tensor = assemble_global(to_reduced(state, frames, cfg.tolerances.divergence), frames, cfg.workers);
  } else {
    tensor = assemble_global(state, cfg.structure, cfg.workers);
  }
  tensor.write_binary(cfg.output.tensor + ".bin");
  write_file(cfg.output.tensor + ".json", tensor.header_json() + "\n");
  out << "wrote " << cfg.output.tensor << ".bin (" << tensor.dimension() << "x" << tensor.dimension() << ")\n";
  return kExitOk;
}

}  // namespace eulerps
