#include "eulerps/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/SVD>
#include <json.hpp>

#include "eulerps/dynamics.hpp"
#include "eulerps/observables.hpp"

namespace eulerps {

CMat3 StructurePair::projected(const Vec3& j, const Vec3& k, const CVec3& w) const {
  const Vec3 l = j + k;
  if (l.squaredNorm() == 0.0) return CMat3::Zero();
  return simple(j, k, project_divergence_free(l, w));
}

CMat3 StructurePair::operator()(Structure which, const Vec3& j, const Vec3& k, const CVec3& w) const {
  switch (which) {
    case Structure::simple: return simple(j, k, w);
    case Structure::projected: return projected(j, k, w);
    case Structure::direct: return A_block(j, k, w);
    default: throw std::invalid_argument("block evaluation not defined for the reduced structure");
  }
}

double check_antisymmetry(const Vec3& j, const Vec3& k, const CVec3& w, const BlockFn& block) {
  const CMat3 b = block(j, k, w);
  return (b + block(k, j, w).transpose()).norm() / std::max(1.0, b.norm());
}

double right_kernel_residual(const Vec3& j, const Vec3& k, const CVec3& w, const BlockFn& block) {
  const CMat3 b = block(j, k, w);
  return (b * k.cast<cplx>()).norm() / std::max(1.0, b.norm() * k.norm());
}

double left_kernel_residual(const Vec3& j, const Vec3& k, const CVec3& w, const BlockFn& block) {
  const CMat3 b = block(j, k, w);
  return (j.cast<cplx>().transpose() * b).norm() / std::max(1.0, b.norm() * j.norm());
}

double difference_identity_residual(const Vec3& j, const Vec3& k, const CVec3& w) {
  const CMat3 J = J_block(j, k, w);
  const Vec3 l = j + k;
  const cplx lw = l(0) * w(0) + l(1) * w(1) + l(2) * w(2);
  const CMat3 expected = lw * cross_matrix(k).cast<cplx>();
  return (J - A_block(j, k, w) - expected).norm() / std::max(1.0, J.norm());
}

JacobiResult jacobi_residual(const IntVec3& i, const IntVec3& j, const IntVec3& k, const VorticityState& state,
                             Structure which, const StructurePair& blocks) {
  const ModeSet& modes = state.modes();
  const auto& aniso = modes.anisotropy();
  const IntVec3 l = i + j + k;
  const CVec3 wl = state.at(l);

  JacobiResult out;
  out.inside = modes.index_of(i + j).has_value() && modes.index_of(j + k).has_value() &&
               modes.index_of(k + i).has_value() && (is_zero(l) || modes.index_of(l).has_value());
  const double m = std::max({wavevector(i, aniso).norm(), wavevector(j, aniso).norm(), wavevector(k, aniso).norm()});
  out.scale = std::max(1.0, wl.norm()) * m * m * m * m;

  // Z[a][b][c], flattened a*9 + b*3 + c.
  std::array<cplx, 27> Z{};
  auto term = [&](const IntVec3& a, const IntVec3& b, const IntVec3& c, auto&& accumulate) {
    const IntVec3 bc = b + c;
    if (!modes.index_of(bc)) return;  // J(b,c) is a constant (zero) block
    const Vec3 va = wavevector(a, aniso), vb = wavevector(b, aniso), vc = wavevector(c, aniso);
    const CMat3 outer = blocks(which, va, wavevector(bc, aniso), wl);
    std::array<CMat3, 3> deriv;
    for (int d = 0; d < 3; ++d) deriv[d] = blocks(which, vb, vc, CVec3::Unit(d));
    accumulate(outer, deriv);
  };
  term(i, j, k, [&](const CMat3& outer, const std::array<CMat3, 3>& D) {
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
          for (int d = 0; d < 3; ++d) Z[a * 9 + b * 3 + c] += outer(a, d) * D[d](b, c);
  });
  term(k, i, j, [&](const CMat3& outer, const std::array<CMat3, 3>& D) {
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
          for (int d = 0; d < 3; ++d) Z[a * 9 + b * 3 + c] += outer(c, d) * D[d](a, b);
  });
  term(j, k, i, [&](const CMat3& outer, const std::array<CMat3, 3>& D) {
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
          for (int d = 0; d < 3; ++d) Z[a * 9 + b * 3 + c] += outer(b, d) * D[d](c, a);
  });
  for (const cplx& z : Z) out.residual = std::max(out.residual, std::abs(z));
  return out;
}

double casimir_identity_residual(const IntVec3& j, const IntVec3& k, const VorticityState& state) {
  const auto& aniso = state.modes().anisotropy();
  const IntVec3 l = j + k;
  if (is_zero(l) || is_zero(k)) return 0.0;
  const Vec3 vj = wavevector(j, aniso), vk = wavevector(k, aniso), vl = wavevector(l, aniso);
  const CVec3 wl = state.at(l);
  const CVec3 wmk = state.at(-k);
  const CVec3 first = Jproj_block(vj, vk, wl) * (cross(vk, wmk) / vk.squaredNorm());
  const CVec3 second = Jproj_block(vj, -vl, wmk) * (cross(Vec3(-vl), wl) / vl.squaredNorm());
  // Each term is bounded by 2 |j| |omega_{j+k}| |omega_{-k}|; that bound floors the scale
  // so that two exactly vanishing terms do not turn roundoff into an O(1) ratio.
  const double scale = std::max(first.norm() + second.norm(), vj.norm() * wl.norm() * wmk.norm());
  return scale == 0.0 ? 0.0 : (first + second).norm() / scale;
}

double divergence_casimir_check(const VorticityState& state, const std::vector<CVec3>& g,
                                const StructurePair& blocks) {
  const ModeSet& modes = state.modes();
  const auto omega = state.resolved();
  double worst = 0.0;
  for (std::size_t r = 0; r < modes.size(); ++r) {
    const Vec3& j = modes.wavevector(r);
    cplx acc = 0.0;
    double mag = 0.0;
    for (std::size_t c = 0; c < modes.size(); ++c) {
      const auto sum = modes.index_of(modes.mode(r) + modes.mode(c));
      if (!sum) continue;
      const CMat3 b = blocks.projected(j, modes.wavevector(c), omega[*sum]);
      acc += (j.cast<cplx>().transpose() * b * g[c])(0);
      mag += j.norm() * b.norm() * g[c].norm();
    }
    if (mag > 0.0) worst = std::max(worst, std::abs(acc) / mag);
  }
  return worst;
}

ReducedIdentityResult reduced_identity_residual(const Vec3& j, const Vec3& k, const FrameSet& frames) {
  const Vec3 l = j + k;
  const Vec3& n = frames.n();
  ReducedIdentityResult out;
  out.flagged = parallel_to(j, n) || parallel_to(k, n) || parallel_to(l, n);

  auto coefficients = [&](const Vec3& a, const Vec3& b) {
    if (!out.flagged) return tilde_coefficients(a, b, frames);
    TildeCoefficients c;
    c.route = TildeRoute::conjugation;
    c.y = Jtilde_by_conjugation(a, b, CVec2(1.0, 0.0), frames).real();
    c.z = Jtilde_by_conjugation(a, b, CVec2(0.0, 1.0), frames).real();
    return c;
  };
  const TildeCoefficients ck = coefficients(j, k);
  const TildeCoefficients cm = coefficients(j, -l);
  const double ik = 1.0 / k.norm(), il = 1.0 / l.norm();

  double worst = 0.0, largest = 1.0;
  auto consider = [&](double a, double b) {
    worst = std::max(worst, std::abs(a + b));
    largest = std::max({largest, std::abs(a), std::abs(b)});
  };
  for (int b = 0; b < 2; ++b) {
    consider(ik * ck.y(b, 0), il * cm.z(b, 1));
    consider(ik * ck.y(b, 1), il * cm.y(b, 1));
    consider(ik * ck.z(b, 0), il * cm.z(b, 0));
  }
  out.residual = worst / largest;
  return out;
}

double cross_check_tilde(const Vec3& j, const Vec3& k, const CVec2& wtilde, const FrameSet& frames) {
  const CMat2 oracle = Jtilde_by_conjugation(j, k, wtilde, frames);
  const CMat2 tables = Jtilde_block(j, k, wtilde, frames).value;
  return (tables - oracle).norm() / std::max(1.0, oracle.norm());
}

double tilde_antisymmetry(const Vec3& j, const Vec3& k, const FrameSet& frames) {
  const TildeCoefficients a = tilde_coefficients(j, k, frames);
  const TildeCoefficients b = tilde_coefficients(k, j, frames);
  return (a.y + b.y.transpose()).norm() + (a.z + b.z.transpose()).norm();
}

RankReport poisson_rank(const Eigen::MatrixXcd& tensor, double tol) {
  RankReport r;
  if (tensor.size() == 0) return r;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(tensor);
  r.singular_values = svd.singularValues();
  const Eigen::Index dim = tensor.rows();
  const double smax = r.singular_values.size() ? r.singular_values(0) : 0.0;
  if (smax == 0.0) {
    r.rank = 0;
  } else {
    const double threshold = tol * smax * static_cast<double>(dim);
    r.rank = (r.singular_values.array() > threshold).count();
  }
  r.corank = dim - r.rank;
  return r;
}

RankReport poisson_rank(const GlobalTensor& tensor, double tol) { return poisson_rank(tensor.matrix, tol); }

double kernel_residual(const Eigen::MatrixXcd& tensor, const Eigen::VectorXcd& covector) {
  const double denom = tensor.norm() * covector.norm();
  if (denom == 0.0) return 0.0;
  return (tensor * covector).norm() / denom;
}

bool kernel_contains(const Eigen::MatrixXcd& tensor, const Eigen::VectorXcd& covector, double tol) {
  return kernel_residual(tensor, covector) <= tol;
}

// ---------------------------------------------------------------------------

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["N"] = N;
  j["passed"] = all_passed();
  auto arr = nlohmann::json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name},
                   {"max_residual", c.max_residual},
                   {"tolerance", c.tolerance},
                   {"cases", c.cases},
                   {"passed", c.passed},
                   {"worst_case", c.worst_case}});
  }
  j["checks"] = std::move(arr);
  auto meas = nlohmann::json::array();
  for (const auto& m : measurements) {
    meas.push_back({{"name", m.name}, {"value", m.value}, {"cases", m.cases}, {"note", m.note}});
  }
  j["measurements"] = std::move(meas);
  return j.dump(2);
}

namespace {

std::string describe(const IntVec3& a) {
  std::ostringstream os;
  os << "(" << a[0] << "," << a[1] << "," << a[2] << ")";
  return os.str();
}

class Sweep {
 public:
  Sweep(std::string name, double tol) { result_.name = std::move(name); result_.tolerance = tol; }
  void add(double residual, const std::string& where) {
    ++result_.cases;
    // Written so that NaN counts as worse than anything.
    if (!(residual <= result_.max_residual)) {
      result_.max_residual = residual;
      result_.worst_case = where;
    }
    if (!(residual <= result_.tolerance)) result_.passed = false;
  }
  std::size_t done_count() const { return result_.cases; }
  CheckResult done() && { return std::move(result_); }

 private:
  CheckResult result_;
};

struct Sampler {
  std::mt19937_64 rng;
  const ModeSet& modes;
  double amplitude;

  std::size_t index() { return static_cast<std::size_t>(rng() % modes.size()); }
  const IntVec3& mode() { return modes.mode(index()); }
  double uniform() { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; }
  CVec3 complex3() {
    CVec3 v;
    for (int c = 0; c < 3; ++c) v(c) = amplitude * cplx(uniform(), uniform());
    return v;
  }
  CVec2 complex2() { return amplitude * CVec2(cplx(uniform(), uniform()), cplx(uniform(), uniform())); }
};

}  // namespace

VerifyReport run_identity_suite(const VerifyConfig& cfg) {
  const auto modes = build_lattice(TruncationSpec(cfg.N), cfg.aniso);
  const FrameSet frames(modes, cfg.n);
  const auto& aniso = modes->anisotropy();
  Sampler s{std::mt19937_64(cfg.seed), *modes, cfg.amplitude};
  const StructurePair& blocks = cfg.blocks;
  BlockFn simple = blocks.simple;
  BlockFn projected = [&blocks](const Vec3& j, const Vec3& k, const CVec3& w) { return blocks.projected(j, k, w); };

  VerifyReport report;
  report.seed = cfg.seed;
  report.N = cfg.N;

  // Block-level identities.
  {
    Sweep anti_s("check_antisymmetry/simple", cfg.strict_tolerance), anti_p("check_antisymmetry/projected", cfg.strict_tolerance);
    Sweep rk_s("right_kernel_simple", cfg.strict_tolerance), lk_s("left_kernel_simple", cfg.strict_tolerance);
    Sweep rk_p("right_kernel_projected", cfg.strict_tolerance), lk_p("left_kernel_projected", cfg.strict_tolerance);
    Sweep diff("difference_identity", cfg.strict_tolerance);
    for (std::size_t c = 0; c < cfg.cases; ++c) {
      const IntVec3 a = s.mode(), b = s.mode();
      const Vec3 j = wavevector(a, aniso), k = wavevector(b, aniso);
      const CVec3 w = s.complex3();
      const std::string where = "j=" + describe(a) + " k=" + describe(b);
      anti_s.add(check_antisymmetry(j, k, w, simple), where);
      anti_p.add(check_antisymmetry(j, k, w, projected), where);
      rk_s.add(right_kernel_residual(j, k, w, simple), where);
      lk_s.add(left_kernel_residual(j, k, w, simple), where);
      rk_p.add(right_kernel_residual(j, k, w, projected), where);
      lk_p.add(left_kernel_residual(j, k, w, projected), where);
      const CMat3 J = simple(j, k, w);
      const Vec3 l = j + k;
      const cplx lw = l(0) * w(0) + l(1) * w(1) + l(2) * w(2);
      diff.add((J - A_block(j, k, w) - lw * cross_matrix(k).cast<cplx>()).norm() / std::max(1.0, J.norm()), where);
    }
    for (Sweep* sw : {&anti_s, &anti_p, &rk_s, &lk_s, &rk_p, &lk_p, &diff}) report.checks.push_back(std::move(*sw).done());
  }

  // Field-level agreement and subspace invariance.
  {
    const std::size_t states = std::max<std::size_t>(1, std::min<std::size_t>(cfg.cases / 100, 10));
    Sweep agree("direct_vs_simple_field", cfg.strict_tolerance);
    Sweep inv_s("invariant_subspace_simple", cfg.strict_tolerance);
    Sweep inv_p("invariant_subspace_projected", cfg.strict_tolerance);
    for (std::size_t t = 0; t < states; ++t) {
      const auto st = random_divfree_state(modes, s.rng(), cfg.amplitude);
      const auto fd = vector_field_full(st, Structure::direct, cfg.workers);
      const auto fs = vector_field_full(st, Structure::simple, cfg.workers);
      const double scale = std::max(fs.amp_max(), std::numeric_limits<double>::min());
      agree.add(max_abs_difference(fd, fs) / scale, "state " + std::to_string(t));
      inv_s.add(divergence_residual(fs) / scale, "state " + std::to_string(t));
      const auto arb = random_state(modes, s.rng(), cfg.amplitude);
      const auto fp = vector_field_full(arb, Structure::projected, cfg.workers);
      inv_p.add(divergence_residual(fp) / std::max(fp.amp_max(), std::numeric_limits<double>::min()),
                "arbitrary state " + std::to_string(t));
    }
    report.checks.push_back(std::move(agree).done());
    report.checks.push_back(std::move(inv_s).done());
    report.checks.push_back(std::move(inv_p).done());
  }

  // Jacobi identity.
  {
    Sweep jac_s("jacobi_simple_divfree", cfg.identity_tolerance);
    Sweep jac_p("jacobi_projected_arbitrary", cfg.identity_tolerance);
    Sweep taint("jacobi_simple_offsubspace_linearity", 0.01);
    double truncated_max = 0.0, taint_min = std::numeric_limits<double>::infinity();
    std::size_t truncated = 0, degenerate = 0;
    const auto divfree = random_divfree_state(modes, s.rng(), cfg.amplitude);
    const auto arbitrary = random_state(modes, s.rng(), cfg.amplitude);
    // Most random triples leave the box at small N; keep drawing until enough land inside.
    for (std::size_t attempt = 0; jac_s.done_count() < cfg.cases && attempt < 100 * cfg.cases; ++attempt) {
      const IntVec3 i = s.mode(), j = s.mode(), k = s.mode();
      const std::string where = "i=" + describe(i) + " j=" + describe(j) + " k=" + describe(k);
      const JacobiResult rs = jacobi_residual(i, j, k, divfree, Structure::simple, blocks);
      const JacobiResult rp = jacobi_residual(i, j, k, arbitrary, Structure::projected, blocks);
      if (!rs.inside) {
        ++truncated;
        truncated_max = std::max({truncated_max, rs.residual / rs.scale, rp.residual / rp.scale});
        continue;
      }
      jac_s.add(rs.residual / rs.scale, where);
      jac_p.add(rp.residual / rp.scale, where);

      const IntVec3 l = i + j + k;
      if (is_zero(l)) continue;
      const std::size_t li = modes->require_index(l);
      const Vec3 vl = modes->wavevector(li);
      auto with_divergence = [&](double d) {
        VorticityState st = divfree;
        st.set(li, st.at(li) + (d / vl.squaredNorm()) * vl.cast<cplx>());
        return jacobi_residual(i, j, k, st, Structure::simple, blocks).residual;
      };
      const double z1 = with_divergence(1.0), z10 = with_divergence(10.0);
      if (z1 <= 1e-10 * rs.scale) {
        ++degenerate;
        continue;
      }
      taint_min = std::min(taint_min, z1);
      taint.add(std::abs(z10 / z1 - 10.0) / 10.0, where);
    }
    report.checks.push_back(std::move(jac_s).done());
    report.checks.push_back(std::move(jac_p).done());
    report.checks.push_back(std::move(taint).done());
    report.measurements.push_back({"jacobi_truncated_triples_max", truncated_max, truncated,
                                   "triples with an intermediate sum outside the box; no pass/fail claim"});
    report.measurements.push_back({"jacobi_simple_taint_min_per_unit_divergence",
                                   std::isfinite(taint_min) ? taint_min : 0.0, degenerate,
                                   "minimum |Z| at unit (i+j+k).omega; cases = triples where Z vanishes identically"});
  }

  // Helicity and divergence Casimirs.
  {
    Sweep cas("casimir_helicity_identity", cfg.identity_tolerance);
    const auto arbitrary = random_state(modes, s.rng(), cfg.amplitude);
    const auto divfree = random_divfree_state(modes, s.rng(), cfg.amplitude);
    for (std::size_t c = 0; c < cfg.cases; ++c) {
      const IntVec3 j = s.mode(), k = s.mode();
      if (is_zero(j + k)) continue;
      const std::string where = "j=" + describe(j) + " k=" + describe(k);
      cas.add(casimir_identity_residual(j, k, c % 2 ? arbitrary : divfree), where);
    }
    report.checks.push_back(std::move(cas).done());

    Sweep kern("helicity_in_projected_kernel", cfg.identity_tolerance);
    Sweep div("divergence_casimirs", cfg.strict_tolerance);
    const std::size_t states = std::max<std::size_t>(1, std::min<std::size_t>(cfg.cases / 200, 5));
    for (std::size_t t = 0; t < states; ++t) {
      const auto st = random_divfree_state(modes, s.rng(), cfg.amplitude);
      const auto tensor = assemble_global(st, Structure::projected, cfg.workers);
      kern.add(kernel_residual(tensor.matrix, flatten(grad_helicity(st))), "divfree state " + std::to_string(t));
      const auto arb = random_state(modes, s.rng(), cfg.amplitude);
      std::vector<CVec3> g(modes->size());
      for (auto& v : g) v = s.complex3();
      div.add(divergence_casimir_check(arb, g, blocks), "arbitrary state " + std::to_string(t));
      div.add(divergence_casimir_check(arb, grad_energy(arb), blocks), "grad H, state " + std::to_string(t));
    }
    report.checks.push_back(std::move(kern).done());
    report.checks.push_back(std::move(div).done());
  }

  // Restricted structure.
  {
    Sweep red("reduced_identities", cfg.identity_tolerance);
    Sweep anti("tilde_antisymmetry", cfg.identity_tolerance);
    std::size_t flagged = 0;
    double flagged_max = 0.0;
    for (std::size_t c = 0; c < cfg.cases; ++c) {
      const IntVec3 a = s.mode(), b = s.mode();
      if (is_zero(a + b)) continue;
      const Vec3 j = wavevector(a, aniso), k = wavevector(b, aniso);
      const std::string where = "j=" + describe(a) + " k=" + describe(b);
      const auto r = reduced_identity_residual(j, k, frames);
      if (r.flagged) {
        ++flagged;
        flagged_max = std::max(flagged_max, r.residual);
      } else {
        red.add(r.residual, where);
      }
      anti.add(tilde_antisymmetry(j, k, frames), where);
    }
    report.checks.push_back(std::move(red).done());
    report.checks.push_back(std::move(anti).done());
    report.measurements.push_back({"reduced_identities_flagged_max", flagged_max, flagged,
                                   "pairs touching an n-parallel mode, evaluated via conjugation"});

    Sweep generic("tilde_cross_check_generic", cfg.identity_tolerance);
    Sweep jpar("tilde_cross_check_j_parallel", cfg.identity_tolerance);
    Sweep kpar("tilde_cross_check_k_parallel", cfg.identity_tolerance);
    Sweep lpar("tilde_cross_check_sum_parallel", cfg.identity_tolerance);
    const Vec3& n = frames.n();
    const bool axis_n = parallel_to(n, Vec3::UnitX()) || parallel_to(n, Vec3::UnitY()) || parallel_to(n, Vec3::UnitZ());
    std::vector<IntVec3> axis_modes;
    for (const auto& a : modes->modes()) {
      if (parallel_to(wavevector(a, aniso), n)) axis_modes.push_back(a);
    }
    const std::size_t special_target = std::max<std::size_t>(100, cfg.cases / 10);
    std::size_t guard = 0;
    while ((generic.done_count() < cfg.cases ||
            (axis_n && !axis_modes.empty() &&
             (jpar.done_count() < special_target || kpar.done_count() < special_target ||
              lpar.done_count() < special_target))) &&
           guard++ < 200 * cfg.cases) {
      IntVec3 a = s.mode(), b = s.mode();
      const int kind = static_cast<int>(s.rng() % 4);
      if (axis_n && !axis_modes.empty() && kind > 0) {
        const IntVec3& p = axis_modes[s.rng() % axis_modes.size()];
        if (kind == 1) a = p;
        if (kind == 2) b = p;
        if (kind == 3) b = p - a;  // sum parallel; k may leave the box, blocks are still defined
      }
      if (is_zero(a) || is_zero(b) || is_zero(a + b)) continue;
      const Vec3 j = wavevector(a, aniso), k = wavevector(b, aniso);
      const auto route = tilde_coefficients(j, k, frames).route;
      const std::string where = "j=" + describe(a) + " k=" + describe(b);
      const double r = cross_check_tilde(j, k, s.complex2(), frames);
      switch (route) {
        case TildeRoute::generic: if (generic.done_count() < cfg.cases) generic.add(r, where); break;
        case TildeRoute::j_parallel: if (jpar.done_count() < special_target) jpar.add(r, where); break;
        case TildeRoute::k_parallel: if (kpar.done_count() < special_target) kpar.add(r, where); break;
        case TildeRoute::sum_parallel: if (lpar.done_count() < special_target) lpar.add(r, where); break;
        default: break;
      }
    }
    for (Sweep* sw : {&generic, &jpar, &kpar, &lpar}) report.checks.push_back(std::move(*sw).done());
  }
  return report;
}

}  // namespace eulerps
