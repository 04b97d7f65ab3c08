#include "hsns/fixed_point.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "hsns/calibration.hpp"
#include "hsns/error.hpp"
#include "hsns/parallel.hpp"
#include "hsns/spectral_ops.hpp"
#include "hsns/stokes.hpp"

namespace hsns {

void SolverConfig::validate() const {
  check_solver_exponents(n(), p, q, r);
  if (!(tol > 0.0)) fail(ErrorKind::Usage, "solver: tol must be positive");
  if (max_iter < 1) fail(ErrorKind::Usage, "solver: max_iter must be >= 1");
}

namespace {

TangentialField tensor_block(const TangentialField& u, const TangentialField& v, bool same) {
  const int n = u.components();
  TangentialField out(u.grid(), n * n);
  std::vector<std::vector<double>> pu(n), pv;
  for (int k = 0; k < n; ++k) pu[k] = padded_physical(u, k);
  if (!same) {
    pv.resize(n);
    for (int k = 0; k < n; ++k) pv[k] = padded_physical(v, k);
  }
  const auto& rhs = same ? pu : pv;
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      if (same && l < k) {
        out.set_slice(k * n + l, out.slice(l * n + k, 1));
        continue;
      }
      std::vector<double> prod(pu[k].size());
      for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = pu[k][i] * rhs[l][i];
      accumulate_padded(std::move(prod), out, k * n + l);
    }
  }
  return out;
}

}  // namespace

HalfSpaceField tensor_product(const HalfSpaceField& u, const HalfSpaceField& v) {
  if (!(u.grid() == v.grid())) fail(ErrorKind::Data, "tensor_product: grid mismatch");
  if (u.components() != v.components()) fail(ErrorKind::Data, "tensor_product: component mismatch");
  const int n = u.components();
  const bool same = &u == &v;
  const bool tail = u.has_tail() && v.has_tail();
  HalfSpaceField out(u.grid(), n * n, tail);
  ExceptionTrap trap;
#pragma omp parallel for schedule(dynamic)
  for (int m = 0; m < u.slab_count(); ++m) {
    trap.run([&] { out.slab(m) = tensor_block(u.slab(m), v.slab(m), same); });
  }
  trap.rethrow();
  if (tail) out.tail() = tensor_block(u.tail(), v.tail(), same);
  return out;
}

HalfSpaceField nonlinear_map(const HalfSpaceField& v, const TangentialField& a, const HalfSpaceField& F) {
  HalfSpaceField G = F;
  G -= tensor_product(v, v);
  return linear_solve(a, G);
}

double solution_norm(const HalfSpaceField& u, const SolverConfig& cfg) {
  return chemin_lerner_norm(u, cfg.x_vertical(), cfg.x_index());
}

double data_norm(const TangentialField& a, const HalfSpaceField& F, const SolverConfig& cfg) {
  return besov_norm(a, cfg.boundary_index()) + chemin_lerner_norm(F, {cfg.q}, cfg.force_index());
}

namespace {

std::string ratio_history(const IterationReport& rep) {
  std::ostringstream os;
  os << "ratios=[";
  for (std::size_t i = 0; i < rep.records.size(); ++i) os << (i ? "," : "") << rep.records[i].ratio;
  os << "]";
  return os.str();
}

}  // namespace

PicardResult picard_solve(const TangentialField& a, const HalfSpaceField& F, const SolverConfig& cfg,
                          const Calibration* calibration, const HalfSpaceField* initial, double gate_delta) {
  cfg.validate();
  if (!a.grid().same_tangential(cfg.grid)) fail(ErrorKind::Data, "picard: boundary grid mismatch");
  if (!(F.grid() == cfg.grid)) fail(ErrorKind::Data, "picard: force grid mismatch");
  IterationReport rep;
  rep.data_norm = data_norm(a, F, cfg);
  if (std::isinf(rep.data_norm)) fail(ErrorKind::NumericGate, "picard: data norm is infinite (tail with q < inf)");
  if (cfg.enforce_smallness) {
    if (!calibration) fail(ErrorKind::Usage, "picard: smallness enforcement needs a calibration");
    const double delta = gate_delta > 0.0 ? gate_delta : calibration->delta0;
    if (rep.data_norm > delta) {
      std::ostringstream os;
      os << "smallness gate delta0: data norm " << rep.data_norm << " exceeds " << delta;
      fail(ErrorKind::NumericGate, os.str());
    }
  }

  using clock = std::chrono::steady_clock;
  auto apply = [&](const HalfSpaceField& v, IterationRecord& rec) {
    if (!cfg.audit_iterates) return nonlinear_map(v, a, F);
    HalfSpaceField G = F;
    G -= tensor_product(v, v);
    const LinearSolution sol = linear_solve_detailed(a, G);
    const LinearDiagnostics diag = linear_diagnostics(a, sol, cfg.p, cfg.r);
    rec.divergence_residual = diag.divergence_residual;
    rec.trace_residual = diag.trace_residual;
    return sol.u;
  };

  const int n = cfg.n();
  HalfSpaceField previous = initial ? *initial : HalfSpaceField(cfg.grid, n);
  IterationRecord first;
  auto t0 = clock::now();
  HalfSpaceField u = apply(previous, first);
  double last_diff = 0.0;
  for (int k = 1; k <= cfg.max_iter; ++k) {
    IterationRecord rec;
    rec.k = k;
    t0 = clock::now();
    HalfSpaceField next = apply(u, rec);
    rec.norm = solution_norm(next, cfg);
    rec.diff = solution_norm(next - u, cfg);
    rec.ratio = k == 1 || last_diff == 0.0 ? 0.0 : rec.diff / last_diff;
    if (k == 1) {
      rec.divergence_residual = std::max(rec.divergence_residual, first.divergence_residual);
      rec.trace_residual = std::max(rec.trace_residual, first.trace_residual);
    }
    rec.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    rep.records.push_back(rec);
    rep.iterations = k;
    if (std::isinf(rec.norm) || std::isinf(rec.diff)) {
      fail(ErrorKind::NumericGate, "picard: infinite contraction norm (nonzero tail with q* < inf)");
    }
    if (!std::isfinite(rec.diff)) fail(ErrorKind::NumericGate, "picard: iteration diverged, " + ratio_history(rep));
    last_diff = rec.diff;
    u = std::move(next);
    if (rec.diff <= cfg.tol) {
      rep.converged = true;
      break;
    }
  }
  if (!rep.converged) {
    std::ostringstream os;
    os << "picard: no convergence within " << cfg.max_iter << " iterations, " << ratio_history(rep);
    fail(ErrorKind::NumericGate, os.str());
  }
  const ResidualReport res = residual_report(u, a, F, cfg);
  rep.fixed_point_residual = res.fixed_point;
  rep.x_norm = res.x_norm;
  rep.linf_norm = res.linf_norm;
  rep.divergence_residual = res.divergence;
  rep.trace_residual = res.trace;
  return {std::move(u), std::move(rep)};
}

ResidualReport residual_report(const HalfSpaceField& u, const TangentialField& a, const HalfSpaceField& F,
                               const SolverConfig& cfg) {
  ResidualReport rep;
  HalfSpaceField G = F;
  G -= tensor_product(u, u);
  const LinearSolution sol = linear_solve_detailed(a, G);
  const LinearDiagnostics diag = linear_diagnostics(a, sol, cfg.p, cfg.r);
  rep.fixed_point = solution_norm(u - sol.u, cfg);
  rep.divergence = diag.divergence_residual;
  rep.trace = diag.trace_residual;
  rep.x_norm = solution_norm(u, cfg);
  rep.linf_norm = chemin_lerner_norm(u, {kInfinity}, cfg.linf_index());
  return rep;
}

}  // namespace hsns
