#include "hsns/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hsns/calibration.hpp"
#include "hsns/error.hpp"
#include "hsns/spectral_ops.hpp"
#include "hsns/stokes.hpp"

namespace hsns {

namespace {

void require_limit_dimension(const SolverConfig& cfg) {
  if (cfg.n() != 4) fail(ErrorKind::Usage, "limit system: only n = 4 is supported (the profile may not exist for n = 3)");
}

/// Rows k of G restricted to tangential columns, as a d-component field.
TangentialField row_div(const TangentialField& G, int n, int k) {
  const int d = n - 1;
  TangentialField out(G.grid(), 1);
  for (int l = 0; l < d; ++l) {
    const TangentialField col = G.slice(tensor_index(n, k, l), 1);
    out += apply_multiplier(col, [l](std::span<const double> xi, double) { return cplx(0.0, xi[l]); });
  }
  return out;
}

TangentialField tangential_part(const TangentialField& u) { return u.slice(0, u.components() - 1); }

}  // namespace

TangentialField limit_operator(const TangentialField& G) {
  const Grid& grid = G.grid();
  const int d = grid.dim();
  const int n = d + 1;
  if (G.components() != n * n) fail(ErrorKind::Data, "limit_operator: tensor must have n*n components");
  TangentialField div_tan(grid, d);
  for (int k = 0; k < d; ++k) div_tan.set_slice(k, row_div(G, n, k));
  TangentialField out(grid, n);
  out.set_slice(0, inverse_laplacian(leray_project(div_tan)));
  out.set_slice(d, inverse_laplacian(row_div(G, n, d)));
  return out;
}

TangentialField profile_tensor(const TangentialField& u, const TangentialField& v) {
  const int n = u.components();
  TangentialField out(u.grid(), n * n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) out.set_slice(k * n + l, product(u.slice(k, 1), v.slice(l, 1)));
  }
  return out;
}

double limit_pde_residual(const TangentialField& ubar, const TangentialField& Fbar, const SolverConfig& cfg) {
  const Grid& grid = ubar.grid();
  const int d = grid.dim();
  const int n = d + 1;
  const TangentialField uu = profile_tensor(ubar, ubar);
  const TangentialField balance = Fbar - uu;
  TangentialField neg_lap = apply_multiplier(ubar, [](std::span<const double>, double k) { return cplx(k * k, 0.0); });
  // -Δ'ū' + ℙ' div'(ū'⊗ū') - ℙ' div' F̄'  and  -Δ'ū_n + div'(ū_n ū') - div' F̄_n
  TangentialField div_tan(grid, d);
  for (int k = 0; k < d; ++k) div_tan.set_slice(k, row_div(balance, n, k));
  TangentialField residual = neg_lap;
  TangentialField rhs(grid, n);
  rhs.set_slice(0, leray_project(div_tan));
  rhs.set_slice(d, row_div(balance, n, d));
  residual -= rhs;
  return besov_norm(residual, {d / cfg.p - 3.0, cfg.p, cfg.r});
}

LimitSolution limit_system_solve(const TangentialField& Fbar, const SolverConfig& cfg, const Calibration* calibration) {
  require_limit_dimension(cfg);
  const int d = cfg.grid.dim();
  const BesovIndex sol_idx{d / cfg.p - 1.0, cfg.p, cfg.r};
  const BesovIndex data_idx{d / cfg.p - 2.0, cfg.p, cfg.r};
  if (cfg.enforce_smallness) {
    if (!calibration || !calibration->has_limit) fail(ErrorKind::Usage, "limit system: smallness enforcement needs a limit calibration");
    const double norm = besov_norm(Fbar, data_idx);
    if (norm > calibration->delta1) {
      std::ostringstream os;
      os << "smallness gate delta1: force norm " << norm << " exceeds " << calibration->delta1;
      fail(ErrorKind::NumericGate, os.str());
    }
  }
  LimitSolution out{limit_operator(Fbar), {}};
  LimitReport& rep = out.report;
  double last = 0.0;
  for (int k = 1; k <= cfg.max_iter; ++k) {
    TangentialField next = limit_operator(Fbar - profile_tensor(out.ubar, out.ubar));
    const double diff = besov_norm(next - out.ubar, sol_idx);
    rep.diffs.push_back(diff);
    rep.ratios.push_back(k == 1 || last == 0.0 ? 0.0 : diff / last);
    rep.iterations = k;
    out.ubar = std::move(next);
    if (!std::isfinite(diff)) fail(ErrorKind::NumericGate, "limit system: iteration diverged");
    last = diff;
    if (diff <= cfg.tol) {
      rep.converged = true;
      break;
    }
  }
  if (!rep.converged) {
    std::ostringstream os;
    os << "limit system: no convergence within " << cfg.max_iter << " iterations, ratios=[";
    for (std::size_t i = 0; i < rep.ratios.size(); ++i) os << (i ? "," : "") << rep.ratios[i];
    os << "]";
    fail(ErrorKind::NumericGate, os.str());
  }
  rep.norm = besov_norm(out.ubar, sol_idx);
  rep.pde_residual = limit_pde_residual(out.ubar, Fbar, cfg);
  const TangentialField tangential = tangential_part(out.ubar);
  const double div = besov_norm(tangential_div(tangential), {sol_idx.s - 1.0, cfg.p, cfg.r});
  const double scale = besov_norm(tangential, sol_idx);
  rep.divergence_residual = scale > 0.0 ? div / scale : div;
  return out;
}

double profile_distance(const HalfSpaceField& u, const TangentialField& ubar, double R, const BesovIndex& idx) {
  const Grid& grid = u.grid();
  if (!(R >= 0.0) || R > grid.height()) fail(ErrorKind::Usage, "profile_distance: R must lie in [0, X_max]");
  if (!u.has_tail()) fail(ErrorKind::Usage, "profile_distance: field must carry a tail");
  const HalfSpaceField diff = u - HalfSpaceField::constant(grid, ubar);
  return chemin_lerner_norm(diff, {kInfinity, R, kInfinity}, idx);
}

ProfileDecayReport profile_decay_verify(const TangentialField& a, const TangentialField& Fbar, const SolverConfig& cfg,
                               const Calibration* calibration, double theta) {
  require_limit_dimension(cfg);
  if (!std::isinf(cfg.q)) fail(ErrorKind::Usage, "asymptotics: q must be inf for an x_n-independent force");
  ProfileDecayReport rep;
  rep.theta = theta;
  const LimitSolution limit = limit_system_solve(Fbar, cfg, calibration);
  rep.limit = limit.report;
  const HalfSpaceField F = HalfSpaceField::constant(cfg.grid, Fbar);
  const double gate = calibration && calibration->has_limit ? calibration->delta1 : 0.0;
  const PicardResult sol = picard_solve(a, F, cfg, calibration, nullptr, gate);
  rep.picard = sol.report;
  const BesovIndex idx = cfg.linf_index();
  for (int i = 0; i < 8; ++i) {
    const double R = cfg.grid.height() * i / 8.0;
    rep.heights.push_back(R);
    rep.distances.push_back(profile_distance(sol.u, limit.ubar, R, idx));
  }
  rep.non_increasing = true;
  for (std::size_t i = 1; i < rep.distances.size(); ++i) {
    if (rep.distances[i] > rep.distances[i - 1]) rep.non_increasing = false;
  }
  rep.decay_ratio = rep.distances.front() > 0.0 ? rep.distances.back() / rep.distances.front() : 0.0;
  rep.decay_ok = rep.distances.back() <= theta * rep.distances.front();
  return rep;
}

}  // namespace hsns
