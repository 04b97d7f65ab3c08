#include "hsns/presets.hpp"

#include <cmath>
#include <numbers>

#include "hsns/asymptotic.hpp"
#include "hsns/calibration.hpp"
#include "hsns/error.hpp"
#include "hsns/stokes.hpp"

namespace hsns {

std::vector<std::string> preset_names() {
  return {"zero", "single-mode", "gaussian-bump", "tail-constant-force", "profile-consistent"};
}

TangentialField periodic_gaussian(const Grid& grid, double width, double shift) {
  const int d = grid.dim();
  const int N = grid.points();
  const double L = grid.period();
  std::vector<double> values(grid.modes());
  for (std::size_t i = 0; i < grid.modes(); ++i) {
    std::size_t rem = i;
    double r2 = 0.0;
    for (int a = d - 1; a >= 0; --a) {
      const double x = L * static_cast<double>(rem % N) / N;
      rem /= N;
      double dx = std::remainder(x - (0.5 * L + shift), L);
      r2 += dx * dx;
    }
    values[i] = std::exp(-r2 / (width * width));
  }
  return TangentialField::from_physical(grid, 1, values);
}

namespace {

TangentialField tail_force_shape(const Grid& grid, double width) {
  const int n = grid.dim() + 1;
  const TangentialField g = periodic_gaussian(grid, width, 0.0);
  const TangentialField h = periodic_gaussian(grid, width, 0.25 * grid.period());
  TangentialField F(grid, n * n);
  F.set_slice(tensor_index(n, 0, 1), g);
  F.set_slice(tensor_index(n, 1, 0), -1.0 * h);
  F.set_slice(tensor_index(n, n - 1, 0), h);
  F.set_slice(tensor_index(n, 1, 1), 0.5 * g);
  return F;
}

void scale_to(ProblemData& data, const SolverConfig& cfg, double target) {
  const double norm = data_norm(data.a, data.F, cfg);
  if (norm == 0.0) return;
  const double s = target / norm;
  data.a *= s;
  data.F *= s;
  if (data.fbar) *data.fbar *= s;
}

}  // namespace

ProblemData make_preset(const std::string& name, const SolverConfig& cfg, const PresetParams& params,
                        const Calibration* calibration) {
  const Grid& grid = cfg.grid;
  const int d = grid.dim();
  const int n = d + 1;
  ProblemData data{name, TangentialField(grid, n), HalfSpaceField(grid, n * n), std::nullopt, std::nullopt};
  if (calibration) calibration->check_matches(cfg);
  const bool tail_preset = name == "tail-constant-force" || name == "profile-consistent";
  if (tail_preset && !std::isinf(cfg.q)) fail(ErrorKind::Usage, "preset " + name + " needs q = inf");
  if (name == "profile-consistent" && n != 4) fail(ErrorKind::Usage, "preset profile-consistent needs n = 4");
  double delta = 0.0;
  if (calibration) {
    delta = calibration->delta0;
    if (tail_preset && calibration->has_limit) delta = calibration->delta1;
  }
  const double target = params.amplitude * delta;

  if (name == "zero") return data;
  if (name == "single-mode") {
    std::vector<int> k = params.mode;
    if (k.empty()) {
      k.assign(d, 0);
      k[0] = 2;
      if (d > 1) k[1] = 1;
    }
    if (static_cast<int>(k.size()) != d) fail(ErrorKind::Usage, "preset single-mode: mode must have n-1 entries");
    const std::size_t m = grid.mode_index(k);
    if (!grid.active(m)) fail(ErrorKind::Usage, "preset single-mode: mode must be nonzero and below Nyquist");
    const std::size_t pm = grid.partner(m);
    // a_1 = cos(k.x), a_n = sin(k.x)
    data.a(0, m) = 0.5;
    data.a(0, pm) = 0.5;
    data.a(d, m) = cplx(0.0, -0.5);
    data.a(d, pm) = cplx(0.0, 0.5);
    if (calibration) scale_to(data, cfg, target);
    else data.a *= params.amplitude;
    return data;
  }
  if (name == "gaussian-bump") {
    const TangentialField g = periodic_gaussian(grid, params.width, 0.0);
    const TangentialField h = periodic_gaussian(grid, params.width, 0.25 * grid.period());
    data.a.set_slice(0, g);
    data.a.set_slice(d, h);
    for (int m = 0; m < grid.slab_count(); ++m) {
      const double x = grid.slab_center(m);
      const double e = std::exp(-x);
      data.F.slab(m).set_slice(tensor_index(n, 0, d), e * h);
      data.F.slab(m).set_slice(tensor_index(n, d, 0), e * g);
      data.F.slab(m).set_slice(tensor_index(n, 0, 1), x * e * g);
    }
    if (calibration) scale_to(data, cfg, target);
    else {
      data.a *= params.amplitude;
      data.F *= params.amplitude;
    }
    return data;
  }
  if (name == "tail-constant-force") {
    data.fbar = tail_force_shape(grid, params.width);
    data.F = HalfSpaceField::constant(grid, *data.fbar);
    if (calibration) scale_to(data, cfg, target);
    else {
      *data.fbar *= params.amplitude;
      data.F *= params.amplitude;
    }
    return data;
  }
  if (name == "profile-consistent") {
    TangentialField fbar = tail_force_shape(grid, params.width);
    TangentialField bump(grid, n);
    {
      std::vector<int> k(d, 0);
      k[0] = params.perturbation_mode;
      const std::size_t m = grid.mode_index(k);
      if (!grid.active(m)) fail(ErrorKind::Usage, "preset profile-consistent: perturbation_mode out of range");
      const std::size_t pm = grid.partner(m);
      bump(1, m) = 0.5;
      bump(1, pm) = 0.5;
      bump(d, m) = cplx(0.0, -0.5);
      bump(d, pm) = cplx(0.0, 0.5);
    }
    const BesovIndex sol_idx = cfg.linf_index();
    const BesovIndex force_idx = cfg.force_index();
    // linear estimate of the data norm per unit force scale, then one solve
    const TangentialField ubar1 = limit_operator(fbar);
    const double per_unit =
        besov_norm(ubar1, sol_idx) * (1.0 + std::abs(params.perturbation)) + besov_norm(fbar, force_idx);
    double s = params.amplitude;
    if (calibration) s = target / per_unit;
    fbar *= s;
    SolverConfig limit_cfg = cfg;
    limit_cfg.enforce_smallness = false;
    const LimitSolution limit = limit_system_solve(fbar, limit_cfg);
    data.ubar = limit.ubar;
    data.fbar = fbar;
    data.F = HalfSpaceField::constant(grid, fbar);
    data.a = limit.ubar;
    if (params.perturbation != 0.0) {
      const double ub = besov_norm(limit.ubar, sol_idx);
      data.a.axpy(params.perturbation * ub / besov_norm(bump, sol_idx), bump);
    }
    return data;
  }
  fail(ErrorKind::Usage, "unknown preset '" + name + "'");
}

}  // namespace hsns
