#include "hsns/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hsns/asymptotic.hpp"
#include "hsns/error.hpp"
#include "hsns/random_fields.hpp"
#include "hsns/run_config.hpp"
#include "hsns/stokes.hpp"

namespace hsns {

void Calibration::check_matches(const SolverConfig& cfg) const {
  const Grid& g = cfg.grid;
  const bool same = n == cfg.n() && p == cfg.p && q == cfg.q && r == cfg.r && points == g.points() &&
                    slabs == g.slab_count() && period == g.period() && height == g.height();
  if (!same) fail(ErrorKind::Data, "calibration: file was produced for a different grid or exponent set");
}

Calibration calibrate(const SolverConfig& cfg, int trials, std::uint64_t seed, bool limit_system) {
  cfg.validate();
  if (trials < 1) fail(ErrorKind::Usage, "calibration: trials must be >= 1");
  const Grid& grid = cfg.grid;
  const int n = cfg.n();
  Calibration cal;
  cal.n = n;
  cal.p = cfg.p;
  cal.q = cfg.q;
  cal.r = cfg.r;
  cal.points = grid.points();
  cal.slabs = grid.slab_count();
  cal.period = grid.period();
  cal.height = grid.height();
  cal.trials = trials;
  cal.seed = seed;

  Rng rng(seed);
  const int band = default_band(grid);
  const bool force_tail = std::isinf(cfg.q);
  const bool field_tail = std::isinf(cfg.qs());
  for (int t = 0; t < trials; ++t) {
    const TangentialField a = random_tangential(grid, n, rng, band);
    const HalfSpaceField F = random_halfspace(grid, n * n, rng, band, force_tail);
    const HalfSpaceField v = random_halfspace(grid, n, rng, band, field_tail);
    const HalfSpaceField w = random_halfspace(grid, n, rng, band, field_tail);

    const double na = besov_norm(a, cfg.boundary_index());
    if (na > 0.0) cal.boundary_ratio = std::max(cal.boundary_ratio, solution_norm(boundary_operator(a), cfg) / na);
    const double nF = chemin_lerner_norm(F, {cfg.q}, cfg.force_index());
    if (nF > 0.0) cal.force_ratio = std::max(cal.force_ratio, solution_norm(force_operator(F), cfg) / nF);
    const double nv = solution_norm(v, cfg);
    const double nw = solution_norm(w, cfg);
    if (nv > 0.0 && nw > 0.0) {
      const double value = solution_norm(force_operator(tensor_product(v, w)), cfg);
      cal.bilinear_ratio = std::max(cal.bilinear_ratio, value / (nv * nw));
    }
  }
  cal.c0 = std::max(1.0, 2.0 * std::max({cal.boundary_ratio, cal.force_ratio, cal.bilinear_ratio}));
  cal.delta0 = 1.0 / (12.0 * cal.c0 * cal.c0);
  cal.eps0 = 1.0 / (4.0 * cal.c0);

  if (limit_system && n == 4) {
    cal.has_limit = true;
    const int d = grid.dim();
    const BesovIndex sol_idx{d / cfg.p - 1.0, cfg.p, cfg.r};
    const BesovIndex data_idx{d / cfg.p - 2.0, cfg.p, cfg.r};
    for (int t = 0; t < trials; ++t) {
      const TangentialField G = random_tangential(grid, n * n, rng, band);
      const TangentialField u = random_tangential(grid, n, rng, band);
      const TangentialField w = random_tangential(grid, n, rng, band);
      const double nG = besov_norm(G, data_idx);
      if (nG > 0.0) cal.limit_linear_ratio = std::max(cal.limit_linear_ratio, besov_norm(limit_operator(G), sol_idx) / nG);
      const double nu = besov_norm(u, sol_idx);
      const double nw = besov_norm(w, sol_idx);
      if (nu > 0.0 && nw > 0.0) {
        const double value = besov_norm(limit_operator(profile_tensor(u, w)), sol_idx);
        cal.limit_bilinear_ratio = std::max(cal.limit_bilinear_ratio, value / (nu * nw));
      }
    }
    cal.c1 = std::max(1.0, 2.0 * std::max(cal.limit_linear_ratio, cal.limit_bilinear_ratio));
    cal.delta1 = std::min(cal.delta0, 1.0 / (12.0 * cal.c1 * cal.c1));
    cal.eps1 = std::min(cal.eps0, 1.0 / (4.0 * cal.c1));
  }
  return cal;
}

std::string to_key_values(const Calibration& c) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "n=" << c.n << "\n"
     << "p=" << format_exponent(c.p) << "\n"
     << "q=" << format_exponent(c.q) << "\n"
     << "r=" << format_exponent(c.r) << "\n"
     << "N=" << c.points << "\n"
     << "M=" << c.slabs << "\n"
     << "L=" << c.period << "\n"
     << "X_max=" << c.height << "\n"
     << "trials=" << c.trials << "\n"
     << "seed=" << c.seed << "\n"
     << "boundary_ratio=" << c.boundary_ratio << "\n"
     << "force_ratio=" << c.force_ratio << "\n"
     << "bilinear_ratio=" << c.bilinear_ratio << "\n"
     << "c0=" << c.c0 << "\n"
     << "delta0=" << c.delta0 << "\n"
     << "eps0=" << c.eps0 << "\n"
     << "has_limit=" << (c.has_limit ? 1 : 0) << "\n";
  if (c.has_limit) {
    os << "limit_linear_ratio=" << c.limit_linear_ratio << "\n"
       << "limit_bilinear_ratio=" << c.limit_bilinear_ratio << "\n"
       << "c1=" << c.c1 << "\n"
       << "delta1=" << c.delta1 << "\n"
       << "eps1=" << c.eps1 << "\n";
  }
  return os.str();
}

Calibration calibration_from_key_values(const std::string& text) {
  const KeyValues kv = KeyValues::parse(text, "calibration");
  Calibration c;
  c.n = kv.get_int("n", 0);
  c.p = kv.get_exponent("p", 2.0);
  c.q = kv.get_exponent("q", 2.0);
  c.r = kv.get_exponent("r", 2.0);
  c.points = kv.get_int("N", 0);
  c.slabs = kv.get_int("M", 0);
  c.period = kv.get_double("L", 0.0);
  c.height = kv.get_double("X_max", 0.0);
  c.trials = kv.get_int("trials", 0);
  c.seed = kv.get_u64("seed", 0);
  c.boundary_ratio = kv.get_double("boundary_ratio", 0.0);
  c.force_ratio = kv.get_double("force_ratio", 0.0);
  c.bilinear_ratio = kv.get_double("bilinear_ratio", 0.0);
  c.c0 = kv.get_double("c0", 1.0);
  c.delta0 = kv.get_double("delta0", 0.0);
  c.eps0 = kv.get_double("eps0", 0.0);
  c.has_limit = kv.get_bool("has_limit", false);
  c.limit_linear_ratio = kv.get_double("limit_linear_ratio", 0.0);
  c.limit_bilinear_ratio = kv.get_double("limit_bilinear_ratio", 0.0);
  c.c1 = kv.get_double("c1", 1.0);
  c.delta1 = kv.get_double("delta1", 0.0);
  c.eps1 = kv.get_double("eps1", 0.0);
  if (!(c.delta0 > 0.0) || !(c.eps0 > 0.0)) fail(ErrorKind::Data, "calibration: delta0 and eps0 must be positive");
  if (c.has_limit && (!(c.delta1 > 0.0) || !(c.eps1 > 0.0))) {
    fail(ErrorKind::Data, "calibration: delta1 and eps1 must be positive");
  }
  return c;
}

void save_calibration(const Calibration& cal, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Data, "calibration: cannot write '" + path + "'");
  out << to_key_values(cal);
}

Calibration load_calibration(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Data, "calibration: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return calibration_from_key_values(ss.str());
}

}  // namespace hsns
