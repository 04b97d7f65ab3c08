#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hsns/asymptotic.hpp"
#include "hsns/besov.hpp"
#include "hsns/calibration.hpp"
#include "hsns/error.hpp"
#include "hsns/field_file.hpp"
#include "hsns/fixed_point.hpp"
#include "hsns/parallel.hpp"
#include "hsns/presets.hpp"
#include "hsns/run_config.hpp"
#include "hsns/stokes.hpp"
#include "hsns/verify.hpp"

namespace {

using namespace hsns;

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return num(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return num(*d);
    return *d;
  }
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

class Output {
 public:
  Output(std::string dir, std::string format) : dir_(std::move(dir)), format_(std::move(format)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) fail(ErrorKind::Usage, "output: cannot create directory '" + dir_ + "'");
  }

  std::string path(const std::string& name) const { return (std::filesystem::path(dir_) / name).string(); }

  void table(const std::string& stem, const Table& t) const {
    const bool csv = format_ == "csv";
    std::ofstream out(path(stem + (csv ? ".csv" : ".jsonl")));
    if (!out) fail(ErrorKind::Usage, "output: cannot write " + stem);
    if (csv) {
      for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << t.columns[c];
      out << '\n';
      for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell_text(row[c]);
        out << '\n';
      }
    } else {
      for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t c = 0; c < row.size(); ++c) obj[t.columns[c]] = cell_json(row[c]);
        out << obj.dump() << '\n';
      }
    }
  }

  void summary(const std::vector<std::pair<std::string, std::string>>& entries) const {
    std::ofstream out(path("summary.txt"));
    for (const auto& [k, v] : entries) {
      out << k << '=' << v << '\n';
      std::cout << k << '=' << v << '\n';
    }
  }

 private:
  std::string dir_;
  std::string format_;
};

struct Flags {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
};

RunConfig load_run_config(const Flags& flags) {
  const KeyValues kv = flags.config.empty() ? KeyValues::parse("", "defaults") : KeyValues::load(flags.config);
  RunConfig cfg = run_config_from(kv);
  if (flags.out) cfg.out_dir = *flags.out;
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.format) cfg.format = *flags.format;
  return cfg;
}

/// Loads the calibration file when it exists, otherwise computes and stores it.
std::optional<Calibration> obtain_calibration(const RunConfig& cfg, bool limit_system) {
  if (cfg.calibration_file.empty()) return std::nullopt;
  const SolverConfig solver = cfg.solver();
  if (std::filesystem::exists(cfg.calibration_file)) {
    Calibration cal = load_calibration(cfg.calibration_file);
    cal.check_matches(solver);
    if (!limit_system || cal.has_limit) return cal;
  }
  Calibration cal = calibrate(solver, cfg.calibration_trials, cfg.seed, limit_system);
  save_calibration(cal, cfg.calibration_file);
  return cal;
}

PresetParams preset_params(const RunConfig& cfg) {
  PresetParams p;
  p.amplitude = cfg.amplitude;
  p.mode = cfg.mode;
  p.width = cfg.width;
  p.perturbation = cfg.perturbation;
  p.perturbation_mode = cfg.perturbation_mode;
  return p;
}

ProblemData problem_data(const RunConfig& cfg, const Calibration* cal) {
  const SolverConfig solver = cfg.solver();
  if (cfg.boundary_file.empty() && cfg.force_file.empty()) return make_preset(cfg.preset, solver, preset_params(cfg), cal);
  const Grid grid = cfg.grid();
  const int n = cfg.n;
  ProblemData data{"files", TangentialField(grid, n), HalfSpaceField(grid, n * n), std::nullopt, std::nullopt};
  if (!cfg.boundary_file.empty()) data.a = load_boundary(cfg.boundary_file, grid);
  if (!cfg.force_file.empty()) data.F = load_field(cfg.force_file, grid);
  if (data.a.components() != n) fail(ErrorKind::Data, "boundary file: expected n components");
  if (data.F.components() != n * n) fail(ErrorKind::Data, "force file: expected n*n components");
  return data;
}

std::vector<std::pair<std::string, std::string>> setup_entries(const RunConfig& cfg) {
  return {{"n", std::to_string(cfg.n)},         {"N", std::to_string(cfg.points)},
          {"M", std::to_string(cfg.slabs)},     {"L", num(cfg.period)},
          {"X_max", num(cfg.height)},           {"p", format_exponent(cfg.p)},
          {"q", format_exponent(cfg.q)},        {"r", format_exponent(cfg.r)},
          {"seed", std::to_string(cfg.seed)}};
}

void print_seconds(const char* what, std::chrono::steady_clock::time_point start) {
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << what << " wall seconds: " << num(s) << '\n';
}

Table iteration_table(const IterationReport& rep) {
  Table t{{"k", "norm", "diff", "ratio", "divergence_residual", "trace_residual"}, {}};
  for (const auto& r : rep.records) {
    t.rows.push_back({static_cast<long long>(r.k), r.norm, r.diff, r.ratio, r.divergence_residual, r.trace_residual});
  }
  return t;
}

int cmd_solve(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto cal = obtain_calibration(cfg, false);
  const ProblemData data = problem_data(cfg, cal ? &*cal : nullptr);
  SolverConfig solver = cfg.solver();
  solver.audit_iterates = true;
  const double gate = cal ? cal->delta0 : 0.0;
  const PicardResult res = picard_solve(data.a, data.F, solver, cal ? &*cal : nullptr, nullptr, gate);
  const Output out(cfg.out_dir, cfg.format);
  store_field(out.path("solution.hsf"), res.u);
  out.table("iterations", iteration_table(res.report));
  auto s = setup_entries(cfg);
  const auto& r = res.report;
  s.insert(s.end(), {{"command", "solve"},
                     {"data", data.name},
                     {"converged", r.converged ? "true" : "false"},
                     {"iterations", std::to_string(r.iterations)},
                     {"data_norm", num(r.data_norm)},
                     {"x_norm", num(r.x_norm)},
                     {"linf_norm", num(r.linf_norm)},
                     {"fixed_point_residual", num(r.fixed_point_residual)},
                     {"divergence_residual", num(r.divergence_residual)},
                     {"trace_residual", num(r.trace_residual)}});
  if (cal) s.insert(s.end(), {{"c0", num(cal->c0)}, {"delta0", num(cal->delta0)}, {"eps0", num(cal->eps0)}});
  out.summary(s);
  print_seconds("solve", start);
  return 0;
}

int cmd_linear(const RunConfig& cfg) {
  const auto cal = obtain_calibration(cfg, false);
  const ProblemData data = problem_data(cfg, cal ? &*cal : nullptr);
  const SolverConfig solver = cfg.solver();
  const LinearSolution sol = linear_solve_detailed(data.a, data.F);
  const LinearDiagnostics diag = linear_diagnostics(data.a, sol, solver.p, solver.r);
  const Output out(cfg.out_dir, cfg.format);
  store_field(out.path("linear.hsf"), sol.u);
  const std::vector<CheckResult> checks{make_check("trace_residual", diag.trace_residual, 1e-10),
                                        make_check("divergence_residual", diag.divergence_residual, 1e-10),
                                        make_check("whole_space_divergence", diag.whole_space_divergence, 1e-10),
                                        make_check("evolution_residual", diag.evolution_residual, 1e-10)};
  auto s = setup_entries(cfg);
  s.insert(s.end(), {{"command", "linear"},
                     {"data", data.name},
                     {"x_norm", num(solution_norm(sol.u, solver))},
                     {"linf_norm", num(chemin_lerner_norm(sol.u, {kInfinity}, solver.linf_index()))}});
  for (const auto& c : checks) s.emplace_back(c.name, num(c.value));
  const bool ok = all_passed(checks);
  s.emplace_back("status", ok ? "pass" : "fail");
  out.summary(s);
  if (!ok) fail(ErrorKind::NumericGate, "linear: residual gate failed");
  return 0;
}

int cmd_besov(const RunConfig& cfg) {
  const Grid grid = cfg.grid();
  const SolverConfig solver = cfg.solver();
  const Output out(cfg.out_dir, cfg.format);
  const DyadicRange range = DyadicRange::for_grid(grid);
  auto s = setup_entries(cfg);
  s.emplace_back("command", "besov");
  Table blocks{{"block", "j", "lp_norm", "weighted"}, {}};
  auto add_blocks = [&](const std::string& label, const TangentialField& f, double sreg) {
    const auto norms = block_lp_norms(f, solver.p);
    for (int j = range.j_min; j <= range.j_max; ++j) {
      const double v = norms[j - range.j_min];
      blocks.rows.push_back({label, static_cast<long long>(j), v, std::pow(2.0, sreg * j) * v});
    }
  };
  const BesovIndex bidx = solver.boundary_index();
  if (!cfg.field_file.empty()) {
    const FieldFile file = read_field_file(cfg.field_file);
    if (file.is_boundary()) {
      const auto a = boundary_from_file(file, grid);
      s.emplace_back("field", "boundary");
      s.emplace_back("besov_norm", num(besov_norm(a, bidx)));
      add_blocks("boundary", a, bidx.s);
    } else {
      const auto u = field_from_file(file, grid);
      s.emplace_back("field", "halfspace");
      s.emplace_back("x_norm", num(chemin_lerner_norm(u, solver.x_vertical(), solver.x_index())));
      s.emplace_back("linf_norm", num(chemin_lerner_norm(u, {kInfinity}, solver.linf_index())));
      s.emplace_back("force_norm", num(chemin_lerner_norm(u, {solver.q}, solver.force_index())));
      for (int b = 0; b < u.block_count(); ++b) add_blocks(std::to_string(b), u.block(b), solver.linf_index().s);
    }
  } else {
    const auto cal = obtain_calibration(cfg, false);
    const ProblemData data = make_preset(cfg.preset, solver, preset_params(cfg), cal ? &*cal : nullptr);
    s.emplace_back("field", "preset-boundary:" + data.name);
    s.emplace_back("besov_norm", num(besov_norm(data.a, bidx)));
    s.emplace_back("data_norm", num(data_norm(data.a, data.F, solver)));
    add_blocks("boundary", data.a, bidx.s);
  }
  s.emplace_back("besov_s", num(bidx.s));
  out.table("blocks", blocks);
  out.summary(s);
  return 0;
}

int cmd_kernels_check(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto samples = kernel_battery(50, cfg.seed);
  Table t{{"identity", "kappa", "z", "quadrature", "closed_form", "rel_error"}, {}};
  double worst = 0.0;
  for (const auto& k : samples) {
    t.rows.push_back({static_cast<long long>(k.j), k.kappa, k.z, k.quadrature, k.closed_form, k.rel_error});
    worst = std::max(worst, k.rel_error);
  }
  const auto tr = trace_identity_check(cfg.grid(), 10, cfg.seed);
  const std::vector<CheckResult> checks{make_check("inverse_ft_max_rel_error", worst, 1e-6),
                                        make_check("trace_L4_plus_zero", tr.l4_plus, 1e-12),
                                        make_check("trace_L5_minus_zero", tr.l5_minus, 1e-12),
                                        make_check("trace_L2_minus_opposite", tr.l2_minus_sum, 1e-12),
                                        make_check("trace_L1_plus_consistency", tr.trace_consistency, 1e-13)};
  const Output out(cfg.out_dir, cfg.format);
  out.table("kernels", t);
  auto s = setup_entries(cfg);
  s.emplace_back("command", "kernels-check");
  s.emplace_back("samples", std::to_string(samples.size()));
  for (const auto& c : checks) s.emplace_back(c.name, num(c.value));
  const bool ok = all_passed(checks);
  s.emplace_back("status", ok ? "pass" : "fail");
  out.summary(s);
  print_seconds("kernels-check", start);
  if (!ok) fail(ErrorKind::NumericGate, "kernels-check: identity gate failed");
  return 0;
}

int cmd_asymptotics(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  if (cfg.n != 4) fail(ErrorKind::Usage, "asymptotics: requires n = 4");
  const auto cal = obtain_calibration(cfg, true);
  const SolverConfig solver = cfg.solver();
  const ProblemData data = make_preset(cfg.preset, solver, preset_params(cfg), cal ? &*cal : nullptr);
  if (!data.fbar) fail(ErrorKind::Usage, "asymptotics: preset must provide an x_n-independent force");
  const ProfileDecayReport rep = profile_decay_verify(data.a, *data.fbar, solver, cal ? &*cal : nullptr, cfg.theta);
  Table t{{"R", "D"}, {}};
  for (std::size_t i = 0; i < rep.heights.size(); ++i) t.rows.push_back({rep.heights[i], rep.distances[i]});
  const Output out(cfg.out_dir, cfg.format);
  out.table("ladder", t);
  out.table("iterations", iteration_table(rep.picard));
  auto s = setup_entries(cfg);
  const double dmax = *std::max_element(rep.distances.begin(), rep.distances.end());
  const bool self_consistent = rep.distances.front() <= 10.0 * cfg.tol;
  std::vector<CheckResult> checks{make_check("limit_pde_residual", rep.limit.pde_residual, 1e-9)};
  if (self_consistent) {
    checks.push_back(make_check("max_distance", dmax, 10.0 * cfg.tol));
  } else {
    checks.push_back(make_check("non_increasing", rep.non_increasing ? 1.0 : 0.0, 1.0, true));
    checks.push_back(make_check("decay_ratio", rep.decay_ratio, cfg.theta));
  }
  s.insert(s.end(), {{"command", "asymptotics"},
                     {"data", data.name},
                     {"picard_iterations", std::to_string(rep.picard.iterations)},
                     {"limit_iterations", std::to_string(rep.limit.iterations)},
                     {"limit_norm", num(rep.limit.norm)},
                     {"limit_divergence_residual", num(rep.limit.divergence_residual)},
                     {"theta", num(rep.theta)}});
  for (const auto& c : checks) s.emplace_back(c.name, num(c.value));
  const bool ok = all_passed(checks);
  s.emplace_back("status", ok ? "pass" : "fail");
  out.summary(s);
  print_seconds("asymptotics", start);
  if (!ok) fail(ErrorKind::NumericGate, "asymptotics: decay gate failed");
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto checks = run_verify_suite(cfg);
  Table t{{"check", "value", "threshold", "status"}, {}};
  for (const auto& c : checks) t.rows.push_back({c.name, c.value, c.threshold, std::string(c.passed ? "pass" : "fail")});
  const Output out(cfg.out_dir, cfg.format);
  out.table("verify", t);
  for (const auto& c : checks) std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ' ' << num(c.value) << '\n';
  auto s = setup_entries(cfg);
  const long long passed = std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  s.insert(s.end(), {{"command", "verify"},
                     {"checks", std::to_string(checks.size())},
                     {"passed", std::to_string(passed)},
                     {"status", passed == static_cast<long long>(checks.size()) ? "pass" : "fail"}});
  out.summary(s);
  print_seconds("verify", start);
  if (passed != static_cast<long long>(checks.size())) fail(ErrorKind::NumericGate, "verify: invariant gate failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationary Navier-Stokes on the half space: solver and verification suite", "hsns"};
  app.require_subcommand(1, 1);
  Flags flags;
  app.add_option("--config", flags.config, "key=value configuration file");
  app.add_option("--out", flags.out, "output directory");
  app.add_option("--seed", flags.seed, "random seed");
  app.add_option("--format", flags.format, "table format")->check(CLI::IsMember({"csv", "json-lines"}));

  const std::vector<std::pair<std::string, int (*)(const RunConfig&)>> commands{
      {"solve", cmd_solve},           {"linear", cmd_linear},           {"besov", cmd_besov},
      {"kernels-check", cmd_kernels_check}, {"asymptotics", cmd_asymptotics}, {"verify", cmd_verify}};
  const std::vector<std::string> help{"Picard solve of the nonlinear problem",
                                      "linear Stokes solve with residuals",
                                      "Besov norms of a field",
                                      "inverse Fourier transform and trace identity battery",
                                      "decay ladder towards the limit profile (n = 4)",
                                      "invariant suite with pass/fail summary"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    auto* sub = app.add_subcommand(commands[i].first, help[i]);
    sub->fallthrough();
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::Usage);
  }

  try {
    configure_threads();
    const RunConfig cfg = load_run_config(flags);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (subs[i]->parsed()) return commands[i].second(cfg);
    }
    return static_cast<int>(ErrorKind::Usage);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: data: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::Data);
  }
}
