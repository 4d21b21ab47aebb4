// Benchmark and verification harness for the spectral Magnus--Zassenhaus
// propagators: single runs, error tables, convergence sweeps, reference
// management, the invariant suite, and binary wavefunction dumps.

#include "mzs/bench/checks.hpp"
#include "mzs/bench/config.hpp"
#include "mzs/bench/presets.hpp"
#include "mzs/bench/runners.hpp"
#include "mzs/wf_io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>

using namespace mzs;
using namespace mzs::bench;

namespace {

struct CliState {
  RunConfig flags;            // values parsed from the command line
  std::string config_path;
  std::string scheme_name;
  std::vector<int> steps_list;
};

void attach_run_options(CLI::App* cmd, CliState& st, bool steps_as_list) {
  cmd->add_option("--config", st.config_path, "flat `key = value` config file (flags override)");
  cmd->add_option("--preset", st.flags.preset, "problem preset")
      ->check(CLI::IsMember(preset_names()));
  cmd->add_option("--scheme", st.scheme_name, "propagator: mz2 | mz4 | mz6")
      ->check(CLI::IsMember(std::vector<std::string>{"mz2", "mz4", "mz6"}));
  cmd->add_option("--eps", st.flags.eps, "semiclassical parameter");
  cmd->add_option("--grid-points", st.flags.n_grid, "collocation points (even)");
  if (steps_as_list)
    cmd->add_option("--steps", st.steps_list, "time-step counts of the sweep");
  else
    cmd->add_option("--steps", st.flags.n_steps, "number of uniform time steps");
  cmd->add_option("--t-final", st.flags.t_final, "final time");
  cmd->add_option("--gl-nodes", st.flags.gl_nodes, "Gauss-Legendre nodes per step");
  cmd->add_option("--lanczos-w2", st.flags.lanczos_w2,
                  "Lanczos iterations for the inner symmetrized exponent (0 = policy)");
  cmd->add_option("--lanczos-w3", st.flags.lanczos_w3,
                  "Lanczos iterations for the innermost exponent");
  cmd->add_option("--sigma", st.flags.sigma, "pick steps from h = eps^sigma / sigma_mult");
  cmd->add_option("--sigma-mult", st.flags.sigma_mult, "the multiplier in h = eps^sigma / c");
  cmd->add_flag("--prune-by-sigma", st.flags.prune_by_sigma,
                "drop the sigma-gated diagonal correction when sigma <= 1/2");
  cmd->add_flag("--midpoint", st.flags.midpoint,
                "order-2 scheme: midpoint potential sample instead of the integral");
  cmd->add_option("--out", st.flags.out_csv, "CSV output path");
  cmd->add_option("--cache-dir", st.flags.cache_dir, "reference cache directory");
  cmd->add_option("--snapshots", st.flags.snapshots, "record every k-th state");
  cmd->add_option("--jobs", st.flags.jobs, "worker threads for sweeps");
  cmd->add_flag("--verbose", st.flags.verbose, "chattier output");
}

// Config file first, then every flag the user actually passed on top.
RunConfig resolve_config(const CLI::App* cmd, const CliState& st) {
  RunConfig cfg;
  if (!st.config_path.empty()) cfg = load_config_file(st.config_path);

  auto passed = [&](const std::string& name) { return cmd->count(name) > 0; };
  if (passed("--preset")) cfg.preset = st.flags.preset;
  if (passed("--scheme")) cfg.scheme = scheme_from_string(st.scheme_name);
  if (passed("--eps")) cfg.eps = st.flags.eps;
  if (passed("--grid-points")) cfg.n_grid = st.flags.n_grid;
  if (passed("--steps") && cmd->get_option("--steps")->get_type_size() == 1)
    cfg.n_steps = st.flags.n_steps;
  if (passed("--t-final")) cfg.t_final = st.flags.t_final;
  if (passed("--gl-nodes")) cfg.gl_nodes = st.flags.gl_nodes;
  if (passed("--lanczos-w2")) cfg.lanczos_w2 = st.flags.lanczos_w2;
  if (passed("--lanczos-w3")) cfg.lanczos_w3 = st.flags.lanczos_w3;
  if (passed("--sigma")) cfg.sigma = st.flags.sigma;
  if (passed("--sigma-mult")) cfg.sigma_mult = st.flags.sigma_mult;
  if (passed("--prune-by-sigma")) cfg.prune_by_sigma = st.flags.prune_by_sigma;
  if (passed("--midpoint")) cfg.midpoint = st.flags.midpoint;
  if (passed("--out")) cfg.out_csv = st.flags.out_csv;
  if (passed("--cache-dir")) cfg.cache_dir = st.flags.cache_dir;
  if (passed("--snapshots")) cfg.snapshots = st.flags.snapshots;
  if (passed("--jobs")) cfg.jobs = st.flags.jobs;
  if (passed("--verbose")) cfg.verbose = st.flags.verbose;
  return cfg;
}

void print_rows(const std::vector<RunResult>& rows) {
  std::cout << csv_header() << "\n";
  for (const auto& r : rows) std::cout << csv_row(r) << "\n";
}

void resolution_warning(const RunConfig& cfg) {
  if (cfg.n_grid < 256 && cfg.eps <= 1e-2)
    std::cerr << "warning: " << cfg.n_grid << " grid points is coarse for eps = " << cfg.eps
              << "; oscillations of wavelength ~ eps need roughly 20/eps points\n";
}

int cmd_run(const CLI::App* cmd, const CliState& st) {
  RunConfig cfg = resolve_config(cmd, st);
  resolution_warning(cfg);
  Wavefunction ref = make_reference(cfg, cfg.n_steps);
  RunResult r = run_single(cfg, ref);
  std::vector<RunResult> rows{r};
  print_rows(rows);
  if (!cfg.out_csv.empty()) write_csv(cfg.out_csv, rows);
  return 0;
}

int cmd_table(const CLI::App* cmd, const CliState& st) {
  RunConfig cfg = resolve_config(cmd, st);
  resolution_warning(cfg);
  std::vector<int> steps = st.steps_list;
  if (steps.empty()) steps = {30, 40, 50, 60, 75, 100};
  int mx = 0;
  for (int s : steps) mx = std::max(mx, s);
  ReferenceInfo ri;
  Wavefunction ref = make_reference(cfg, mx, &ri);
  if (cfg.verbose)
    std::cerr << "reference: " << ri.path << (ri.cache_hit ? " (cached)" : " (generated)")
              << ", doubling distance " << ri.doubling_check << "\n";
  std::vector<RunResult> rows = run_table(cfg, steps, ref);
  print_rows(rows);
  if (!cfg.out_csv.empty()) write_csv(cfg.out_csv, rows);
  return 0;
}

int cmd_converge(const CLI::App* cmd, const CliState& st) {
  RunConfig cfg = resolve_config(cmd, st);
  std::vector<int> steps = st.steps_list;
  if (steps.empty()) steps = {4, 6, 10, 20, 40, 60};
  ConvergenceResult conv = run_convergence(cfg, steps);
  print_rows(conv.rows);
  if (!conv.fit.ok) {
    std::cerr << "degenerate fit: only " << conv.fit.points_used
              << " points above the saturation floor (need 3)\n";
    return 2;
  }
  std::printf("fitted slope %.4f over %d points (expected ~ %d)\n", conv.fit.slope,
              conv.fit.points_used, scheme_order(cfg.scheme));
  if (!cfg.out_csv.empty()) write_csv(cfg.out_csv, conv.rows);
  return 0;
}

int cmd_reference(const CLI::App* cmd, const CliState& st) {
  RunConfig cfg = resolve_config(cmd, st);
  ReferenceInfo ri;
  make_reference(cfg, cfg.n_steps, &ri);
  std::cout << "reference file:    " << ri.path << "\n"
            << "reference steps:   " << ri.n_steps << "\n"
            << "cache:             " << (ri.cache_hit ? "hit" : "generated") << "\n"
            << "doubling distance: " << ri.doubling_check << "\n";
  return 0;
}

int cmd_verify(const CLI::App* cmd, const CliState& st) {
  RunConfig cfg = resolve_config(cmd, st);
  CheckOptions opt;
  opt.cache_dir = cfg.cache_dir;
  bool all_pass = true;
  for (const CheckResult& c : run_all_checks(opt)) {
    std::printf("[%s] %-2s %-48s %s\n", c.pass ? "PASS" : "FAIL", c.id.c_str(), c.name.c_str(),
                c.detail.c_str());
    all_pass = all_pass && c.pass;
  }
  return all_pass ? 0 : 2;
}

int cmd_dump(const CLI::App* cmd, const CliState& st) {
  RunConfig cfg = resolve_config(cmd, st);
  require(!cfg.out_csv.empty(), "dump needs --out <file.mzwf>");
  Problem p = make_preset(cfg.preset, cfg.eps, cfg.n_grid);
  PropagatorOptions opt = cfg.propagator_options();
  const int n_steps = cfg.sigma > 0.0 ? cfg.steps_from_sigma() : cfg.n_steps;
  EvolveResult ev = evolve(p.u0, p.pot, cfg.t0, cfg.t_final, n_steps, cfg.scheme, opt);
  dump_mzwf(cfg.out_csv, ev.u, cfg.eps, cfg.t_final);
  std::cout << "wrote " << cfg.out_csv << " (t = " << cfg.t_final << ")\n";
  for (size_t i = 0; i < ev.snapshots.size(); ++i) {
    const std::string path = cfg.out_csv + "." + std::to_string(i);
    dump_mzwf(path, ev.snapshots[i].u, cfg.eps, ev.snapshots[i].t);
    std::cout << "wrote " << path << " (t = " << ev.snapshots[i].t << ")\n";
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral Magnus-Zassenhaus propagator benchmark"};
  app.require_subcommand(1);

  CliState st;
  CLI::App* run = app.add_subcommand("run", "single benchmark run against a cached reference");
  CLI::App* table = app.add_subcommand("table", "error table over a sweep of step counts");
  CLI::App* conv = app.add_subcommand("converge", "convergence sweep with fitted slope");
  CLI::App* ref = app.add_subcommand("reference", "generate or refresh the cached reference");
  CLI::App* verify = app.add_subcommand("verify", "run the full invariant/property suite");
  CLI::App* dump = app.add_subcommand("dump", "evolve and write MZWF binary snapshots");
  attach_run_options(run, st, false);
  attach_run_options(table, st, true);
  attach_run_options(conv, st, true);
  attach_run_options(ref, st, false);
  attach_run_options(verify, st, false);
  attach_run_options(dump, st, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return cmd_run(run, st);
    if (table->parsed()) return cmd_table(table, st);
    if (conv->parsed()) return cmd_converge(conv, st);
    if (ref->parsed()) return cmd_reference(ref, st);
    if (verify->parsed()) return cmd_verify(verify, st);
    if (dump->parsed()) return cmd_dump(dump, st);
  } catch (const contract_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
