#include "mzs/bench/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace mzs::bench {

int RunConfig::steps_from_sigma() const {
  require(sigma > 0.0 && sigma_mult > 0.0, "sigma stepping needs sigma > 0 and sigma_mult > 0");
  const double h_target = std::pow(eps, sigma) / sigma_mult;
  const double span = std::abs(t_final - t0);
  return std::max(1, static_cast<int>(std::ceil(span / h_target - 1e-12)));
}

PropagatorOptions RunConfig::propagator_options() const {
  PropagatorOptions opt;
  opt.eps = eps;
  opt.gl_nodes = gl_nodes;
  opt.lanczos_w2 = lanczos_w2;
  opt.lanczos_w3 = lanczos_w3;
  opt.sigma_policy = SigmaPolicy{prune_by_sigma, sigma > 0.0 ? sigma : 1.0};
  opt.midpoint_mu = midpoint;
  opt.snapshot_every = snapshots;
  return opt;
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

template <typename T>
T parse_num(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T x{};
  in >> x;
  if (in.fail() || !(in >> std::ws).eof())
    throw contract_error("config: invalid value '" + value + "' for key '" + key + "'");
  return x;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "on" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "off" || value == "no") return false;
  throw contract_error("config: invalid boolean '" + value + "' for key '" + key + "'");
}

} // namespace

void apply_kv(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "preset") cfg.preset = value;
  else if (key == "scheme") cfg.scheme = scheme_from_string(value);
  else if (key == "eps") cfg.eps = parse_num<double>(key, value);
  else if (key == "grid_points") cfg.n_grid = parse_num<Index>(key, value);
  else if (key == "steps") cfg.n_steps = parse_num<int>(key, value);
  else if (key == "t0") cfg.t0 = parse_num<double>(key, value);
  else if (key == "t_final") cfg.t_final = parse_num<double>(key, value);
  else if (key == "gl_nodes") cfg.gl_nodes = parse_num<int>(key, value);
  else if (key == "lanczos_w2") cfg.lanczos_w2 = parse_num<int>(key, value);
  else if (key == "lanczos_w3") cfg.lanczos_w3 = parse_num<int>(key, value);
  else if (key == "sigma") cfg.sigma = parse_num<double>(key, value);
  else if (key == "sigma_mult") cfg.sigma_mult = parse_num<double>(key, value);
  else if (key == "prune_by_sigma") cfg.prune_by_sigma = parse_bool(key, value);
  else if (key == "midpoint") cfg.midpoint = parse_bool(key, value);
  else if (key == "out") cfg.out_csv = value;
  else if (key == "cache_dir") cfg.cache_dir = value;
  else if (key == "snapshots") cfg.snapshots = parse_num<int>(key, value);
  else if (key == "jobs") cfg.jobs = parse_num<int>(key, value);
  else if (key == "verbose") cfg.verbose = parse_bool(key, value);
  else throw contract_error("config: unknown key '" + key + "'");
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw contract_error("config: cannot open '" + path + "'");
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw contract_error("config: line " + std::to_string(lineno) + " of '" + path +
                           "' is not 'key = value'");
    apply_kv(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

} // namespace mzs::bench
