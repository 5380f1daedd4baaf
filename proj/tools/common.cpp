#include "common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gdam/error.hpp"

namespace gdam::cli {

const char* const kVersion = GDAM_VERSION;

void SolverFlags::add_to(CLI::App& app) {
  app.add_option("--zeta", zeta, "Mixing weight ζ in [0, 1)");
  app.add_option("--beta", beta, "Initial step parameter β");
  app.add_option("--beta-min", beta_min, "Step floor for backtracking");
  app.add_option("--tau", tau, "Backtracking factor in (0, 1)");
  app.add_option("--momentum", momentum, "Momentum coefficient for the accelerated solver");
  app.add_option("--max-iters", max_iters, "Iteration cap");
}

void SolverFlags::apply(SolverConfig& c) const {
  if (zeta) c.zeta = *zeta;
  if (beta) c.beta = *beta;
  if (beta_min) c.beta_min = *beta_min;
  if (tau) c.tau = *tau;
  if (momentum) c.momentum = *momentum;
  if (max_iters) c.max_iters = *max_iters;
}

std::string default_out_dir() {
  const char* env = std::getenv("GDAM_OUT_DIR");
  return env && *env ? std::string(env) : std::string("out");
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run::Run(std::string command_name, std::vector<std::string> argv, std::string out_dir)
    : name_(std::move(command_name)),
      argv_(std::move(argv)),
      out_dir_(std::move(out_dir)),
      start_(std::chrono::steady_clock::now()) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir_, ec);
  if (ec) throw Error(ErrorCode::kInvalidArgument, "cannot create " + out_dir_);
}

std::string Run::path(const std::string& name) const {
  return (std::filesystem::path(out_dir_) / name).string();
}

void Run::input(const std::string& file) {
  inputs_.push_back({{"path", file}, {"fnv1a64", fnv1a64(read_file(file))}});
}

std::string Run::write(const std::string& name, const std::string& content) {
  const std::string p = path(name);
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + p);
  out << content;
  out.close();
  output(p);
  return p;
}

void Run::output(const std::string& file) {
  outputs_.push_back({{"path", file}, {"fnv1a64", fnv1a64(read_file(file))}});
}

void Run::seed(std::uint64_t s) { seeds_.push_back(s); }

void Run::finish() {
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  json m;
  m["command"] = argv_;
  m["subcommand"] = name_;
  m["config"] = config_;
  m["seeds"] = seeds_;
  m["inputs"] = inputs_;
  m["outputs"] = outputs_;
  m["summary"] = summary_;
  m["timings"] = {{"wall_seconds", secs}};
  m["version"] = kVersion;
  std::string file = "manifest-" + name_ + ".json";
  std::replace(file.begin(), file.end(), ' ', '-');
  std::ofstream out(path(file), std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path(file));
  out << m.dump(2) << "\n";
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v[i]));
  return a;
}

json to_json(const SolverConfig& c) {
  return {{"zeta", c.zeta},
          {"beta", c.beta},
          {"beta_min", c.beta_min},
          {"tau", c.tau},
          {"line_search", c.line_search},
          {"momentum", c.momentum},
          {"max_iters", c.max_iters},
          {"step_rule", c.step_rule == StepRule::kScaled ? "scaled" : "fixed_length"},
          {"restart",
           {{"enabled", c.restart.enabled},
            {"kappa", c.restart.kappa},
            {"monitor_period", c.restart.monitor_period},
            {"slowdown_tol", c.restart.slowdown_tol}}},
          {"allow_exterior_start", c.allow_exterior_start}};
}

json to_json(const SolveResult& r) {
  return {{"x", to_json(r.x)},
          {"f", number(r.f)},
          {"iterations", r.iterations},
          {"restarts", r.restarts},
          {"termination", std::string(to_string(r.termination))},
          {"final_beta", number(r.final_beta)},
          {"cos_theta", number(r.diagnostics.cos_theta)},
          {"residual", number(r.diagnostics.residual)},
          {"eta", number(r.diagnostics.eta)},
          {"rejected_violation", r.stats.rejected_violation},
          {"rejected_nondecrease", r.stats.rejected_nondecrease},
          {"momentum_resets", r.stats.momentum_resets}};
}

}  // namespace gdam::cli
