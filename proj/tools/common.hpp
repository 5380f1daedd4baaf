#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gdam/snl.hpp"
#include "gdam/solver.hpp"

namespace gdam::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int {
  kExitOk = 0,
  kExitAcceptance = 1,
  kExitUsage = 2,
  kExitNumerical = 3,
};

/// Solver flags shared by the subcommands; unset flags keep the defaults
/// of the command.
struct SolverFlags {
  std::optional<double> zeta;
  std::optional<double> beta;
  std::optional<double> beta_min;
  std::optional<double> tau;
  std::optional<double> momentum;
  std::optional<int> max_iters;

  void add_to(CLI::App& app);
  void apply(SolverConfig& config) const;
};

/// Output directory, file bookkeeping and the run manifest.
class Run {
 public:
  Run(std::string command_name, std::vector<std::string> argv, std::string out_dir);

  const std::string& out_dir() const { return out_dir_; }
  std::string path(const std::string& name) const;

  /// Records the digest of an input file.
  void input(const std::string& file);
  /// Writes `content` to `name` inside the output directory and records it.
  std::string write(const std::string& name, const std::string& content);
  /// Records a file written by other means.
  void output(const std::string& file);
  void seed(std::uint64_t s);
  json& config() { return config_; }
  json& summary() { return summary_; }

  /// Writes manifest-<command>.json.
  void finish();

 private:
  std::string name_;
  std::vector<std::string> argv_;
  std::string out_dir_;
  json config_ = json::object();
  json summary_ = json::object();
  json inputs_ = json::array();
  json outputs_ = json::array();
  json seeds_ = json::array();
  std::chrono::steady_clock::time_point start_;
};

/// $GDAM_OUT_DIR when set, otherwise "out".
std::string default_out_dir();

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
std::string fnv1a64(const std::string& bytes);
std::string read_file(const std::string& path);

json to_json(const SolverConfig& c);
json to_json(const SolveResult& r);
json to_json(const Vec& v);

/// Non-finite values become null.
json number(double v);

extern const char* const kVersion;

}  // namespace gdam::cli
