#include <exception>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "common.hpp"
#include "gdam/error.hpp"

namespace gdam::cli {

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kUnknownProblemId:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kIndexMismatch:
    case ErrorCode::kInfeasibleStart:
    case ErrorCode::kDomainError:
      return kExitUsage;
    default:
      return kExitNumerical;
  }
}

void add_replay(CLI::App& app, Invocation& inv) {
  auto* sub = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  auto manifest = std::make_shared<std::string>();
  sub->add_option("manifest", *manifest, "manifest.json of an earlier run")->required();
  sub->callback([&inv, manifest] {
    inv.action = [manifest] {
      const json m = json::parse(read_file(*manifest));
      return dispatch(m.at("command").get<std::vector<std::string>>());
    };
  });
}

}  // namespace

int dispatch(const std::vector<std::string>& argv) {
  Invocation inv;
  inv.argv = argv;
  inv.out_dir = default_out_dir();

  CLI::App app{"First-order interior point solver with normalized barrier directions"};
  app.name(argv.empty() ? "gdam" : argv[0]);
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "INI or TOML file with option values; flags take precedence");
  app.add_option("--out", inv.out_dir, "Output directory (default from GDAM_OUT_DIR or ./out)");
  bool no_timestamp = false;
  app.add_flag("--no-timestamp", no_timestamp, "Omit the generation timestamp from SVG files");
  app.fallthrough();
  app.require_subcommand(1);

  add_trace2d(app, inv);
  add_solve(app, inv);
  add_snl(app, inv);
  add_bench(app, inv);
  add_replay(app, inv);

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  if (!args.empty()) args.pop_back();
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  inv.timestamp = !no_timestamp;
  if (!inv.action) return kExitUsage;
  try {
    return inv.action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace gdam::cli

int main(int argc, char** argv) {
  return gdam::cli::dispatch(std::vector<std::string>(argv, argv + argc));
}
