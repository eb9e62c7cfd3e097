#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace minplus {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes shared by every subcommand, for scripting:
/// 0 ok, 1 verification failed, 2 parse error, 3 structural error
/// (e.g. not strongly connected), 4 non-deterministic net.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kParseError = 2,
  kStructureError = 3,
  kNondeterministic = 4,
};

/// Everything a run needs; a persisted config replays to byte-identical
/// CSV given the same seed.
struct RunConfig {
  std::string subcommand;
  std::string model;  // file path or builtin name (road/junction/tent)
  std::size_t n = 2, m = 10;
  std::vector<double> density_grid;  // empty: default 101 points on [0,1]
  std::size_t burn_in = 0, horizon = 0;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  std::string placement = "even";
  std::string out_dir;
  bool svg = false;
  std::string mode;  // tent: exact|mc; compose: series|parallel|feedback
  std::vector<std::string> inputs;  // extra file operands

  std::string to_json() const;
  static RunConfig from_json(const std::string& text);
};

/// Run directory: the config snapshot lands before any result file.
struct RunArtifact {
  std::string dir;
  std::vector<std::string> files;

  void write_file(const std::string& name, const std::string& content);
  void log(const std::string& line);
};

/// Creates cfg.out_dir (or a directory under $MINPLUS_OUT_ROOT) and
/// snapshots the config into it.
RunArtifact open_run(const RunConfig& cfg);

int cmd_eigen(const std::string& matrix_file, std::ostream& out);
int cmd_diagram(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_simulate(const RunConfig& cfg, std::ostream& out);
int cmd_tent(const RunConfig& cfg, std::ostream& out);
int cmd_compose(const RunConfig& cfg, std::ostream& out);

}  // namespace minplus
