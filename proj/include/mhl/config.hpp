#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mhl {

enum class Command { Eig, Certify, SolveRadial, SolveDisk, Report, Sweep };

const char* command_name(Command c);
/// Throws ConfigError for an unknown name.
Command parse_command(const std::string& name);

/// Default nt: 2048 for radial-only commands, 512 for disk commands.
int default_nt(Command c);

struct RunConfig {
  Command command = Command::Eig;
  std::vector<double> alpha{100.0};
  std::vector<double> gamma{1.0};
  int nt = 2048;
  int ntheta = 128;
  double tol = 1e-8;
  int max_iter = 50000;
  std::uint64_t seed = 42;
  bool multistart = true;
  std::string out_dir = "out";
  int workers = 1;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// key=value pairs separated by newlines or whitespace; '#' starts a comment.
/// Keys not given take their defaults (nt by command, out_dir from
/// MHL_OUT_DIR if set). Throws ConfigError on unknown keys, malformed or
/// out-of-range values.
RunConfig parse_config_text(const std::string& text);

/// Command line: [command] [--config FILE] [--gamma ...] ... Flags override
/// values from the file. Throws ConfigError; `--help` throws HelpRequested.
RunConfig parse_config_args(int argc, const char* const* argv);

/// Usage text for the command line.
std::string usage();

/// Throws ConfigError if any field is out of range.
void validate(const RunConfig& c);

/// One key=value per line, fixed key order, doubles with 17 significant
/// digits. parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& c);

/// FNV-1a 64 of the serialized config without out_dir and workers, as 16 hex
/// digits.
std::string config_hash(const RunConfig& c);

}  // namespace mhl
