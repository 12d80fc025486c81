#include "mhl/config.hpp"

#include <CLI11.hpp>

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "mhl/errors.hpp"
#include "mhl/transform.hpp"

namespace mhl {
namespace {

using Pairs = std::map<std::string, std::string>;

const char* const kKeys[] = {"command", "alpha", "gamma", "nt", "ntheta", "tol",
                             "max_iter", "seed", "multistart", "out_dir", "workers"};

bool known_key(const std::string& k) {
  for (const char* key : kKeys)
    if (k == key) return true;
  return false;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

Pairs parse_pairs(const std::string& text) {
  Pairs out;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string item;
    while (words >> item) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0)
        throw ConfigError("line " + std::to_string(lineno) + ": expected key=value, got '" + item + "'");
      std::string key = item.substr(0, eq);
      for (char& c : key)
        if (c == '-') c = '_';
      if (!known_key(key)) throw ConfigError("unknown key '" + key + "'");
      if (out.count(key)) throw ConfigError("duplicate key '" + key + "'");
      out[key] = item.substr(eq + 1);
    }
  }
  return out;
}

double to_double(const std::string& key, const std::string& s) {
  const std::string t = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
    throw ConfigError(key + ": not a finite number: '" + s + "'");
  return v;
}

long long to_integer(const std::string& key, const std::string& s) {
  const std::string t = trim(s);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ConfigError(key + ": not an integer: '" + s + "'");
  return v;
}

std::vector<double> to_list(const std::string& key, const std::string& s) {
  std::vector<double> out;
  std::string piece;
  std::istringstream in(s);
  while (std::getline(in, piece, ',')) out.push_back(to_double(key, piece));
  if (out.empty() || s.back() == ',') throw ConfigError(key + ": empty list entry");
  return out;
}

bool to_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(key + ": expected true or false, got '" + s + "'");
}

int to_int(const std::string& key, const std::string& s) {
  const long long v = to_integer(key, s);
  if (v < INT32_MIN || v > INT32_MAX) throw ConfigError(key + ": out of range");
  return static_cast<int>(v);
}

RunConfig build(const Pairs& kv) {
  RunConfig c;
  auto get = [&](const char* k) -> const std::string* {
    const auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (auto* s = get("command")) c.command = parse_command(*s);
  c.nt = default_nt(c.command);
  if (const char* env = std::getenv("MHL_OUT_DIR"); env && *env) c.out_dir = env;
  if (auto* s = get("alpha")) c.alpha = to_list("alpha", *s);
  if (auto* s = get("gamma")) c.gamma = to_list("gamma", *s);
  if (auto* s = get("nt")) c.nt = to_int("nt", *s);
  if (auto* s = get("ntheta")) c.ntheta = to_int("ntheta", *s);
  if (auto* s = get("tol")) c.tol = to_double("tol", *s);
  if (auto* s = get("max_iter")) c.max_iter = to_int("max_iter", *s);
  if (auto* s = get("seed")) {
    const long long v = to_integer("seed", *s);
    if (v < 0) throw ConfigError("seed: must be non-negative");
    c.seed = static_cast<std::uint64_t>(v);
  }
  if (auto* s = get("multistart")) c.multistart = to_bool("multistart", *s);
  if (auto* s = get("out_dir")) c.out_dir = *s;
  if (auto* s = get("workers")) c.workers = to_int("workers", *s);
  validate(c);
  return c;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_double(v[i]);
  }
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::Eig: return "eig";
    case Command::Certify: return "certify";
    case Command::SolveRadial: return "solve-radial";
    case Command::SolveDisk: return "solve-disk";
    case Command::Report: return "report";
    case Command::Sweep: return "sweep";
  }
  return "?";
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::Eig, Command::Certify, Command::SolveRadial, Command::SolveDisk, Command::Report,
                    Command::Sweep})
    if (name == command_name(c)) return c;
  throw ConfigError("unknown command '" + name +
                    "' (expected eig, certify, solve-radial, solve-disk, report or sweep)");
}

int default_nt(Command c) { return (c == Command::SolveDisk || c == Command::Report) ? 512 : 2048; }

void validate(const RunConfig& c) {
  if (c.alpha.empty()) throw ConfigError("alpha: empty list");
  if (c.gamma.empty()) throw ConfigError("gamma: empty list");
  for (double a : c.alpha)
    if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("alpha must be positive, got " + format_double(a));
  for (double g : c.gamma) {
    if (!(g > 0.0) || !std::isfinite(g)) throw ConfigError("gamma must be positive, got " + format_double(g));
    if (g > kFourPi)
      throw ConfigError("gamma = " + format_double(g) +
                        " exceeds 4 pi = 12.566...: by the Trudinger-Moser inequality the supremum is infinite");
  }
  if (c.nt < 2) throw ConfigError("nt must be at least 2");
  if (c.ntheta < 4) throw ConfigError("ntheta must be at least 4");
  if (!(c.tol > 0.0) || !(c.tol < 1.0)) throw ConfigError("tol must lie in (0, 1)");
  if (c.max_iter < 1) throw ConfigError("max_iter must be at least 1");
  if (c.workers < 1) throw ConfigError("workers must be at least 1");
  if (c.out_dir.empty()) throw ConfigError("out_dir must not be empty");
  if (c.out_dir.find_first_of(" \t\r\n#") != std::string::npos)
    throw ConfigError("out_dir must not contain whitespace or '#'");
}

RunConfig parse_config_text(const std::string& text) { return build(parse_pairs(text)); }

std::string usage() {
  return "usage: mhl [command] [--config FILE] [--alpha A[,A...]] [--gamma G[,G...]]\n"
         "           [--nt N] [--ntheta M] [--tol T] [--max-iter K] [--seed S]\n"
         "           [--multistart | --no-multistart] [--out-dir DIR] [--workers W]\n"
         "commands: eig certify solve-radial solve-disk report sweep\n"
         "Flags override values from the config file (key=value lines, '#' comments).\n"
         "MHL_OUT_DIR sets the default output directory.\n";
}

RunConfig parse_config_args(int argc, const char* const* argv) {
  CLI::App app{"mhl"};
  app.set_help_flag();
  bool help = false;
  app.add_flag("-h,--help", help);
  std::string command, config_file;
  std::map<std::string, std::string> flags;
  app.add_option("COMMAND", command);
  app.add_option("--config", config_file);
  const std::pair<const char*, const char*> valued[] = {
      {"--alpha", "alpha"}, {"--gamma", "gamma"}, {"--nt", "nt"},           {"--ntheta", "ntheta"},
      {"--tol", "tol"},     {"--max-iter", "max_iter"}, {"--seed", "seed"}, {"--out-dir", "out_dir"},
      {"--workers", "workers"}, {"--command", "command"}};
  for (const auto& [flag, key] : valued)
    app.add_option_function<std::string>(flag, [&flags, k = std::string(key)](const std::string& v) { flags[k] = v; });
  app.add_flag_function("--multistart{true},!--no-multistart",
                        [&flags](std::int64_t n) { flags["multistart"] = n > 0 ? "true" : "false"; });
  try {
    app.parse(argc, argv);
  } catch (const CLI::Error& e) {
    throw ConfigError(e.what());
  }
  if (help) throw HelpRequested(usage());

  Pairs kv = config_file.empty() ? Pairs{} : parse_pairs(read_file(config_file));
  if (!command.empty()) {
    if (flags.count("command") && flags["command"] != command) throw ConfigError("command given twice");
    flags["command"] = command;
  }
  for (const auto& [k, v] : flags) kv[k] = v;
  return build(kv);
}

std::string serialize_config(const RunConfig& c) {
  std::string s;
  s += "command=" + std::string(command_name(c.command)) + "\n";
  s += "alpha=" + join(c.alpha) + "\n";
  s += "gamma=" + join(c.gamma) + "\n";
  s += "nt=" + std::to_string(c.nt) + "\n";
  s += "ntheta=" + std::to_string(c.ntheta) + "\n";
  s += "tol=" + format_double(c.tol) + "\n";
  s += "max_iter=" + std::to_string(c.max_iter) + "\n";
  s += "seed=" + std::to_string(c.seed) + "\n";
  s += "multistart=" + std::string(c.multistart ? "true" : "false") + "\n";
  s += "out_dir=" + c.out_dir + "\n";
  s += "workers=" + std::to_string(c.workers) + "\n";
  return s;
}

std::string config_hash(const RunConfig& c) {
  RunConfig k = c;
  k.out_dir = "-";
  k.workers = 1;
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : serialize_config(k)) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mhl
