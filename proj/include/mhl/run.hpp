#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mhl/config.hpp"
#include "mhl/records.hpp"

namespace mhl {

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitUnconverged = 2 };

/// Two-column series written to plotdata/<name>.dat.
struct PlotSeries {
  std::string name;
  std::string x_label;
  std::string y_label;
  std::vector<std::pair<double, double>> points;
};

struct RunOutcome {
  int exit_code = kExitOk;
  /// Human-readable lines printed by the command-line tool.
  std::string summary;
  ReportDocument document;
  std::string csv;
  std::vector<PlotSeries> plots;
};

/// Evaluates every (alpha, gamma) point of the configuration without touching
/// the file system. Points run on up to config.workers threads; records keep
/// parameter order (alpha outer, gamma inner). A failing point becomes a record
/// with `error` set and exit code 1; other points still complete.
RunOutcome execute(const RunConfig& config);

/// execute() followed by writing results.csv, report.json and plotdata/*.dat
/// into config.out_dir. Throws IoError if the files cannot be written.
RunOutcome run(const RunConfig& config);

}  // namespace mhl
