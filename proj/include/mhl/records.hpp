#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mhl/analysis.hpp"
#include "mhl/config.hpp"
#include "mhl/disk_solver.hpp"

namespace mhl {

inline constexpr int kSchemaVersion = 1;

struct EigRecord {
  double j01 = 0.0;
  double lambda1 = 0.0;
  double phi1_at_0 = 0.0;
  double norm_constant = 0.0;
  double phi1_quartic_integral = 0.0;
  double gamma_star_bound = 0.0;

  friend bool operator==(const EigRecord&, const EigRecord&) = default;
};

struct RadialRecord {
  double S_rad = 0.0;
  double multiplier = 0.0;
  double residual = 0.0;
  double ratio = 0.0;
  double profile_distance = 0.0;
  double pohozaev_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string stop_reason;

  friend bool operator==(const RadialRecord&, const RadialRecord&) = default;
};

struct DiskRecord {
  double S = 0.0;
  double anisotropy = 0.0;
  double multiplier = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string stop_reason;

  friend bool operator==(const DiskRecord&, const DiskRecord&) = default;
};

/// SymmetryReport without the maximizer field.
struct SymmetryRecord {
  double S = 0.0;
  double S_rad = 0.0;
  double gap = 0.0;
  double relative_gap = 0.0;
  double anisotropy = 0.0;
  double grid_error_estimate = 0.0;
  bool broken = false;
  double transplant_lower_bound = 0.0;
  std::string transplant_family_best;
  bool lower_bound_holds = false;
  bool converged = false;
  int iterations = 0;
  std::vector<ResolutionOutcome> resolutions;

  friend bool operator==(const SymmetryRecord&, const SymmetryRecord&) = default;
};

SymmetryRecord to_record(const SymmetryReport& r);

/// One parameter point (or one certificate / eigenpair evaluation).
struct ResultRecord {
  std::string command;
  double alpha = 0.0;
  double gamma = 0.0;
  double eps = 0.0;
  int nt = 0;
  int ntheta = 0;
  std::string config_hash;
  double wall_ms = 0.0;
  int iterations = 0;
  bool converged = true;
  /// Non-empty when the point failed; the optional parts are then partial.
  std::string error;

  std::optional<EigRecord> eig;
  std::optional<Certificate> certificate;
  std::optional<RadialRecord> radial;
  std::optional<DiskRecord> disk;
  std::optional<SymmetryRecord> symmetry;
  std::optional<SecondVariationReport> second_variation;

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

struct ReportDocument {
  int schema_version = kSchemaVersion;
  RunConfig config;
  std::string config_hash;
  std::vector<ResultRecord> records;

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

/// Pretty-printed JSON. Non-finite doubles are written as null.
std::string to_json_text(const ReportDocument& doc);
/// Throws IoError on malformed input or a schema_version other than kSchemaVersion.
ReportDocument parse_report_json(const std::string& text);

/// Column names of results.csv, in order.
const std::vector<std::string>& csv_columns();
/// Header line plus one line per record; %.17g, LF endings, empty cells for
/// values the command did not produce.
std::string to_csv(const std::vector<ResultRecord>& records);

}  // namespace mhl
