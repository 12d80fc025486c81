#include "mhl/records.hpp"

#include <json.hpp>

#include <cstdio>

#include "mhl/errors.hpp"

namespace mhl {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Params, alpha, gamma, eps)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SecondVariationReport, params, d2f_value, d2f_reduced, normalized,
                                   limit_expression, gamma_star_bound, pohozaev_residual, consistency)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Certificate, name, lhs, rhs, margin, passes, energy, exp_square_integral,
                                   lhs_from_level, integral_lower_bound, lhs_at_lower_bound,
                                   integral_exceeds_bound, series_terms_needed)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(StartOutcome, name, level, anisotropy, residual, iterations, converged)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ResolutionOutcome, nt, ntheta, S, S_rad, anisotropy, best_start, converged,
                                   iterations, starts)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(EigRecord, j01, lambda1, phi1_at_0, norm_constant, phi1_quartic_integral,
                                   gamma_star_bound)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RadialRecord, S_rad, multiplier, residual, ratio, profile_distance,
                                   pohozaev_residual, iterations, converged, stop_reason)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DiskRecord, S, anisotropy, multiplier, residual, iterations, converged,
                                   stop_reason)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SymmetryRecord, S, S_rad, gap, relative_gap, anisotropy, grid_error_estimate,
                                   broken, transplant_lower_bound, transplant_family_best, lower_bound_holds,
                                   converged, iterations, resolutions)

namespace {

using nlohmann::json;

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void take(const json& j, const char* key, std::optional<T>& v) {
  if (const auto it = j.find(key); it != j.end() && !it->is_null()) v = it->template get<T>();
}

json record_to_json(const ResultRecord& r) {
  json j{{"command", r.command},
         {"alpha", r.alpha},
         {"gamma", r.gamma},
         {"eps", r.eps},
         {"nt", r.nt},
         {"ntheta", r.ntheta},
         {"config_hash", r.config_hash},
         {"wall_ms", r.wall_ms},
         {"iterations", r.iterations},
         {"converged", r.converged},
         {"error", r.error}};
  put(j, "eig", r.eig);
  put(j, "certificate", r.certificate);
  put(j, "radial", r.radial);
  put(j, "disk", r.disk);
  put(j, "symmetry", r.symmetry);
  put(j, "second_variation", r.second_variation);
  return j;
}

ResultRecord record_from_json(const json& j) {
  ResultRecord r;
  j.at("command").get_to(r.command);
  j.at("alpha").get_to(r.alpha);
  j.at("gamma").get_to(r.gamma);
  j.at("eps").get_to(r.eps);
  j.at("nt").get_to(r.nt);
  j.at("ntheta").get_to(r.ntheta);
  j.at("config_hash").get_to(r.config_hash);
  j.at("wall_ms").get_to(r.wall_ms);
  j.at("iterations").get_to(r.iterations);
  j.at("converged").get_to(r.converged);
  j.at("error").get_to(r.error);
  take(j, "eig", r.eig);
  take(j, "certificate", r.certificate);
  take(j, "radial", r.radial);
  take(j, "disk", r.disk);
  take(j, "symmetry", r.symmetry);
  take(j, "second_variation", r.second_variation);
  return r;
}

std::string cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
std::string cell(std::optional<double> v) { return v ? cell(*v) : std::string(); }
std::string cell(std::optional<bool> v) { return v ? (*v ? "true" : "false") : std::string(); }

}  // namespace

SymmetryRecord to_record(const SymmetryReport& r) {
  SymmetryRecord s;
  s.S = r.S;
  s.S_rad = r.S_rad;
  s.gap = r.gap;
  s.relative_gap = r.relative_gap;
  s.anisotropy = r.anisotropy;
  s.grid_error_estimate = r.grid_error_estimate;
  s.broken = r.broken;
  s.transplant_lower_bound = r.transplant_lower_bound;
  s.transplant_family_best = r.transplant_family_best;
  s.lower_bound_holds = r.lower_bound_holds;
  s.converged = r.converged;
  s.iterations = r.iterations;
  s.resolutions = r.resolutions;
  return s;
}

std::string to_json_text(const ReportDocument& doc) {
  json records = json::array();
  for (const auto& r : doc.records) records.push_back(record_to_json(r));
  json config = json::object();
  // Stored as the key=value text, which parse_config_text reads back exactly.
  config["text"] = serialize_config(doc.config);
  const json j{{"schema_version", doc.schema_version},
               {"config", config},
               {"config_hash", doc.config_hash},
               {"records", records}};
  return j.dump(2) + "\n";
}

ReportDocument parse_report_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("report.json: ") + e.what());
  }
  try {
    ReportDocument doc;
    doc.schema_version = j.at("schema_version").get<int>();
    if (doc.schema_version != kSchemaVersion)
      throw IoError("report.json: unsupported schema_version " + std::to_string(doc.schema_version));
    try {
      doc.config = parse_config_text(j.at("config").at("text").get<std::string>());
    } catch (const ConfigError& e) {
      throw IoError(std::string("report.json: bad config: ") + e.what());
    }
    doc.config_hash = j.at("config_hash").get<std::string>();
    for (const auto& r : j.at("records")) doc.records.push_back(record_from_json(r));
    return doc;
  } catch (const json::exception& e) {
    throw IoError(std::string("report.json: ") + e.what());
  }
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "alpha",          "gamma",      "eps",       "S",
      "S_rad",          "gap",        "anisotropy", "grid_error",
      "broken",         "d2f_normalized", "gamma_star_bound", "pohozaev_residual",
      "iterations",     "wall_ms",    "ratio",     "profile_distance",
      "converged"};
  return cols;
}

std::string to_csv(const std::vector<ResultRecord>& records) {
  std::string out;
  for (std::size_t k = 0; k < csv_columns().size(); ++k) out += (k ? "," : "") + csv_columns()[k];
  out += '\n';
  for (const auto& r : records) {
    std::optional<double> S, S_rad, gap, aniso, grid_error, d2f, gstar, pohozaev, ratio, distance;
    std::optional<bool> broken;
    if (r.radial) {
      S_rad = r.radial->S_rad;
      pohozaev = r.radial->pohozaev_residual;
      ratio = r.radial->ratio;
      distance = r.radial->profile_distance;
    }
    if (r.disk) {
      S = r.disk->S;
      aniso = r.disk->anisotropy;
      if (S_rad) gap = *S - *S_rad;
    }
    if (r.symmetry) {
      S = r.symmetry->S;
      S_rad = r.symmetry->S_rad;
      gap = r.symmetry->gap;
      aniso = r.symmetry->anisotropy;
      grid_error = r.symmetry->grid_error_estimate;
      broken = r.symmetry->broken;
    }
    if (r.second_variation) {
      d2f = r.second_variation->normalized;
      gstar = r.second_variation->gamma_star_bound;
      pohozaev = r.second_variation->pohozaev_residual;
    }
    const std::string row[] = {cell(r.alpha),
                               cell(r.gamma),
                               cell(r.eps),
                               cell(S),
                               cell(S_rad),
                               cell(gap),
                               cell(aniso),
                               cell(grid_error),
                               cell(broken),
                               cell(d2f),
                               cell(gstar),
                               cell(pohozaev),
                               std::to_string(r.iterations),
                               cell(r.wall_ms),
                               cell(ratio),
                               cell(distance),
                               r.converged ? "true" : "false"};
    for (std::size_t k = 0; k < std::size(row); ++k) out += (k ? "," : "") + row[k];
    out += '\n';
  }
  return out;
}

}  // namespace mhl
