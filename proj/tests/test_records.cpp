#include <gtest/gtest.h>

#include <sstream>

#include "mhl/errors.hpp"
#include "mhl/records.hpp"
#include "mhl/run.hpp"

using namespace mhl;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string piece;
  std::istringstream in(s);
  while (std::getline(in, piece, sep)) out.push_back(piece);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

ReportDocument sample_document() {
  ReportDocument doc;
  doc.config = parse_config_text("command=report alpha=200,300 gamma=12 out_dir=o");
  doc.config_hash = config_hash(doc.config);

  ResultRecord a;
  a.command = "report";
  a.alpha = 200.0;
  a.gamma = 12.0;
  a.eps = 2.0 / 202.0;
  a.nt = 128;
  a.ntheta = 2048;
  a.config_hash = doc.config_hash;
  a.wall_ms = 1234.0;
  a.iterations = 77;
  a.converged = true;
  a.certificate = carleson_chang_certificate();
  a.eig = EigRecord{2.404825557695773, 5.783185962946785, 0.4519087185569389, 1.0 / 3.0, 0.0199707728908691,
                    5.555066758698216};
  a.radial = RadialRecord{2.048e-4, 1.5, 1e-9, 1.0069, 0.011, 3e-8, 55, true, "converged"};
  a.disk = DiskRecord{6.2e-4, 0.997, 3.1, 2e-9, 300, true, "converged"};
  SymmetryRecord s;
  s.S = 6.2653e-4;
  s.S_rad = 2.048e-4;
  s.gap = s.S - s.S_rad;
  s.relative_gap = s.gap / s.S_rad;
  s.anisotropy = 0.997;
  s.grid_error_estimate = 2.4e-5;
  s.broken = true;
  s.transplant_lower_bound = 1e-4;
  s.transplant_family_best = "carleson_chang";
  s.lower_bound_holds = true;
  s.converged = true;
  s.iterations = 1337;
  ResolutionOutcome res;
  res.nt = 128;
  res.ntheta = 2048;
  res.S = s.S;
  res.best_start = "transplant";
  res.starts.push_back(StartOutcome{"radial_lift", 2e-4, 0.0, 1e-9, 3, true});
  s.resolutions = {res, res};
  a.symmetry = s;
  SecondVariationReport sv;
  sv.params = Params{200.0, 12.0, 2.0 / 202.0};
  sv.d2f_value = 1e-6;
  sv.normalized = 0.127;
  a.second_variation = sv;

  ResultRecord b;
  b.command = "report";
  b.alpha = 300.0;
  b.gamma = 12.0;
  b.converged = false;
  b.error = "blow-up: exponent too large";
  doc.records = {a, b};
  return doc;
}

}  // namespace

TEST(Records, JsonRoundTrip) {
  const ReportDocument doc = sample_document();
  const std::string text = to_json_text(doc);
  const ReportDocument back = parse_report_json(text);
  EXPECT_EQ(back, doc);
  EXPECT_EQ(to_json_text(back), text);
}

TEST(Records, RejectsBadJson) {
  EXPECT_THROW(parse_report_json("{"), IoError);
  EXPECT_THROW(parse_report_json("[]"), IoError);
  std::string text = to_json_text(sample_document());
  const auto pos = text.find("\"schema_version\": 1");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 19, "\"schema_version\": 2");
  EXPECT_THROW(parse_report_json(text), IoError);
}

TEST(Records, CsvShape) {
  const ReportDocument doc = sample_document();
  const std::vector<std::string> lines = split(to_csv(doc.records), '\n');
  ASSERT_EQ(lines.size(), 4u);  // header, two rows, trailing empty
  EXPECT_TRUE(lines.back().empty());
  const std::vector<std::string> header = split(lines[0], ',');
  EXPECT_EQ(header, csv_columns());
  EXPECT_EQ(header.front(), "alpha");
  EXPECT_EQ(header.back(), "converged");
  for (int k = 1; k <= 2; ++k) EXPECT_EQ(split(lines[k], ',').size(), header.size());

  const std::vector<std::string> row = split(lines[1], ',');
  auto col = [&](const std::vector<std::string>& r, const std::string& name) {
    for (std::size_t k = 0; k < header.size(); ++k)
      if (header[k] == name) return r[k];
    ADD_FAILURE() << name;
    return std::string();
  };
  EXPECT_EQ(col(row, "alpha"), "200");
  EXPECT_EQ(std::stod(col(row, "S")), 6.2653e-4);
  EXPECT_EQ(col(row, "broken"), "true");
  EXPECT_EQ(col(row, "converged"), "true");
  const std::vector<std::string> failed = split(lines[2], ',');
  EXPECT_EQ(col(failed, "S"), "");
  EXPECT_EQ(col(failed, "broken"), "");
  EXPECT_EQ(col(failed, "converged"), "false");
}

TEST(Records, DeterministicOutput) {
  RunConfig c = parse_config_text("command=sweep alpha=20,50 gamma=1,4 nt=256 workers=3");
  RunOutcome a = execute(c);
  c.workers = 1;
  RunOutcome b = execute(c);
  ASSERT_EQ(a.document.records.size(), 4u);
  for (auto* o : {&a, &b})
    for (ResultRecord& r : o->document.records) r.wall_ms = 0.0;
  // Thread count is not part of the hash; records match bit for bit.
  EXPECT_EQ(a.document.records, b.document.records);
  EXPECT_EQ(to_csv(a.document.records), to_csv(b.document.records));
}
