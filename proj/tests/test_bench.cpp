#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mosum/bench.hpp"
#include "mosum/io.hpp"

using namespace mosum;

namespace {

BenchConfig small_config() {
  BenchConfig c;
  c.models = {"eet", "mix"};
  c.reps = 6;
  c.seed = 3;
  c.baseline.calibration_reps = 200;
  return c;
}

}  // namespace

TEST(Summarize, DirectArithmetic) {
  std::vector<ReplicationRecord> records;
  for (std::int64_t e : {0, 1, -1})
    records.push_back({"et", Method::mosum_sdll, records.size(), static_cast<std::size_t>(199 + e), e,
                       0.0, 0.5});
  const auto s = summarize("et", Method::mosum_sdll, records);
  EXPECT_DOUBLE_EQ(s.mean_error, 0.0);
  EXPECT_DOUBLE_EQ(s.mean_abs_error, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.mean_sq_error, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.mean_fit_mse, 0.0);
  EXPECT_DOUBLE_EQ(s.mean_seconds, 0.5);
  EXPECT_THROW(summarize("eet", Method::mosum_sdll, records), std::invalid_argument);
}

TEST(BenchConfig, Validation) {
  BenchConfig c = small_config();
  c.methods.clear();
  EXPECT_THROW(run_benchmark(c), std::invalid_argument);
  c = small_config();
  c.models.clear();
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = small_config();
  c.models = {"nope"};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = small_config();
  c.reps = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_THROW(parse_method("wbs2-sdll"), std::invalid_argument);
}

TEST(RunBenchmark, MomentInequalitiesAndShape) {
  const auto report = run_benchmark(small_config());
  ASSERT_EQ(report.summaries.size(), 4u);
  ASSERT_EQ(report.records.size(), 2u * 2u * 6u);
  ASSERT_EQ(report.models.size(), 2u);
  for (const auto& s : report.summaries) {
    EXPECT_GE(s.mean_sq_error + 1e-12, s.mean_error * s.mean_error);
    EXPECT_GE(s.mean_abs_error + 1e-12, std::abs(s.mean_error));
    EXPECT_GE(s.mean_fit_mse, 0.0);
    EXPECT_GT(s.mean_seconds, 0.0);
  }
}

TEST(RunBenchmark, DeterministicSerialAndParallel) {
  auto config = small_config();
  const auto serial = run_benchmark(config);
  config.threads = 3;
  const auto parallel = run_benchmark(config);
  EXPECT_EQ(metric_section(serial), metric_section(parallel));
  EXPECT_EQ(metric_section(serial), metric_section(run_benchmark(small_config())));
  ASSERT_EQ(serial.records.size(), parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    EXPECT_EQ(serial.records[i].n_hat, parallel.records[i].n_hat);
    EXPECT_EQ(serial.records[i].fit_mse, parallel.records[i].fit_mse);
  }
}

TEST(Report, JsonRoundTrip) {
  const auto report = run_benchmark(small_config());
  EXPECT_EQ(report_from_json(report_to_json(report)), report);
}

TEST(Report, CsvHasFiveRowsPerModelAndMethod) {
  const auto report = run_benchmark(small_config());
  std::istringstream in(report_to_csv(report));
  std::string line;
  std::size_t rows = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.rfind('#', 0) == 0) continue;
    if (!header) {
      EXPECT_EQ(line, "model,method,metric,value");
      header = true;
      continue;
    }
    ++rows;
  }
  EXPECT_EQ(rows, 2u * 2u * 5u);
  EXPECT_NE(report_to_csv(report).find("\"lambda\":0.9"), std::string::npos);
}

TEST(Report, EmitPicksFormatByExtension) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto report = run_benchmark(small_config());
  emit_report(report, dir / "mosum_report_test.json");
  emit_report(report, dir / "mosum_report_test.csv");
  std::ifstream json_in(dir / "mosum_report_test.json");
  std::stringstream text;
  text << json_in.rdbuf();
  EXPECT_EQ(report_from_json(text.str()), report);
  std::ifstream csv_in(dir / "mosum_report_test.csv");
  std::string first;
  std::getline(csv_in, first);
  EXPECT_EQ(first.rfind("# config", 0), 0u);
  EXPECT_THROW(emit_report(report, dir / "no_such_dir" / "x.csv"), std::runtime_error);
}

TEST(SeriesCsv, ReadsOptionalHeaderAndRejectsGarbage) {
  std::istringstream with_header("x\n1\n2.5\n-3e-1\n");
  EXPECT_EQ(read_series_csv(with_header).values, (std::vector<double>{1, 2.5, -0.3}));
  std::istringstream without_header("4\n5\n");
  EXPECT_EQ(read_series_csv(without_header).values, (std::vector<double>{4, 5}));
  std::istringstream garbage("x\n1\nfoo\n");
  EXPECT_THROW(read_series_csv(garbage), std::runtime_error);
  std::istringstream too_short("x\n1\n");
  EXPECT_THROW(read_series_csv(too_short), std::invalid_argument);
}

TEST(SeriesCsv, WriteThenReadIsExact) {
  const TimeSeries s{{0.1, -2.0 / 3.0, 1e-300, 12345.678901234567}};
  std::stringstream buffer;
  write_series_csv(buffer, s);
  EXPECT_EQ(read_series_csv(buffer).values, s.values);
}

TEST(PathJson, RoundTrip) {
  SolutionPath path;
  path.entries = {{5, 1.5, {2, 3}, 0}, {9, 0.25, {1, 1}, 1}};
  path.iterations = 2;
  EXPECT_EQ(path_from_json(path_to_json(path)), path);
  EXPECT_NE(path_to_json(path).find("\"g_l\":2"), std::string::npos);
}
