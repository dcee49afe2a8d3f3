#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace qsnn::xcli {

struct Assertion {
  std::string name;
  bool passed;
  std::string detail;
};

/// Plot data written as <out>/curve_<name>.csv with a header row.
struct Curve {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ExperimentReport {
  std::string experiment;
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json rows = nlohmann::json::array();
  nlohmann::json summary = nlohmann::json::object();
  std::vector<Assertion> assertions;
  std::map<std::string, Curve> curves;

  void check(std::string name, bool ok, std::string detail = {});
  [[nodiscard]] bool passed() const noexcept;
  /// {"provenance", "config", "summary", "assertions", "rows"}.
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Build identifier baked in at configure time (git describe when available).
std::string version_string();

void write_curve_csv(const std::filesystem::path& path, const Curve& curve);

/// Writes report.json and every curve into `dir`, creating it if needed.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

nlohmann::json load_report_json(const std::filesystem::path& path);

}  // namespace qsnn::xcli
