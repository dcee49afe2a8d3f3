#include "qsnn/xcli/report.hpp"

#include <fstream>
#include <iomanip>

#include "qsnn/common/error.hpp"

#ifndef QSNN_VERSION
#define QSNN_VERSION "unknown"
#endif

namespace qsnn::xcli {

void ExperimentReport::check(std::string name, bool ok, std::string detail) {
  assertions.push_back({std::move(name), ok, std::move(detail)});
}

bool ExperimentReport::passed() const noexcept {
  for (const auto& a : assertions) {
    if (!a.passed) return false;
  }
  return true;
}

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json j;
  j["provenance"] = {{"experiment", experiment},
                     {"version", version_string()},
                     {"seed", config.value("seed", std::uint64_t{0})}};
  j["config"] = config;
  j["summary"] = summary;
  auto& as = j["assertions"] = nlohmann::json::array();
  for (const auto& a : assertions) {
    as.push_back({{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
  }
  j["passed"] = passed();
  j["rows"] = rows;
  return j;
}

std::string version_string() { return QSNN_VERSION; }

void write_curve_csv(const std::filesystem::path& path, const Curve& curve) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (std::size_t i = 0; i < curve.columns.size(); ++i) {
    out << (i ? "," : "") << curve.columns[i];
  }
  out << '\n' << std::setprecision(17);
  for (const auto& row : curve.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "report.json");
  if (!out) throw Error("cannot write " + (dir / "report.json").string());
  out << report.to_json().dump(2) << '\n';
  for (const auto& [name, curve] : report.curves) {
    write_curve_csv(dir / ("curve_" + name + ".csv"), curve);
  }
}

nlohmann::json load_report_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return nlohmann::json::parse(in);
}

}  // namespace qsnn::xcli
