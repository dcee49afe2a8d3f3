#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>
#include "qsnn/quip/quip.hpp"

namespace qsnn::xcli {

enum class Experiment { fig7, fig8, appendix_a, mnist, quip_single };

/// Accepts fig7, fig7a, fig7b, fig8, appendixA / appendix-a, mnist,
/// quip / quip-single.
Experiment parse_experiment(const std::string& text);
const char* to_string(Experiment e) noexcept;

/// Environment variable consulted for the default seed.
inline constexpr const char* kSeedVariable = "QSNN_SEED";

struct ExperimentConfig {
  Experiment id = Experiment::fig7;
  std::vector<int> m_values;
  std::vector<int> q_values;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::filesystem::path out = "out";
  quip::Mode mode = quip::Mode::analytic;
  bool slack = true;

  // appendix-a
  std::vector<int> gammas{1, 2, 3, 4};
  std::size_t coverage_trials = 1000;
  double confidence = 0.95;
  std::size_t vector_dim = 4;

  // mnist
  std::filesystem::path images;
  std::filesystem::path labels;
  std::size_t train_count = 500;
  std::size_t test_count = 200;
  std::size_t epochs = 20;
  double lr = 0.02;
  double lr_decay = 5.0;
  int fire_label = 0;
  std::size_t quip_subset = 50;

  // quip-single
  std::vector<double> w;
  std::vector<double> t;

  /// Throws InvalidArgument on trials < 1, m < 2 or even/non-positive q.
  void validate() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Defaults for one experiment, with the seed taken from QSNN_SEED if set.
ExperimentConfig defaults_for(Experiment id);

/// Sets one field from its textual form. Keys match the JSON field names;
/// list values are comma separated. Throws InvalidArgument on an unknown key
/// or a malformed value.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Reads a flat `key = value` file ('#' starts a comment) and applies every
/// line in order.
void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace qsnn::xcli
