#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "qsnn/mnist/idx.hpp"
#include "qsnn/quip/quip.hpp"
#include "qsnn/xcli/experiments.hpp"

using namespace qsnn;

namespace {

struct Flags {
  std::map<std::string, std::string> values;  // config key -> raw text
  std::string config_file;
  std::optional<bool> slack;
};

void add_common(CLI::App* sub, Flags& f) {
  auto opt = [&](const char* flag, const char* key, const char* help) {
    sub->add_option_function<std::string>(
        flag, [&f, key](const std::string& v) { f.values[key] = v; }, help);
  };
  opt("--m", "m", "control-register sizes, comma separated");
  opt("--q", "q", "repetition counts (odd), comma separated");
  opt("--trials", "trials", "trial count (pairs, grid points, ...)");
  opt("--seed", "seed", "RNG seed (default: $QSNN_SEED or 0)");
  opt("--out", "out", "output directory for report.json and curve_*.csv");
  opt("--mode", "mode", "circuit | analytic");
  sub->add_option("--config", f.config_file, "flat key = value config file");
  sub->add_flag_function(
      "--slack,!--no-slack",
      [&f](std::int64_t n) { f.slack = n > 0; }, "accept r_tilde +- 1 when voting");
}

int emit_error(const std::string& type, const std::string& message,
               std::optional<double> inner_product = std::nullopt) {
  nlohmann::json j = {{"error", {{"type", type}, {"message", message}}}};
  if (inner_product) j["error"]["inner_product"] = *inner_product;
  std::cout << j.dump(2) << '\n';
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-accelerated spiking neuron experiments"};
  app.require_subcommand(1);
  Flags f;

  struct Sub {
    const char* name;
    const char* help;
    xcli::Experiment id;
  };
  const Sub subs[] = {
      {"fig7", "success probability and accuracy over random pairs", xcli::Experiment::fig7},
      {"fig8", "majority-vote success probability vs repetitions", xcli::Experiment::fig8},
      {"appendix-a", "shots needed by plain swap-test repetition", xcli::Experiment::appendix_a},
      {"mnist", "0-vs-1 spiking classifier training curve", xcli::Experiment::mnist},
      {"quip", "single inner-product estimate", xcli::Experiment::quip_single},
  };
  std::map<CLI::App*, xcli::Experiment> ids;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, f);
    ids[sub] = s.id;
    if (s.id == xcli::Experiment::mnist) {
      sub->add_option_function<std::string>("--images", [&f](const std::string& v) { f.values["images"] = v; },
                                            "IDX image file");
      sub->add_option_function<std::string>("--labels", [&f](const std::string& v) { f.values["labels"] = v; },
                                            "IDX label file");
      sub->add_option_function<std::string>("--epochs", [&f](const std::string& v) { f.values["epochs"] = v; },
                                            "training epochs");
    }
    if (s.id == xcli::Experiment::quip_single) {
      sub->add_option_function<std::string>("--w", [&f](const std::string& v) { f.values["w"] = v; },
                                            "first vector, comma separated")
          ->required();
      sub->add_option_function<std::string>("--t", [&f](const std::string& v) { f.values["t"] = v; },
                                            "second vector, comma separated")
          ->required();
    }
  }

  CLI11_PARSE(app, argc, argv);

  xcli::Experiment id{};
  for (const auto& [sub, e] : ids) {
    if (sub->parsed()) id = e;
  }

  try {
    xcli::ExperimentConfig cfg = xcli::defaults_for(id);
    if (id == xcli::Experiment::mnist) {
      cfg.images = std::string(QSNN_DATA_DIR) + "/mnist/images.idx3-ubyte";
      cfg.labels = std::string(QSNN_DATA_DIR) + "/mnist/labels.idx1-ubyte";
    }
    if (!f.config_file.empty()) xcli::apply_config_file(cfg, f.config_file);
    for (const auto& [key, value] : f.values) xcli::apply_setting(cfg, key, value);
    if (f.slack) cfg.slack = *f.slack;

    const xcli::ExperimentReport report = xcli::run_experiment(cfg);
    if (id == xcli::Experiment::quip_single) {
      nlohmann::json rec = report.rows.front();
      rec["passed"] = report.passed();
      std::cout << rec.dump(2) << '\n';
    } else {
      xcli::write_report(report, cfg.out);
      std::cout << report.summary.dump(2) << '\n';
      for (const auto& a : report.assertions) {
        std::cout << (a.passed ? "PASS " : "FAIL ") << a.name;
        if (!a.detail.empty()) std::cout << " (" << a.detail << ")";
        std::cout << '\n';
      }
      std::cout << "report written to " << (cfg.out / "report.json").string() << '\n';
    }
    return report.passed() ? 0 : 1;
  } catch (const quip::UnsignedConstraintError& e) {
    return emit_error("unsigned_constraint", e.what(), e.inner_product());
  } catch (const mnist::IdxError& e) {
    return emit_error("dataset", e.what());
  } catch (const InvalidArgument& e) {
    return emit_error("invalid_argument", e.what());
  } catch (const std::exception& e) {
    return emit_error("runtime", e.what());
  }
}
