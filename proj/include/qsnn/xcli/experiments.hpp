#pragma once

#include <json.hpp>

#include "qsnn/xcli/config.hpp"
#include "qsnn/xcli/report.hpp"

namespace qsnn::xcli {

/// Random pairs with exact products spread over [0, 1]: per trial, success
/// probability of the rounded readout and realized error for every m.
ExperimentReport run_fig7(const ExperimentConfig& cfg);

/// Slack success probability and its q-fold majority vote across the
/// rounding-remainder range, for the first m value.
ExperimentReport run_fig8(const ExperimentConfig& cfg);

/// Shots needed by plain swap-test repetition to reach 2^-gamma accuracy,
/// and the log2(shots) vs gamma slope.
ExperimentReport run_appendix_a(const ExperimentConfig& cfg);

/// Binary 0-vs-1 training curve plus the quantum-provider agreement check.
ExperimentReport run_mnist(const ExperimentConfig& cfg);

/// One estimate of <w|t> with all intermediate quantities.
ExperimentReport quip_single(const ExperimentConfig& cfg);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Summary statistics that are a pure function of the rows.
nlohmann::json summarize(Experiment id, const nlohmann::json& rows);

/// Recomputes the row-derived summary of a loaded report.json and compares
/// it with the stored one (relative 1e-12 on numbers).
bool summary_consistent(const nlohmann::json& report);

}  // namespace qsnn::xcli
