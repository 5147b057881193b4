#pragma once

#include "wlab/lab/config.hpp"
#include "wlab/lab/report.hpp"

namespace wlab::lab {

ExperimentReport run_quantization_rates(const ExperimentConfig& config);
ExperimentReport run_simultaneous_tradeoff(const ExperimentConfig& config);
ExperimentReport run_example_gap(const ExperimentConfig& config);
ExperimentReport run_mfc_convergence(const ExperimentConfig& config);
ExperimentReport run_heat_projection(const ExperimentConfig& config);

// dispatch by config.experiment
ExperimentReport run_experiment(const ExperimentConfig& config);

// Verdicts are a pure function of the stored rows and thresholds; this is
// what `lab verify` re-runs against a persisted report.
std::vector<Verdict> recompute_verdicts(const std::string& experiment, const DataTable& table,
                                        const std::map<std::string, double>& thresholds);

// Creates <out>/<experiment>/<stamp>/ with config.toml, rows.csv, report.json
// (and plot.svg when requested); returns the run directory.
std::string persist_run(const ExperimentConfig& config, const ExperimentReport& report);

} // namespace wlab::lab
