#pragma once

#include "haptolab/config.hpp"
#include "haptolab/studies.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace haptolab {

inline constexpr const char* kVersion = "0.1.0";

struct AssertCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ExperimentOutcome {
    std::filesystem::path out_dir;
    std::vector<AssertCheck> checks;
    double seconds = 0.0;

    bool all_passed() const;
    // 0, or 4 when assert mode found a failed check
    int exit_code(bool assert_mode) const;
};

// Runs the pipeline of cfg.experiment and writes into out_dir:
//   manifest.json   config echo (normalized and verbatim), version, wall time
//   metrics.csv     per-time series (17 significant digits)
//   report.json     summary numbers and the check list
//   fields/         grid snapshots and interface polylines (write_fields)
// Numeric files depend only on the config. The checks are always evaluated;
// the caller decides whether they matter. Solver errors propagate.
ExperimentOutcome run_experiment(const RunConfig& cfg, const std::filesystem::path& out_dir,
                                 const std::string& config_text = {}, const ProgressFn& progress = {});

}  // namespace haptolab
