#pragma once

#include "haptolab/diffuse.hpp"
#include "haptolab/initial_data.hpp"
#include "haptolab/sharp.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace haptolab {

enum class ExperimentKind { diffuse, sharp, compare, generation, convergence, profile };

std::string experiment_name(ExperimentKind kind);
// Accepts both the config spelling ("diffuse") and the CLI subcommand
// ("simulate-diffuse"). Throws ConfigError.
ExperimentKind parse_experiment(std::string_view name);

// A complete, validated experiment description. Every field has a default,
// so {"experiment": "profile"} is a valid config.
struct RunConfig {
    ExperimentKind experiment = ExperimentKind::profile;

    int grid_n = 128;            // unit-square cells per axis (diffuse, sharp, compare)
    double cells_per_eps = 4.0;  // eps-driven grids: h <= eps / cells_per_eps

    HaptoParams params;
    double chi_v_max = ChiSpec::kDefaultVMax;

    ShapeSpec shape = ShapeSpec::circle({0.5, 0.5}, 0.3);
    double width = 0.0;  // u0 profile width; 0 selects eps
    double d0 = 0.01;    // initial wall clearance parameter
    Saturation saturation;  // clamps of the distance inside the u0 profile; 0 disables
    ModeSum v0{1.0, {{1, 1, 0.3}}};
    ModeSum m0 = ModeSum::uniform(0.0);

    int sharp_n = 256;
    SharpParams sharp{0.01, 5, 8};

    double T = 0.01;
    int snapshot_count = 10;
    std::vector<double> snapshot_times;  // overrides snapshot_count when non-empty

    std::vector<double> eps_list;

    double eta = 0.1;
    double M0 = 1.0;

    bool envelope_enabled = false;
    double envelope_d0 = 0.06;
    double envelope_K = 1.2;

    double profile_half_width = 20.0;
    int profile_n = 4000;

    std::string output_dir = "out";
    bool write_fields = true;
    std::uint64_t seed = 1;

    // snapshot times in (0, T]
    std::vector<double> schedule() const;
};

// Parses and validates JSON text. Unknown keys, type mismatches and violated
// preconditions raise ConfigError naming the key path (and line/column for
// syntax errors).
RunConfig parse_config_text(std::string_view text, std::string_view source = "<config>");
RunConfig parse_config_file(const std::filesystem::path& path);

// Throws ConfigError naming the violated precondition.
void validate_config(const RunConfig& cfg);

// Canonical JSON for the config: every key present, keys sorted.
std::string emit_config(const RunConfig& cfg);
// emit_config(parse_config_text(text)).
std::string normalize_config_text(std::string_view text);

}  // namespace haptolab
