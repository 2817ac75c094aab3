// haptolab <experiment> --config <file> [--out <dir>] [--assert]
//
// Exit codes: 0 success, 2 config error, 3 solver failure, 4 failed check
// in --assert mode. HAPTOLAB_OUT_ROOT, when set, is prefixed to relative
// output directories.

#include "haptolab/errors.hpp"
#include "haptolab/experiment.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kConfigError = 2;
constexpr int kSolverError = 3;

const char* const kSubcommands[] = {"simulate-diffuse", "simulate-sharp", "compare",
                                    "generation",       "convergence",    "profile"};

std::filesystem::path resolve_out(const std::string& dir)
{
    std::filesystem::path out(dir);
    if (out.is_relative()) {
        if (const char* root = std::getenv("HAPTOLAB_OUT_ROOT"); root && *root) {
            out = std::filesystem::path(root) / out;
        }
    }
    return out;
}

int run(const std::string& subcommand, const std::string& config_path, const std::string& out_override,
        bool assert_mode, bool quiet)
{
    using namespace haptolab;
    std::string text;
    RunConfig cfg;
    try {
        std::ifstream in(config_path);
        if (!in) {
            throw ConfigError("cannot open config file " + config_path);
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
        cfg = parse_config_text(text, config_path);
        if (parse_experiment(subcommand) != cfg.experiment) {
            throw ConfigError(config_path + ": config is for experiment '" + experiment_name(cfg.experiment) +
                              "', not '" + subcommand + "'");
        }
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }

    const std::filesystem::path out = resolve_out(out_override.empty() ? cfg.output_dir : out_override);
    try {
        ProgressFn progress;
        if (!quiet) {
            progress = [](const std::string& what) { std::cerr << "[haptolab] " << what << '\n'; };
        }
        const ExperimentOutcome outcome = run_experiment(cfg, out, text, progress);
        for (const auto& c : outcome.checks) {
            std::cout << (c.passed ? "ok   " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail)
                      << '\n';
        }
        std::cout << "wrote " << out.string() << '\n';
        return outcome.exit_code(assert_mode);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const InvalidInitialData& e) {
        std::cerr << "config error: invalid initial data: " << e.what() << '\n';
        return kConfigError;
    } catch (const Error& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kSolverError;
    } catch (const std::exception& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kSolverError;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"haptolab: haptotaxis with bistable growth and its sharp-interface limit"};
    app.require_subcommand(1);
    std::string config_path;
    std::string out_dir;
    bool assert_mode = false;
    bool quiet = false;
    for (const char* name : kSubcommands) {
        CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
        sub->add_option("--config", config_path, "experiment config (JSON)")->required();
        sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
        sub->add_flag("--assert", assert_mode, "exit 4 if any check of the experiment fails");
        sub->add_flag("-q,--quiet", quiet, "no progress messages");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return e.get_exit_code() == 0 ? app.exit(e) : (app.exit(e), kConfigError);
    }
    return run(app.get_subcommands().front()->get_name(), config_path, out_dir, assert_mode, quiet);
}
