#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "syk/commands.hpp"
#include "syk/errors.hpp"
#include "syk/io.hpp"

namespace {

// Exit codes: 0 success, 2 config error, 3 numerical degeneracy,
// 4 convergence failure, 5 I/O error.
enum ExitCode : int {
    kOk = 0,
    kGeneric = 1,
    kConfigError = 2,
    kDegenerateError = 3,
    kConvergenceError = 4,
    kIoError = 5,
};

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    std::int64_t seed = -1;  // <0: keep config value
    int threads = 1;
    std::string engine;
};

void add_common(CLI::App* cmd, CommonOptions* opts) {
    cmd->add_option("--config", opts->config_path, "JSON config file (flags override it)");
    cmd->add_option("--out", opts->out_dir, "output directory");
    cmd->add_option("--seed", opts->seed, "master seed override");
    cmd->add_option("--threads", opts->threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--engine", opts->engine, "evolution engine: exact | trotter");
}

int run(const std::string& name, const CommonOptions& opts) {
    nlohmann::json config = syk::default_config(name);
    if (!opts.config_path.empty()) {
        nlohmann::json file;
        try {
            file = nlohmann::json::parse(syk::read_file(opts.config_path));
        } catch (const nlohmann::json::parse_error& e) {
            throw syk::ParameterError("bad config file: " + std::string(e.what()));
        }
        config.merge_patch(file);
    }
    if (opts.seed >= 0) config["seed"] = static_cast<std::uint64_t>(opts.seed);
    if (!opts.engine.empty()) config["engine"] = opts.engine;
    const std::filesystem::path out = opts.out_dir.empty()
                                          ? std::filesystem::path("out-" + name)
                                          : std::filesystem::path(opts.out_dir);
    const syk::CommandResult result = syk::run_command(name, config, out, opts.threads);
    for (const auto& f : result.files) {
        std::cout << (result.out_dir / f).string() << "\n";
    }
    if (result.exit_code == kConvergenceError) {
        std::cerr << "optimizer did not reach its goal; see trace.csv\n";
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized SYK desk-scale simulation toolkit"};
    app.require_subcommand(1);

    const std::vector<std::string> names = {"couplings", "fidelity-surface", "correlation",
                                            "scaling",   "compile",          "grape"};
    std::map<std::string, CommonOptions> options;
    for (const auto& name : names) {
        auto* cmd = app.add_subcommand(name);
        add_common(cmd, &options[name]);
    }
    auto* rerun = app.add_subcommand("rerun", "re-execute a run from its manifest");
    std::string manifest_path;
    CommonOptions rerun_opts;
    rerun->add_option("--manifest", manifest_path, "manifest.json of a previous run")->required();
    rerun->add_option("--out", rerun_opts.out_dir, "output directory")->required();
    rerun->add_option("--threads", rerun_opts.threads, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        for (const auto& name : names) {
            if (app.got_subcommand(name)) return run(name, options[name]);
        }
        if (app.got_subcommand("rerun")) {
            const syk::CommandResult result =
                syk::rerun_from_manifest(manifest_path, rerun_opts.out_dir, rerun_opts.threads);
            for (const auto& f : result.files) {
                std::cout << (result.out_dir / f).string() << "\n";
            }
            return result.exit_code;
        }
    } catch (const syk::ParameterError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const syk::DegenerateSampleError& e) {
        std::cerr << "degenerate sample: " << e.what() << "\n";
        return kDegenerateError;
    } catch (const syk::ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return kConvergenceError;
    } catch (const syk::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kGeneric;
    }
    return kGeneric;
}
