#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "syk/model.hpp"

namespace syk {

struct CommandResult {
    std::filesystem::path out_dir;
    std::vector<std::string> files;  // relative to out_dir, manifest last
    int exit_code = 0;               // nonzero only for convergence failure
};

// Baseline parameters for each subcommand; a config file and flag overrides
// are merged on top (flags win).
nlohmann::json default_config(const std::string& command);

// Runs one subcommand with a fully resolved config, writing data files plus
// manifest.json into out_dir.
CommandResult run_command(const std::string& command, const nlohmann::json& config,
                          const std::filesystem::path& out_dir, int threads);

// Re-executes the command recorded in a manifest; identical config + seed
// reproduce byte-identical data files.
CommandResult rerun_from_manifest(const std::filesystem::path& manifest_path,
                                  const std::filesystem::path& out_dir, int threads);

ModelParams model_params_from_json(const nlohmann::json& model, std::uint64_t seed);
nlohmann::json coupling_set_to_json(const CouplingSet& sample);
CouplingSet coupling_set_from_json(const nlohmann::json& j);

}  // namespace syk
