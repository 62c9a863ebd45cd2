#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "swarmform/scenario.hpp"

namespace swarmform::io {

inline constexpr const char* kToolVersion = "1.0.0";

struct OutputFile {
    std::string path;  ///< relative to the manifest's directory
    std::string sha256;
    std::uintmax_t bytes{0};
};

struct RunManifest {
    std::string tool_version{kToolVersion};
    std::string command;
    std::string config_json;  ///< render_config_json of the resolved spec
    std::uint64_t master_seed{0};
    std::string started_utc;
    std::string finished_utc;
    std::vector<OutputFile> outputs;
};

std::string sha256_file(const std::filesystem::path& path);

/// ISO-8601 UTC timestamp of the current time.
std::string utc_now();

/// Hashes each listed output (paths relative to dir) and fills `outputs`.
void record_outputs(RunManifest& manifest, const std::filesystem::path& dir,
                    const std::vector<std::string>& relative_paths);

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

}  // namespace swarmform::io
