#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace dualramsey {

inline constexpr const char* tool_version = "0.1.0";

/// Everything needed to re-run a CLI invocation. Only the wall-clock
/// duration differs between two runs of the same manifest.
struct RunManifest {
    std::string command;
    std::vector<std::string> argv;
    nlohmann::json parameters = nlohmann::json::object();
    struct Input {
        std::string path;
        std::string sha256;
    };
    std::vector<Input> inputs;
    std::string version = tool_version;
    double wall_clock_seconds = 0.0;

    nlohmann::json to_json() const;
};

/// Lowercase hex SHA-256 of a file's bytes. Throws std::runtime_error if unreadable.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(std::string_view bytes);

} // namespace dualramsey
