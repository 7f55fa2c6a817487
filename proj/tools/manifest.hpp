#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace sednoise::cli {

/// Reproducibility record written beside every output file: the resolved
/// configuration, the tool version, and a digest of every input. Re-running
/// the subcommand with the same configuration on inputs with the same
/// digests reproduces the output byte for byte. Execution details that do
/// not affect the output (thread count) are not part of the manifest.
struct RunManifest {
  std::string subcommand;
  nlohmann::json config = nlohmann::json::object();
  std::map<std::string, std::string> inputs;  // path -> digest
  std::string output;
};

std::string manifest_to_json(const RunManifest& manifest);

/// Writes `<output>.manifest.json` next to the output file.
void write_manifest(const std::filesystem::path& output,
                    const RunManifest& manifest);

/// "fnv1a64:" followed by 16 hex digits over the raw bytes.
std::string content_digest(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace sednoise::cli
