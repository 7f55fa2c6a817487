#include "manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sednoise/rng.hpp"
#include "sednoise/version.hpp"

namespace sednoise::cli {

std::string manifest_to_json(const RunManifest& manifest) {
  nlohmann::json doc = {{"tool", "sednoise"},
                        {"version", std::string(kVersion)},
                        {"subcommand", manifest.subcommand},
                        {"config", manifest.config},
                        {"inputs", manifest.inputs},
                        {"output", manifest.output}};
  return doc.dump(2) + "\n";
}

void write_manifest(const std::filesystem::path& output,
                    const RunManifest& manifest) {
  std::filesystem::path path = output;
  path += ".manifest.json";
  write_file(path, manifest_to_json(manifest));
}

std::string content_digest(std::string_view bytes) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw std::runtime_error("write failed for '" + path.string() + "'");
  }
}

}  // namespace sednoise::cli
