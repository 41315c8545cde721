#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace lsasim::cli {

/// Lower-case hex SHA-256 of a file's bytes. Throws Error(Io) if unreadable.
[[nodiscard]] std::string sha256_file(const std::filesystem::path& path);
[[nodiscard]] std::string sha256_hex(const std::string& bytes);

/// Self-description of a run directory, stored as manifest.txt.
struct RunManifest {
  std::string tool_version;
  std::string timestamp;
  std::uint64_t master_seed = 0;
  /// source key ("traffic", "events") -> (path or "synthetic", digest or "-")
  std::map<std::string, std::pair<std::string, std::string>> inputs;
  /// file name relative to the run directory -> digest, in write order
  std::vector<std::pair<std::string, std::string>> outputs;
};

[[nodiscard]] std::string to_text(const RunManifest& m);
[[nodiscard]] RunManifest parse_manifest(const std::string& text);

/// UTC ISO-8601 time; honours SOURCE_DATE_EPOCH for reproducible runs.
[[nodiscard]] std::string current_timestamp();

/// Recomputes every digest in the manifest of `run_dir`. Returns one message
/// per mismatch or missing file; empty means the directory checks out.
[[nodiscard]] std::vector<std::string> verify_manifest(const std::filesystem::path& run_dir);

}  // namespace lsasim::cli
