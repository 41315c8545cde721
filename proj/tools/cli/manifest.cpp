#include "cli/manifest.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>

#include "lsasim/config.hpp"
#include "lsasim/csv.hpp"
#include "lsasim/error.hpp"

namespace lsasim::cli {

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCategory::Io, "SHA-256 computation failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::Io, fmt::format("cannot read '{}'", path.string()));
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return sha256_hex(bytes);
}

std::string to_text(const RunManifest& m) {
  std::ostringstream out;
  out << "tool = lsasim\n";
  out << "tool_version = " << m.tool_version << '\n';
  out << "timestamp = " << m.timestamp << '\n';
  out << "master_seed = " << m.master_seed << '\n';
  for (const auto& [key, value] : m.inputs) {
    out << "input." << key << " = " << value.first << ' ' << value.second << '\n';
  }
  for (const auto& [name, digest] : m.outputs) out << "output." << name << " = " << digest << '\n';
  return out.str();
}

RunManifest parse_manifest(const std::string& text) {
  RunManifest m;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = csv::trim(line);
    if (body.empty()) continue;
    const auto eq = body.find(" = ");
    if (eq == std::string_view::npos) {
      throw Error(ErrorCategory::Validation, fmt::format("manifest line {} malformed", line_no));
    }
    const std::string key(body.substr(0, eq));
    const std::string value(body.substr(eq + 3));
    if (key == "tool") continue;
    if (key == "tool_version") {
      m.tool_version = value;
    } else if (key == "timestamp") {
      m.timestamp = value;
    } else if (key == "master_seed") {
      m.master_seed = std::stoull(value);
    } else if (key.starts_with("input.")) {
      const auto sp = value.rfind(' ');
      if (sp == std::string::npos) {
        throw Error(ErrorCategory::Validation, fmt::format("manifest line {} malformed", line_no));
      }
      m.inputs[key.substr(6)] = {value.substr(0, sp), value.substr(sp + 1)};
    } else if (key.starts_with("output.")) {
      m.outputs.emplace_back(key.substr(7), value);
    } else {
      throw Error(ErrorCategory::Validation,
                  fmt::format("manifest line {}: unknown key '{}'", line_no, key));
    }
  }
  return m;
}

std::string current_timestamp() {
  std::time_t t = 0;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm utc{};
  gmtime_r(&t, &utc);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf.data();
}

std::vector<std::string> verify_manifest(const std::filesystem::path& run_dir) {
  const auto path = run_dir / "manifest.txt";
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCategory::Validation, fmt::format("no manifest in '{}'", run_dir.string()));
  }
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto m = parse_manifest(text);

  std::vector<std::string> problems;
  for (const auto& [key, value] : m.inputs) {
    const auto& [source, digest] = value;
    if (source == kSyntheticSource) continue;
    if (!std::filesystem::exists(source)) {
      problems.push_back(fmt::format("input {} '{}' is missing", key, source));
    } else if (sha256_file(source) != digest) {
      problems.push_back(fmt::format("input {} '{}' changed since the run", key, source));
    }
  }
  for (const auto& [name, digest] : m.outputs) {
    const auto file = run_dir / name;
    if (!std::filesystem::exists(file)) {
      problems.push_back(fmt::format("output '{}' is missing", name));
    } else if (sha256_file(file) != digest) {
      problems.push_back(fmt::format("output '{}' does not match its digest", name));
    }
  }
  return problems;
}

}  // namespace lsasim::cli
