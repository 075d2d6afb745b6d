// SPDX-License-Identifier: Apache-2.0
// Report bundles: an output directory plus manifest.json listing every file
// with its digest, the effective configuration and the inputs.
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "botlens/digest.hpp"
#include "botlens/error.hpp"
#include "json.hpp"

#ifndef BOTLENS_VERSION
#define BOTLENS_VERSION "0.0.0"
#endif

namespace botlens::report {

namespace fs = std::filesystem;

inline constexpr const char* kToolName = "botlens";
inline constexpr const char* kManifestName = "manifest.json";

struct FileDigest {
  std::string path;  // relative to the bundle root for outputs
  std::string sha256;
  std::uint64_t bytes = 0;
  std::string role;  // inputs only: corpus, partition, traces, ...

  bool operator==(const FileDigest&) const = default;
};

inline FileDigest digest_file(const fs::path& file, std::string recorded_as, std::string role = {}) {
  std::error_code ec;
  const auto size = fs::file_size(file, ec);
  if (ec) throw DataError("cannot stat " + file.string());
  return {std::move(recorded_as), sha256_file(file), size, std::move(role)};
}

inline FileDigest digest_input(const fs::path& file, std::string role) {
  return digest_file(file, file.string(), std::move(role));
}

/// Collects output files under one root. Paths use '/' and are relative.
class BundleWriter {
 public:
  explicit BundleWriter(fs::path root) : root_(std::move(root)) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec) throw DataError("cannot create output directory " + root_.string() + ": " + ec.message());
  }

  const fs::path& root() const { return root_; }

  void write(const std::string& rel, std::string_view content) {
    if (rel == kManifestName) throw UsageError("manifest.json is reserved");
    const auto path = root_ / rel;
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DataError("failed writing " + path.string());
    files_.insert(rel);
  }

  /// Records a file that something else already wrote under the root.
  void adopt(const std::string& rel) {
    if (!fs::exists(root_ / rel)) throw DataError("missing bundle file " + rel);
    files_.insert(rel);
  }

  std::vector<FileDigest> digests() const {
    std::vector<FileDigest> out;
    for (const auto& rel : files_) out.push_back(digest_file(root_ / rel, rel));
    return out;
  }

 private:
  fs::path root_;
  std::set<std::string> files_;
};

struct RunManifest {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::uint64_t seed = 0;
  std::vector<FileDigest> inputs;
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();  // command-specific sections
  std::vector<FileDigest> files;
  // Execution-only fields: they never influence outputs and are kept out
  // of the configuration hash.
  double wall_clock_seconds = 0.0;
  std::size_t threads = 1;
  std::size_t shards = 1;
};

inline std::string config_hash(const nlohmann::ordered_json& config) { return sha256_hex(config.dump()); }

inline nlohmann::ordered_json digests_json(const std::vector<FileDigest>& v) {
  auto a = nlohmann::ordered_json::array();
  for (const auto& d : v) {
    nlohmann::ordered_json e;
    if (!d.role.empty()) e["role"] = d.role;
    e["path"] = d.path;
    e["sha256"] = d.sha256;
    e["bytes"] = d.bytes;
    a.push_back(std::move(e));
  }
  return a;
}

inline nlohmann::ordered_json to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["tool"] = kToolName;
  j["version"] = BOTLENS_VERSION;
  j["command"] = m.command;
  j["config"] = m.config;
  j["config_hash"] = config_hash(m.config);
  j["seed"] = m.seed;
  j["inputs"] = digests_json(m.inputs);
  j["counts"] = m.counts;
  for (const auto& [k, v] : m.extra.items()) j[k] = v;
  j["files"] = digests_json(m.files);
  j["runtime"] = {{"wall_clock_seconds", m.wall_clock_seconds}, {"threads", m.threads}, {"shards", m.shards}};
  return j;
}

/// Digests every file the writer produced and writes manifest.json.
inline nlohmann::ordered_json write_manifest(const BundleWriter& w, RunManifest m) {
  m.files = w.digests();
  auto j = to_json(m);
  std::ofstream out(w.root() / kManifestName, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write manifest in " + w.root().string());
  out << j.dump(2) << '\n';
  if (!out) throw DataError("failed writing manifest in " + w.root().string());
  return j;
}

/// The manifest minus its runtime section: equal across runs that must
/// produce the same bundle.
inline nlohmann::ordered_json reproducible_part(nlohmann::ordered_json manifest) {
  manifest.erase("runtime");
  return manifest;
}

inline nlohmann::ordered_json read_manifest(const fs::path& dir) {
  std::ifstream in(dir / kManifestName);
  if (!in) throw DataError("no manifest.json in " + dir.string());
  try {
    return nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed manifest in " + dir.string() + ": " + e.what());
  }
}

struct BundleCheck {
  std::size_t files_checked = 0;
  std::vector<std::string> problems;
  std::vector<std::string> unlisted;  // files present but not in the manifest

  bool ok() const { return problems.empty(); }
};

/// Re-hashes every listed file. Missing files, digest or size mismatches, a
/// stale config hash and paths escaping the bundle are problems; unlisted
/// files are only reported.
inline BundleCheck validate_bundle(const fs::path& dir) {
  const auto m = read_manifest(dir);
  BundleCheck check;
  try {
    if (m.at("tool").get<std::string>() != kToolName) check.problems.push_back("manifest was not written by botlens");
    if (config_hash(m.at("config")) != m.at("config_hash").get<std::string>())
      check.problems.push_back("config_hash does not match config");
    std::set<std::string> listed;
    for (const auto& f : m.at("files")) {
      const auto rel = f.at("path").get<std::string>();
      listed.insert(rel);
      ++check.files_checked;
      const fs::path p(rel);
      if (p.is_absolute() || rel.find("..") != std::string::npos) {
        check.problems.push_back(rel + ": path leaves the bundle");
        continue;
      }
      if (!fs::is_regular_file(dir / p)) {
        check.problems.push_back(rel + ": missing");
        continue;
      }
      const auto d = digest_file(dir / p, rel);
      if (d.bytes != f.at("bytes").get<std::uint64_t>())
        check.problems.push_back(rel + ": size " + std::to_string(d.bytes) + " != " +
                                 std::to_string(f.at("bytes").get<std::uint64_t>()));
      if (d.sha256 != f.at("sha256").get<std::string>()) check.problems.push_back(rel + ": sha256 mismatch");
    }
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
      if (!e.is_regular_file()) continue;
      auto rel = fs::relative(e.path(), dir).generic_string();
      if (rel != kManifestName && !listed.count(rel)) check.unlisted.push_back(rel);
    }
    std::sort(check.unlisted.begin(), check.unlisted.end());
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed manifest: ") + e.what());
  }
  return check;
}

/// Seconds since construction, for the runtime section.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace botlens::report
