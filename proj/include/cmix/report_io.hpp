#pragma once
// Serialized outputs for experiment runs: JSON for scalar reports, CSV for
// time series, flat binary for field snapshots.  Every emitted file is
// tracked in a RunManifest with a content digest so runs diff cleanly.
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace cmix {

using Json = nlohmann::json;

inline constexpr const char* kArtifactVersion = "1.0.0";

// 64-bit FNV-1a of the byte content, rendered as 16 hex digits.
std::string content_digest(const std::string& bytes);

// CSV with one header row; rows are printed with 17 significant digits so
// doubles round-trip exactly.
std::string csv_table(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct FileEntry {
  std::string path;
  std::string digest;
};

struct RunManifest {
  std::string artifact_version = kArtifactVersion;
  std::string subcommand;
  Json config;  // echo of the fully-resolved configuration
  double wall_seconds = 0.0;
  std::vector<CheckResult> checks;
  std::vector<FileEntry> files;

  bool all_passed() const;
  Json to_json() const;
};

// Writes bytes to path and appends a digest entry to the manifest.
void emit_file(RunManifest& m, const std::string& path, const std::string& bytes);
// JSON payload wrapped with the artifact version and the config digest so the
// file is self-describing; pretty-printed.
void emit_json(RunManifest& m, const std::string& path, const Json& payload);

// Flat binary snapshot of a complex field: "CMIXFLD1", uint64 rows, uint64
// cols, then row-major complex<double> pairs.
std::string field_snapshot_bytes(std::size_t rows, std::size_t cols,
                                 const std::vector<std::complex<double>>& amp);

// Reads a JSON configuration document; throws std::runtime_error naming the
// path on parse failure.
Json load_config_file(const std::string& path);

}  // namespace cmix
