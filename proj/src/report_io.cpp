#include "cmix/report_io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cmix {

std::string content_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string csv_table(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  char buf[32];
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw std::invalid_argument("csv_table: row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out << (i ? "," : "") << buf;
    }
    out << '\n';
  }
  return out.str();
}

bool RunManifest::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

Json RunManifest::to_json() const {
  Json j;
  j["artifact_version"] = artifact_version;
  j["subcommand"] = subcommand;
  j["config"] = config;
  j["wall_seconds"] = wall_seconds;
  j["all_passed"] = all_passed();
  j["checks"] = Json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["files"] = Json::array();
  for (const auto& f : files) j["files"].push_back({{"path", f.path}, {"digest", f.digest}});
  return j;
}

void emit_file(RunManifest& m, const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
  m.files.push_back({path, content_digest(bytes)});
}

void emit_json(RunManifest& m, const std::string& path, const Json& payload) {
  Json wrapped;
  wrapped["artifact_version"] = kArtifactVersion;
  wrapped["config_digest"] = content_digest(m.config.dump());
  wrapped["payload"] = payload;
  emit_file(m, path, wrapped.dump(2) + "\n");
}

std::string field_snapshot_bytes(std::size_t rows, std::size_t cols,
                                 const std::vector<std::complex<double>>& amp) {
  if (amp.size() != rows * cols)
    throw std::invalid_argument("field_snapshot_bytes: size mismatch");
  std::string out;
  out.reserve(8 + 16 + amp.size() * sizeof(std::complex<double>));
  out.append("CMIXFLD1", 8);
  const std::uint64_t dims[2] = {rows, cols};
  out.append(reinterpret_cast<const char*>(dims), sizeof dims);
  out.append(reinterpret_cast<const char*>(amp.data()),
             amp.size() * sizeof(std::complex<double>));
  return out;
}

Json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error("config parse error in " + path + ": " + e.what());
  }
}

}  // namespace cmix
