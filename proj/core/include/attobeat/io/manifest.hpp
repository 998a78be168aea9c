#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "attobeat/analysis/beat_fit.hpp"
#include "attobeat/analysis/correlate.hpp"

namespace attobeat::io {

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

// ISO 8601 UTC. SOURCE_DATE_EPOCH, when set, replaces the clock so repeated
// runs write identical manifests.
std::string timestamp_now();

struct OutputEntry {
  std::string file;  // relative to the output directory
  std::string sha256;
};

struct RunManifest {
  std::string tool = "attobeat";
  std::string version;
  std::string mode;
  std::string config_sha256;
  std::uint64_t seed = 0;
  std::string started;
  std::string finished;
  std::size_t points = 0;
  std::size_t failed_points = 0;
  std::vector<OutputEntry> outputs;
  std::vector<std::string> warnings;
};

std::string to_json(const RunManifest& m);
RunManifest parse_manifest(const std::string& text);
// Hashes every listed output inside `dir` and writes dir/manifest.json.
void write_manifest(const std::string& dir, RunManifest m, const std::vector<std::string>& files);
RunManifest read_manifest(const std::string& path);

// Stable field names; numbers in %.11e, non-finite values as null.
std::string to_json(const analysis::BeatFit& fit);
std::string to_json(const analysis::CorrelationReport& rep);
void write_text(const std::string& path, const std::string& text);

std::string library_version();

}  // namespace attobeat::io
