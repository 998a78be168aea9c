#include "attobeat/io/manifest.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include <json.hpp>

#include "attobeat/errors.hpp"
#include "attobeat/io/csv.hpp"

#ifndef ATTOBEAT_VERSION_STRING
#define ATTOBEAT_VERSION_STRING "0.0.0"
#endif

namespace attobeat::io {

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1) throw IoError("sha256 init failed");
  }
  ~Sha256() { EVP_MD_CTX_free(ctx_); }
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;
  void update(const char* p, std::size_t n) {
    if (EVP_DigestUpdate(ctx_, p, n) != 1) throw IoError("sha256 update failed");
  }
  std::string hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    if (EVP_DigestFinal_ex(ctx_, md, &len) != 1) throw IoError("sha256 final failed");
    std::string out;
    char b[3];
    for (unsigned i = 0; i < len; ++i) {
      std::snprintf(b, sizeof b, "%02x", md[i]);
      out += b;
    }
    return out;
  }

 private:
  EVP_MD_CTX* ctx_;
};

std::string num(double x) { return std::isfinite(x) ? format_number(x) : "null"; }

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.hex();
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  Sha256 h;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    h.update(buf, static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

std::string timestamp_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* e = std::getenv("SOURCE_DATE_EPOCH"); e && *e) {
    char* end = nullptr;
    const long long v = std::strtoll(e, &end, 10);
    if (end && *end == '\0' && v >= 0) t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["tool"] = m.tool;
  j["version"] = m.version;
  j["mode"] = m.mode;
  j["config_sha256"] = m.config_sha256;
  j["seed"] = m.seed;
  j["started"] = m.started;
  j["finished"] = m.finished;
  j["points"] = m.points;
  j["failed_points"] = m.failed_points;
  j["outputs"] = nlohmann::ordered_json::array();
  for (const auto& o : m.outputs) j["outputs"].push_back({{"file", o.file}, {"sha256", o.sha256}});
  j["warnings"] = m.warnings;
  return j.dump(2) + "\n";
}

RunManifest parse_manifest(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    RunManifest m;
    m.tool = j.at("tool").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.mode = j.at("mode").get<std::string>();
    m.config_sha256 = j.at("config_sha256").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.started = j.at("started").get<std::string>();
    m.finished = j.at("finished").get<std::string>();
    m.points = j.at("points").get<std::size_t>();
    m.failed_points = j.at("failed_points").get<std::size_t>();
    for (const auto& o : j.at("outputs")) m.outputs.push_back({o.at("file"), o.at("sha256")});
    m.warnings = j.at("warnings").get<std::vector<std::string>>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed manifest: ") + e.what());
  }
}

void write_manifest(const std::string& dir, RunManifest m, const std::vector<std::string>& files) {
  m.outputs.clear();
  for (const auto& f : files) m.outputs.push_back({f, sha256_file((std::filesystem::path(dir) / f).string())});
  write_text((std::filesystem::path(dir) / "manifest.json").string(), to_json(m));
}

RunManifest read_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

std::string to_json(const analysis::BeatFit& fit) {
  std::string s = "{\n  \"components\": [";
  for (std::size_t i = 0; i < fit.components.size(); ++i) {
    const auto& c = fit.components[i];
    s += i ? ",\n    " : "\n    ";
    s += "{\"amp\": " + num(c.amp) + ", \"freq_au\": " + num(c.freq) + ", \"gamma_au\": " + num(c.gamma) +
         ", \"phase\": " + num(c.phase) + "}";
  }
  s += fit.components.empty() ? "],\n" : "\n  ],\n";
  s += "  \"offset\": " + num(fit.offset) + ",\n";
  s += "  \"residual\": " + num(fit.residual) + ",\n";
  s += "  \"t_ref_au\": " + num(fit.t_ref) + ",\n";
  s += std::string("  \"converged\": ") + (fit.converged ? "true" : "false") + "\n}\n";
  return s;
}

std::string to_json(const analysis::CorrelationReport& rep) {
  return "{\n  \"pearson_r\": " + num(rep.pearson_r) + ",\n  \"lag\": " + std::to_string(rep.lag) +
         ",\n  \"r_at_lag\": " + num(rep.r_at_lag) + ",\n  \"nrmsd\": " + num(rep.nrmsd) + "\n}\n";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

std::string library_version() { return ATTOBEAT_VERSION_STRING; }

}  // namespace attobeat::io
