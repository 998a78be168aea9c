#include "attobeat/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "attobeat/errors.hpp"
#include "attobeat/units.hpp"

namespace attobeat::io {

namespace {

double parse_cell(const std::string& cell, const std::string& path, int line) {
  std::string s = cell;
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.pop_back();
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  if (s == "nan" || s == "-nan" || s == "NaN") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw IoError(path + ":" + std::to_string(line) + ": not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

std::string scan_line(const ScanRecord& r) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double y = r.ok ? r.yield : nan;
  return format_number(units::au_to_as(r.tau)) + "," + format_number(r.ok ? r.A_M : nan) + "," +
         format_number(r.ok ? r.P_beta : nan) + "," + format_number(r.ok ? r.P_bg : nan) + "," + format_number(y) +
         "\n";
}

}  // namespace

std::string format_number(double x) {
  if (!std::isfinite(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return buf;
}

ScanCsvWriter::ScanCsvWriter(const std::string& path) : path_(path), out_(open_out(path)) {
  out_ << kScanHeader << "\n";
  out_.flush();
}

void ScanCsvWriter::append(const ScanRecord& r) {
  out_ << scan_line(r);
  out_.flush();
  if (!out_) throw IoError("write failed: " + path_);
}

void write_scan_csv(const std::string& path, const DelayScan& scan) {
  ScanCsvWriter w(path);
  for (const auto& r : scan.records) w.append(r);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  CsvTable t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line);
    if (t.header.empty()) {
      for (auto& c : cells) {
        while (!c.empty() && c.front() == ' ') c.erase(c.begin());
        while (!c.empty() && c.back() == ' ') c.pop_back();
      }
      t.header = cells;
      continue;
    }
    if (cells.size() != t.header.size())
      throw IoError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(t.header.size()) +
                    " columns");
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_cell(c, path, lineno));
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw IoError(path + ": empty file");
  return t;
}

std::vector<double> CsvTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] != name) continue;
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[c]);
    return out;
  }
  throw IoError("no column '" + name + "'");
}

DelayScan read_scan_csv(const std::string& path) {
  const CsvTable t = read_csv(path);
  const auto tau = t.column("tau_as"), am = t.column("A_M"), pb = t.column("P_beta"), bg = t.column("P_bg"),
             y = t.column("yield_windowed");
  DelayScan scan;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    ScanRecord r;
    r.tau = units::as_to_au(tau[i]);
    r.A_M = am[i];
    r.P_beta = pb[i];
    r.P_bg = bg[i];
    r.yield = y[i];
    r.ok = std::isfinite(y[i]);
    scan.records.push_back(r);
  }
  return scan;
}

void write_spectrum_csv(const std::string& path, const EnergyAxis& e1, const EnergyAxis& e2,
                        const Eigen::MatrixXd& P) {
  if (P.rows() != e1.bins || P.cols() != e2.bins) throw StructuralError("spectrum does not match its axes");
  auto out = open_out(path);
  out << "eps1_au,eps2_au,P\n";
  std::string buf;
  for (int i = 0; i < e1.bins; ++i) {
    const std::string a = format_number(e1.center(i)) + ",";
    for (int j = 0; j < e2.bins; ++j) {
      buf = a;
      buf += format_number(e2.center(j));
      buf += ',';
      buf += format_number(P(i, j));
      buf += '\n';
      out << buf;
    }
  }
  if (!out) throw IoError("write failed: " + path);
}

std::string spectrum_file_name(double tau_au) {
  const long as = std::lround(units::au_to_as(tau_au));
  char buf[64];
  std::snprintf(buf, sizeof buf, "spectrum_tau%04ld.csv", as);
  return buf;
}

}  // namespace attobeat::io
