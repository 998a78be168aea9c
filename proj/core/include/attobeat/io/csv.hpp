#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "attobeat/essential_states.hpp"

namespace attobeat::io {

// Fixed scientific notation with 12 significant digits; non-finite -> "nan".
std::string format_number(double x);

inline constexpr const char* kScanHeader = "tau_as,A_M,P_beta,P_bg,yield_windowed";

// Appends one line per record and flushes, so an interrupted run leaves a
// readable prefix behind.
class ScanCsvWriter {
 public:
  // Truncates `path` and writes the header.
  explicit ScanCsvWriter(const std::string& path);
  void append(const ScanRecord& r);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
};

void write_scan_csv(const std::string& path, const DelayScan& scan);
// Reads a file in the scan schema; failed points (nan yield) come back with ok = false.
DelayScan read_scan_csv(const std::string& path);

// Header plus numeric columns; "nan" parses as NaN.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  // Throws IoError when the column is missing.
  std::vector<double> column(const std::string& name) const;
};
CsvTable read_csv(const std::string& path);

// (eps1_au, eps2_au, P) triples, eps1 slowest; rows = bins1 * bins2.
void write_spectrum_csv(const std::string& path, const EnergyAxis& e1, const EnergyAxis& e2,
                        const Eigen::MatrixXd& P);
// spectrum_tauXXXX.csv with the delay in attoseconds, rounded and zero padded.
std::string spectrum_file_name(double tau_au);

}  // namespace attobeat::io
