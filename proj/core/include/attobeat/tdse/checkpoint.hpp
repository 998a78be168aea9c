#pragma once

#include <string>

#include "attobeat/tdse/grid.hpp"

namespace attobeat::tdse {

struct Checkpoint {
  Wavefunction2e psi;
  double time = 0.0;
  double norm = 0.0;
};

// 32-byte header of little-endian doubles (N, L, time, norm), then N*N complex
// doubles (re, im) row-major over (x1, x2), also little-endian.
void write_checkpoint(const std::string& path, const Wavefunction2e& psi, double time);
Checkpoint read_checkpoint(const std::string& path);

}  // namespace attobeat::tdse
