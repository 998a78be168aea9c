#include "attobeat/tdse/checkpoint.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "attobeat/errors.hpp"

namespace attobeat::tdse {

namespace {

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int b = 0; b < 8; ++b) r |= ((v >> (8 * b)) & 0xffu) << (8 * (7 - b));
    return r;
  }
  return v;
}

void put(std::vector<char>& buf, double d) {
  const std::uint64_t u = to_little(std::bit_cast<std::uint64_t>(d));
  char b[8];
  std::memcpy(b, &u, 8);
  buf.insert(buf.end(), b, b + 8);
}

double get(const char* p) {
  std::uint64_t u;
  std::memcpy(&u, p, 8);
  return std::bit_cast<double>(to_little(u));
}

}  // namespace

void write_checkpoint(const std::string& path, const Wavefunction2e& psi, double time) {
  std::vector<char> buf;
  buf.reserve(32 + psi.size() * 16);
  put(buf, psi.n());
  put(buf, psi.grid().L);
  put(buf, time);
  put(buf, psi.norm());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    put(buf, psi.data()[i].real());
    put(buf, psi.data()[i].imag());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open checkpoint for writing: " + path);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("failed writing checkpoint: " + path);
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint: " + path);
  char head[32];
  if (!in.read(head, 32)) throw IoError("truncated checkpoint header: " + path);
  const double nd = get(head);
  if (!(nd >= 64.0) || nd != std::floor(nd) || nd > 65536.0) throw IoError("invalid grid size in checkpoint: " + path);
  Grid2e g{static_cast<int>(nd), get(head + 8)};
  Checkpoint cp{Wavefunction2e(g), get(head + 16), get(head + 24)};
  std::vector<char> body(cp.psi.size() * 16);
  if (!in.read(body.data(), static_cast<std::streamsize>(body.size()))) throw IoError("truncated checkpoint: " + path);
  for (std::size_t i = 0; i < cp.psi.size(); ++i) cp.psi.data()[i] = {get(&body[16 * i]), get(&body[16 * i + 8])};
  return cp;
}

}  // namespace attobeat::tdse
