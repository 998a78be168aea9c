#include "attobeat/io/quantity.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

#include "attobeat/units.hpp"

namespace attobeat::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

[[noreturn]] void bad_unit(const Quantity& q, const char* kind) {
  throw std::invalid_argument("unit '" + q.unit + "' is not a " + kind + " unit");
}

}  // namespace

Quantity parse_quantity(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty value");
  Quantity q;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, q.value);
  if (ec != std::errc() || ptr == first) throw std::invalid_argument("'" + std::string(s) + "' is not a number");
  q.unit = std::string(trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr))));
  for (char c : q.unit) {
    if (std::isspace(static_cast<unsigned char>(c))) throw std::invalid_argument("malformed unit '" + q.unit + "'");
  }
  return q;
}

std::vector<Quantity> parse_quantity_list(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty() || s.front() != '[') return {parse_quantity(s)};
  const auto close = s.find(']');
  if (close == std::string_view::npos) throw std::invalid_argument("unterminated '['");
  const std::string unit(trim(s.substr(close + 1)));
  std::string_view body = trim(s.substr(1, close - 1));
  std::vector<Quantity> out;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const std::string_view item = trim(body.substr(0, comma));
    Quantity q = parse_quantity(item);
    if (!q.unit.empty() && !unit.empty()) throw std::invalid_argument("unit given both inside and after the list");
    if (q.unit.empty()) q.unit = unit;
    out.push_back(q);
    if (comma == std::string_view::npos) break;
    body = trim(body.substr(comma + 1));
    if (body.empty()) throw std::invalid_argument("trailing ',' in list");
  }
  return out;
}

double energy_au(const Quantity& q) {
  const std::string u = lower(q.unit);
  if (u.empty() || u == "au" || u == "a.u." || u == "hartree") return q.value;
  if (u == "ev") return units::eV_to_au(q.value);
  if (u == "nm") return units::eV_to_au(units::photon_energy_from_wavelength(q.value));
  bad_unit(q, "energy");
}

double time_au(const Quantity& q) {
  const std::string u = lower(q.unit);
  if (u.empty() || u == "au" || u == "a.u.") return q.value;
  if (u == "as") return units::as_to_au(q.value);
  if (u == "fs") return units::fs_to_au(q.value);
  bad_unit(q, "time");
}

double length_au(const Quantity& q) {
  const std::string u = lower(q.unit);
  if (u.empty() || u == "au" || u == "a.u." || u == "bohr") return q.value;
  bad_unit(q, "length");
}

double intensity_Wcm2(const Quantity& q) {
  const std::string u = lower(q.unit);
  if (u == "w/cm2" || u == "w/cm^2") return q.value;
  if (u.empty()) throw std::invalid_argument("intensity needs a unit (W/cm2)");
  bad_unit(q, "intensity");
}

}  // namespace attobeat::io
