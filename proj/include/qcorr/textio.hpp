#pragma once

// Plain-text formats: 12-significant-digit numbers, state files, atomic writes.
//
// State file: 16 non-empty lines "re im" (row-major rho_rc over the basis
// |00>,|01>,|10>,|11>); '#' starts a comment that runs to end of line.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <system_error>

#include "qcorr/errors.hpp"
#include "qcorr/qmat.hpp"

namespace qcorr {

inline constexpr double kStateFileTol = 1e-8;

/// 12 significant digits; fixed notation unless |v| < 1e-4.
inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const double a = std::abs(v);
  if (!std::isfinite(v) || a < 1e-4) {
    std::snprintf(buf, sizeof buf, "%.11e", v);
  } else {
    const int exponent = static_cast<int>(std::floor(std::log10(a)));
    const int decimals = std::max(0, 11 - exponent);
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  }
  return buf;
}

/// Parses the 16-line state format. Throws InvalidState on malformed text.
inline Mat4 parse_state_text(std::istream& in) {
  Mat4 m;
  std::size_t count = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double re = 0.0, im = 0.0;
    if (!(fields >> re)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw InvalidState("state file line " + std::to_string(line_no) + ": expected 're im'");
    }
    std::string extra;
    if (!(fields >> im) || (fields >> extra))
      throw InvalidState("state file line " + std::to_string(line_no) + ": expected exactly two numbers");
    if (count == 16) throw InvalidState("state file has more than 16 entries");
    m.entries[count++] = cplx(re, im);
  }
  if (count != 16) throw InvalidState("state file has " + std::to_string(count) + " entries, expected 16");
  return m;
}

inline Mat4 read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open state file " + path.string());
  return parse_state_text(in);
}

inline std::string format_state_text(const Mat4& m) {
  std::string out = "# two-qubit density matrix, row-major, basis |00>,|01>,|10>,|11>\n";
  for (const auto& z : m.entries) out += format_number(z.real()) + " " + format_number(z.imag()) + "\n";
  return out;
}

/// Writes to a sibling temporary and renames it over `path`, so a failed
/// write never leaves a partial file.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

} // namespace qcorr
