#pragma once

#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "pauli_memory/error.hpp"

namespace pauli_memory {

/// Parses "start:end:step" into start + i*step for every i with the value
/// at most end. Values within 1e-9 steps of `end` are snapped onto it, so
/// "0:1:0.1" ends exactly at 1. Throws OutOfRange on syntax errors, step <= 0,
/// start > end, or values outside [0,1].
inline std::vector<double> parse_mu_grid(std::string_view spec) {
  auto bad = [&](const std::string& why) { return error(errc::out_of_range, "mu grid \"" + std::string(spec) + "\": " + why); };
  std::vector<double> parts;
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    const std::size_t colon = spec.find(':', pos);
    if ((k < 2) != (colon != std::string_view::npos)) throw bad("expected start:end:step");
    const std::string tok(spec.substr(pos, k < 2 ? colon - pos : std::string_view::npos));
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size() || !std::isfinite(v)) throw bad("bad number \"" + tok + "\"");
    parts.push_back(v);
    pos = colon + 1;
  }
  const double start = parts[0], stop = parts[1], step = parts[2];
  if (!(step > 0.0)) throw bad("step must be positive");
  if (start > stop) throw bad("start exceeds end");
  if (start < 0.0 || stop > 1.0) throw bad("values must lie in [0,1]");

  std::vector<double> grid;
  for (long i = 0;; ++i) {
    double v = start + static_cast<double>(i) * step;
    if (v > stop + 1e-9 * step) break;
    if (std::abs(v - stop) <= 1e-9 * step) v = stop;
    grid.push_back(v);
    if (v == stop) break;
  }
  return grid;
}

}  // namespace pauli_memory
