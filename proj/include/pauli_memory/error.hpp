#pragma once

#include <stdexcept>
#include <string>

namespace pauli_memory {

enum class errc {
  non_normalized,
  out_of_range,
  degenerate,
  no_threshold,
  invalid_state,
  non_hermitian,
  bad_index,
  not_pure,
  invalid_spectrum,
};

inline const char* to_string(errc code) noexcept {
  switch (code) {
    case errc::non_normalized: return "NonNormalized";
    case errc::out_of_range: return "OutOfRange";
    case errc::degenerate: return "Degenerate";
    case errc::no_threshold: return "NoThreshold";
    case errc::invalid_state: return "InvalidState";
    case errc::non_hermitian: return "NonHermitian";
    case errc::bad_index: return "BadIndex";
    case errc::not_pure: return "NotPure";
    case errc::invalid_spectrum: return "InvalidSpectrum";
  }
  return "Unknown";
}

/// Exception carrying one of the library's error kinds. what() is prefixed
/// with the kind name, e.g. "NonNormalized: sum of q is 1.2".
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace pauli_memory
