#pragma once

// Cyclic complex Jacobi diagonalization for small Hermitian matrices.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "pauli_memory/error.hpp"
#include "pauli_memory/matrix.hpp"

namespace pauli_memory {

/// Eigenvalues of a Hermitian N x N matrix in descending order.
///
/// Each rotation zeroes one off-diagonal pair (p, q): a diagonal phase makes
/// the pair real, then a real Givens rotation annihilates it. Sweeps stop once
/// the off-diagonal Frobenius norm falls below 1e-15 of the matrix norm or
/// after `max_sweeps`. Throws NonHermitian if the input deviates from
/// Hermitian by more than 1e-9.
template <std::size_t N>
std::array<double, N> eigvals_hermitian(Matrix<N> a, int max_sweeps = 64) {
  if (const double d = hermiticity_defect(a); d > 1e-9)
    throw error(errc::non_hermitian, "hermiticity defect " + std::to_string(d));

  double scale = 0.0;
  for (const auto& x : a.a) scale += std::norm(x);
  scale = std::sqrt(scale);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
  };

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_norm() <= 1e-15 * scale) break;
    for (std::size_t p = 0; p < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const cplx g = a(p, q);
        const double mag = std::abs(g);
        if (mag == 0.0) continue;
        const cplx phase = g / mag;  // g = mag * phase

        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = 0.5 * (aqq - app) / mag;
        double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // U acts on the (p, q) plane as [[c, s], [-s conj(phase), c conj(phase)]].
        const cplx upq = s;
        const cplx uqp = -s * std::conj(phase);
        const cplx uqq = c * std::conj(phase);

        // a <- a U (columns p, q)
        for (std::size_t r = 0; r < N; ++r) {
          const cplx arp = a(r, p);
          const cplx arq = a(r, q);
          a(r, p) = arp * c + arq * uqp;
          a(r, q) = arp * upq + arq * uqq;
        }
        // a <- U^H a (rows p, q)
        for (std::size_t col = 0; col < N; ++col) {
          const cplx apc = a(p, col);
          const cplx aqc = a(q, col);
          a(p, col) = c * apc + std::conj(uqp) * aqc;
          a(q, col) = std::conj(upq) * apc + std::conj(uqq) * aqc;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::array<double, N> ev{};
  for (std::size_t i = 0; i < N; ++i) ev[i] = a(i, i).real();
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

inline std::array<double, 4> eig_hermitian4(const Matrix4& m) { return eigvals_hermitian(m); }

}  // namespace pauli_memory
