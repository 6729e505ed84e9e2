#pragma once

// General two-qubit pure states, their Pauli-basis decomposition, and the
// two families of candidate optimal inputs (sigma_l eigenstate products and
// Bell states).

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "pauli_memory/error.hpp"
#include "pauli_memory/matrix.hpp"

namespace pauli_memory {

/// Six real parameters of
///   |psi> = c00|00> + c11 e^{i phi11}|11> + c10 e^{i phi10}|10> + c01 e^{i phi01}|01>
/// where the moduli c are parametrized by the three angles theta, phi, psi.
struct PureStateParams {
  double theta = 0.0;
  double phi = 0.0;
  double psi = 0.0;
  double phi11 = 0.0;
  double phi10 = 0.0;
  double phi01 = 0.0;

  /// (phi10 + phi01 - phi11) / 2
  double varphi() const noexcept { return 0.5 * (phi10 + phi01 - phi11); }

  friend bool operator==(const PureStateParams&, const PureStateParams&) = default;
};

struct Amplitudes {
  double c00 = 0.0;
  double c11 = 0.0;
  double c10 = 0.0;
  double c01 = 0.0;
};

/// Amplitudes over |00>, |01>, |10>, |11>.
using StateVector = std::array<cplx, 4>;

/// 4x4 Hermitian, unit-trace, positive semidefinite operator.
using DensityOperator = Matrix4;

/// Real coefficients w(n, k) = Tr(rho sigma_n (x) sigma_k), so that
/// rho = 1/4 sum_{n,k} w(n, k) sigma_n (x) sigma_k.
struct PauliWeights {
  std::array<double, 16> w{};

  double& operator()(int n, int k) { return w[4 * n + k]; }
  double operator()(int n, int k) const { return w[4 * n + k]; }

  static PauliWeights maximally_mixed() {
    PauliWeights p;
    p(0, 0) = 1.0;
    return p;
  }
};

// Entries of c may be negative for some angle ranges; the sign is kept.
inline Amplitudes amplitudes_from_angles(double theta, double phi, double psi) {
  const double ct = std::cos(0.5 * theta);
  const double st = std::sin(0.5 * theta);
  const double sum = 0.5 * (phi + psi);
  const double diff = 0.5 * (phi - psi);
  return {std::cos(sum) * ct, std::sin(diff) * st, std::cos(diff) * st, std::sin(sum) * ct};
}

inline StateVector state_vector(const PureStateParams& p) {
  const Amplitudes c = amplitudes_from_angles(p.theta, p.phi, p.psi);
  return {cplx{c.c00, 0.0}, std::polar(c.c01, p.phi01), std::polar(c.c10, p.phi10),
          std::polar(c.c11, p.phi11)};
}

inline double norm(const StateVector& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

/// |v><v|. Throws NonNormalized if the norm of v is off by more than 1e-9.
inline DensityOperator density_matrix(const StateVector& v) {
  const double n = norm(v);
  if (!(std::abs(n - 1.0) <= 1e-9))
    throw error(errc::non_normalized, "state vector norm is " + std::to_string(n));
  DensityOperator rho;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) rho(i, j) = v[i] * std::conj(v[j]);
  return rho;
}

/// All sixteen traces Tr(rho sigma_n (x) sigma_k). Throws NonHermitian when a
/// trace has an imaginary part above 1e-9.
inline PauliWeights pauli_weights(const DensityOperator& rho) {
  PauliWeights out;
  for (int n = 0; n < 4; ++n)
    for (int k = 0; k < 4; ++k) {
      const Matrix4& P = pauli_product(n, k);
      cplx t{};
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) t += rho(i, j) * P(j, i);
      if (std::abs(t.imag()) > 1e-9)
        throw error(errc::non_hermitian, "Tr(rho s" + std::to_string(n) + "s" + std::to_string(k) +
                                             ") has imaginary part " + std::to_string(t.imag()));
      out(n, k) = t.real();
    }
  return out;
}

inline DensityOperator weights_to_density(const PauliWeights& w) {
  DensityOperator rho;
  for (int n = 0; n < 4; ++n)
    for (int k = 0; k < 4; ++k) {
      if (w(n, k) == 0.0) continue;
      rho += pauli_product(n, k) * cplx{0.25 * w(n, k), 0.0};
    }
  return rho;
}

/// Sum of every squared weight except w(0,0). Equals 3 for a pure state.
inline double purity_sum(const PauliWeights& w) {
  double s = 0.0;
  for (int n = 0; n < 4; ++n)
    for (int k = 0; k < 4; ++k)
      if (n != 0 || k != 0) s += w(n, k) * w(n, k);
  return s;
}

/// max over permutations (j, k, n) of {1,2,3} of w_jj^2 + w_kk^2 - w_nn^2.
/// Bounded by 1 for every pure state.
inline double weight_inequality_max(const PauliWeights& w) {
  const double d1 = w(1, 1) * w(1, 1);
  const double d2 = w(2, 2) * w(2, 2);
  const double d3 = w(3, 3) * w(3, 3);
  return std::max({d1 + d2 - d3, d1 + d3 - d2, d2 + d3 - d1});
}

struct AlphaBeta {
  double alpha_plus = 0.0;   // w11^2 + w22^2 + w33^2
  double alpha_minus = 0.0;  // w11^2 + w22^2 - w33^2
  double beta = 0.0;         // sum_{n=1..3} w_n0^2 + w_0n^2
};

/// Closed forms in the state angles and phases.
inline AlphaBeta alpha_beta(const PureStateParams& p) {
  const double sphi = std::sin(p.phi);
  const double spsi = std::sin(p.psi);
  const double sth = std::sin(p.theta);
  const double cross = std::cos(p.phi10 - p.phi01);
  const double c11 = std::cos(p.phi11);
  const double transverse = 0.5 * sth * sth *
                            (cross * cross * (sphi + spsi) * (sphi + spsi) +
                             c11 * c11 * (sphi - spsi) * (sphi - spsi));
  const double zz = std::cos(p.theta) * std::cos(p.phi) * std::cos(p.psi) - sphi * spsi;
  const double cv = std::cos(p.varphi());
  const double sv = std::sin(p.varphi());
  const double beta = 2.0 * (1.0 - sth * sth * (spsi * spsi * cv * cv + sphi * sphi * sv * sv));
  return {transverse + zz * zz, transverse - zz * zz, beta};
}

inline AlphaBeta alpha_beta(const PauliWeights& w) {
  const double t = w(1, 1) * w(1, 1) + w(2, 2) * w(2, 2);
  const double z = w(3, 3) * w(3, 3);
  double beta = 0.0;
  for (int n = 1; n < 4; ++n) beta += w(n, 0) * w(n, 0) + w(0, n) * w(0, n);
  return {t + z, t - z, beta};
}

/// 1/4 (sigma_0 + zeta sigma_l) (x) (sigma_0 + xi sigma_l): the product of
/// sigma_l eigenstates with eigenvalues zeta and xi.
inline DensityOperator product_optimal_state(int l, int zeta, int xi) {
  if (l < 1 || l > 3) throw error(errc::bad_index, "l must be 1, 2 or 3, got " + std::to_string(l));
  if (std::abs(zeta) != 1 || std::abs(xi) != 1)
    throw error(errc::out_of_range, "zeta and xi must be +1 or -1");
  PauliWeights w = PauliWeights::maximally_mixed();
  w(l, 0) = zeta;
  w(0, l) = xi;
  w(l, l) = zeta * xi;
  return weights_to_density(w);
}

/// 1/4 (s0s0 + eta s1s1 + nu s2s2 + xi s3s3). Pure only when eta*nu*xi = -1.
inline DensityOperator bell_state(int eta, int nu, int xi) {
  if (std::abs(eta) != 1 || std::abs(nu) != 1 || std::abs(xi) != 1)
    throw error(errc::out_of_range, "Bell signs must be +1 or -1");
  if (eta * nu * xi != -1) throw error(errc::not_pure, "eta*nu*xi must be -1 for a Bell state");
  PauliWeights w = PauliWeights::maximally_mixed();
  w(1, 1) = eta;
  w(2, 2) = nu;
  w(3, 3) = xi;
  return weights_to_density(w);
}

/// All six parameters uniform on [0, 2pi). This is uniform in parameter
/// space, not Haar-uniform on states.
template <class Rng>
PureStateParams random_pure_params(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  PureStateParams p;
  p.theta = angle(rng);
  p.phi = angle(rng);
  p.psi = angle(rng);
  p.phi11 = angle(rng);
  p.phi10 = angle(rng);
  p.phi01 = angle(rng);
  return p;
}

inline PureStateParams random_pure_params(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_pure_params(rng);
}

inline DensityOperator pure_density(const PureStateParams& p) { return density_matrix(state_vector(p)); }

}  // namespace pauli_memory
