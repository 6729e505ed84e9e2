#pragma once

// Output spectra of the two optimal input families and the two-use classical
// capacity C2 = 1 - S_min / 2 in bits per channel use.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pauli_memory/channel.hpp"
#include "pauli_memory/eigen_hermitian4.hpp"
#include "pauli_memory/error.hpp"
#include "pauli_memory/states.hpp"

namespace pauli_memory {

/// Four eigenvalues, descending.
using Spectrum = std::array<double, 4>;

/// Von Neumann entropy in bits, with 0 log 0 = 0. Throws InvalidSpectrum if
/// any eigenvalue is below -1e-9 or the sum is off by more than 1e-9.
inline double entropy_bits(const Spectrum& s) {
  double sum = 0.0;
  for (double x : s) {
    if (!(x >= -1e-9)) throw error(errc::invalid_spectrum, "eigenvalue " + std::to_string(x));
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw error(errc::invalid_spectrum, "eigenvalues sum to " + std::to_string(sum));
  double h = 0.0;
  for (double x : s)
    if (x > 0.0) h -= x * std::log2(x);
  return std::max(h, 0.0);
}

inline Spectrum sorted_desc(Spectrum s) {
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

/// Output spectrum of the sigma_l eigenstate products:
/// (1 + eta eps_ll + upsilon (1 + eta) eps_l) / 4 over eta, upsilon = +-1.
inline Spectrum spectrum_product_regime(const ChannelParams& cp) {
  const int l = cp.order.l;
  const double ell = cp.eps2[l][l];
  const double el = cp.eps[l];
  return sorted_desc({(1.0 + ell + 2.0 * el) / 4.0, (1.0 + ell - 2.0 * el) / 4.0, (1.0 - ell) / 4.0,
                      (1.0 - ell) / 4.0});
}

/// Output spectrum of the Bell states:
/// (1 + eta eps_33 + upsilon (eps_11 + eta eps_22)) / 4 over eta, upsilon = +-1.
inline Spectrum spectrum_bell_regime(const ChannelParams& cp) {
  const double e11 = cp.eps2[1][1];
  const double e22 = cp.eps2[2][2];
  const double e33 = cp.eps2[3][3];
  return sorted_desc({(1.0 + e33 + (e11 + e22)) / 4.0, (1.0 + e33 - (e11 + e22)) / 4.0,
                      (1.0 - e33 + (e11 - e22)) / 4.0, (1.0 - e33 - (e11 - e22)) / 4.0});
}

enum class Regime { product, entangled, tie };

inline const char* to_string(Regime r) noexcept {
  switch (r) {
    case Regime::product: return "product";
    case Regime::entangled: return "entangled";
    case Regime::tie: return "tie";
  }
  return "unknown";
}

enum class StateFamily { product, bell };

inline const char* to_string(StateFamily f) noexcept { return f == StateFamily::product ? "product" : "bell"; }

/// Which optimal input achieves the capacity. For the product family the
/// state is sigma_l eigenstate products (any zeta, xi); for the Bell family
/// `signs` names one of the four equivalent Bell states.
struct OptimalState {
  StateFamily family = StateFamily::product;
  int l = 1;
  std::array<int, 3> signs{1, -1, 1};

  DensityOperator density() const {
    return family == StateFamily::product ? product_optimal_state(l, 1, 1)
                                          : bell_state(signs[0], signs[1], signs[2]);
  }
};

struct CapacityResult {
  double mu = 0.0;
  Regime regime = Regime::product;
  Spectrum lambdas_product{};
  Spectrum lambdas_bell{};
  double entropy_product = 0.0;
  double entropy_bell = 0.0;
  double c2 = 0.0;
  Threshold mu_ml{};
  Threshold mu_star{};
  OptimalState optimal{};

  const Spectrum& lambdas() const { return regime == Regime::entangled ? lambdas_bell : lambdas_product; }
  double min_entropy() const { return std::min(entropy_product, entropy_bell); }
};

/// Absolute entropy difference (bits) under which the branches are reported as a tie.
inline constexpr double kTieTolerance = 1e-12;

/// Evaluates both analytic branches and picks the one with lower output entropy.
inline CapacityResult capacity_two_use(const PauliChannel& ch) {
  const ChannelParams cp = channel_params(ch);
  CapacityResult r;
  r.mu = ch.mu;
  r.mu_ml = cp.mu_ml;
  r.mu_star = cp.mu_star;
  r.lambdas_product = spectrum_product_regime(cp);
  r.lambdas_bell = spectrum_bell_regime(cp);
  r.entropy_product = entropy_bits(r.lambdas_product);
  r.entropy_bell = entropy_bits(r.lambdas_bell);

  const double diff = r.entropy_product - r.entropy_bell;
  if (std::abs(diff) < kTieTolerance)
    r.regime = Regime::tie;
  else
    r.regime = diff < 0.0 ? Regime::product : Regime::entangled;

  // A tie reports the family the threshold classification would pick.
  const bool bell = r.regime == Regime::entangled ||
                    (r.regime == Regime::tie && ch.mu >= cp.mu_star.value);
  r.optimal.family = bell ? StateFamily::bell : StateFamily::product;
  r.optimal.l = cp.order.l;

  r.c2 = std::clamp(1.0 - 0.5 * r.min_entropy(), 0.0, 1.0);
  return r;
}

/// One CapacityResult per grid value, in grid order. Throws OutOfRange for
/// any mu outside [0,1].
inline std::vector<CapacityResult> capacity_sweep(const PauliChannel& base, std::span<const double> mu_grid) {
  std::vector<CapacityResult> out;
  out.reserve(mu_grid.size());
  for (double mu : mu_grid) out.push_back(capacity_two_use(base.with_mu(mu)));
  return out;
}

/// Where the product and Bell branch entropies cross, located by bisection
/// on S_product - S_bell over mu in [0,1].
struct BranchCrossover {
  double mu_hat = 0.0;
  double gap_at_mu_star = 0.0;  // S_product - S_bell at mu_star
};

inline BranchCrossover branch_crossover(const PauliChannel& ch) {
  auto gap = [&](double mu) {
    const CapacityResult r = capacity_two_use(ch.with_mu(mu));
    return r.entropy_product - r.entropy_bell;
  };
  BranchCrossover out;
  const ChannelParams cp = channel_params(ch);
  out.gap_at_mu_star = gap(cp.mu_star.value);

  double lo = 0.0;
  double hi = 1.0;
  if (gap(lo) >= 0.0) {
    out.mu_hat = 0.0;
    return out;
  }
  if (gap(hi) < 0.0) {
    out.mu_hat = 1.0;
    return out;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) < 0.0 ? lo : hi) = mid;
  }
  out.mu_hat = 0.5 * (lo + hi);
  return out;
}

struct EnsembleCheck {
  double max_deviation = 0.0;   // max |avg output - I/4|
  double entropy_spread = 0.0;  // max - min output entropy over the members
};

/// Builds the sixteen members (s_i (x) s_j) rho (s_i (x) s_j), averages their
/// channel outputs with equal weights, and compares against I/4.
inline EnsembleCheck verify_ensemble_achievability(const PauliChannel& ch, const DensityOperator& rho_star) {
  DensityOperator avg;
  double smin = 1e300;
  double smax = -1e300;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Matrix4& U = pauli_product(i, j);
      const DensityOperator out = apply_channel(ch, U * rho_star * U);
      avg += out * cplx{1.0 / 16.0, 0.0};
      const double s = entropy_bits(eig_hermitian4(out));
      smin = std::min(smin, s);
      smax = std::max(smax, s);
    }
  return {max_abs_diff(avg, Matrix4::identity() * cplx{0.25, 0.0}), smax - smin};
}

}  // namespace pauli_memory
