#pragma once

// Two uses of a Pauli channel with correlated-noise memory:
//
//   E(rho) = sum_{ij} p_ij (s_i (x) s_j) rho (s_i (x) s_j),
//   p_ij   = (1 - mu) q_i q_j + mu q_i delta_ij.
//
// With probability mu the same Pauli error hits both qubits.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "pauli_memory/error.hpp"
#include "pauli_memory/matrix.hpp"
#include "pauli_memory/states.hpp"

namespace pauli_memory {

using Real4 = std::array<double, 4>;
using Real4x4 = std::array<std::array<double, 4>, 4>;

struct PauliChannel {
  Real4 q{1.0, 0.0, 0.0, 0.0};
  double mu = 0.0;

  PauliChannel with_mu(double m) const;
};

namespace detail {

inline void check_unit_interval(double x, const char* what) {
  if (!std::isfinite(x) || x < 0.0 || x > 1.0)
    throw error(errc::out_of_range, std::string(what) + " = " + std::to_string(x) + " is outside [0,1]");
}

}  // namespace detail

/// Validates q and mu. Probabilities are checked, never renormalized.
inline PauliChannel new_channel(const Real4& q, double mu) {
  static const char* names[] = {"q0", "q1", "q2", "q3"};
  for (int i = 0; i < 4; ++i) detail::check_unit_interval(q[i], names[i]);
  detail::check_unit_interval(mu, "mu");
  const double sum = (q[0] + q[1]) + (q[2] + q[3]);
  if (std::abs(sum - 1.0) > 1e-9)
    throw error(errc::non_normalized, "sum of q is " + std::to_string(sum));
  return PauliChannel{q, mu};
}

inline PauliChannel PauliChannel::with_mu(double m) const { return new_channel(q, m); }

/// q = (1 - p, p/3, p/3, p/3).
inline PauliChannel depolarizing(double p, double mu) {
  return new_channel({1.0 - p, p / 3.0, p / 3.0, p / 3.0}, mu);
}

/// q = (p, 1/2 - p, 1/2 - p, p), p in [0, 1/2].
inline PauliChannel mp_channel(double p, double mu) {
  if (!(p >= 0.0 && p <= 0.5))
    throw error(errc::out_of_range, "p = " + std::to_string(p) + " is outside [0,1/2]");
  return new_channel({p, 0.5 - p, 0.5 - p, p}, mu);
}

/// s(n, k) = +1 iff n == k or n == 0 or k == 0, else -1, so that
/// sigma_n sigma_k sigma_n = s(n, k) sigma_k.
inline constexpr int sign_table(int n, int k) noexcept { return (n == k || n == 0 || k == 0) ? 1 : -1; }

/// Index k'' with sigma_k sigma_k' proportional to sigma_k''.
inline constexpr int product_index(int k, int kp) noexcept {
  constexpr int table[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  return table[k][kp];
}

inline Real4x4 joint_probability(const PauliChannel& ch) {
  Real4x4 p{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      p[i][j] = (1.0 - ch.mu) * ch.q[i] * ch.q[j] + (i == j ? ch.mu * ch.q[i] : 0.0);
  return p;
}

/// eps_n = sum_k q_k s(k, n). Evaluated as (q0 + qn) - (the other two).
inline Real4 epsilon_vector(const PauliChannel& ch) {
  const auto& q = ch.q;
  return {1.0, (q[0] + q[1]) - (q[2] + q[3]), (q[0] + q[2]) - (q[1] + q[3]),
          (q[0] + q[3]) - (q[1] + q[2])};
}

/// eps_{kk'} = (1 - mu) eps_k eps_k' + mu eps_{k''}.
inline Real4x4 epsilon_matrix(const PauliChannel& ch) {
  const Real4 e = epsilon_vector(ch);
  Real4x4 m{};
  for (int k = 0; k < 4; ++k)
    for (int kp = 0; kp < 4; ++kp) {
      if (k == 0 || kp == 0) {
        m[k][kp] = e[k == 0 ? kp : k];
        continue;
      }
      m[k][kp] = (1.0 - ch.mu) * (e[k] * e[kp]) + ch.mu * e[product_index(k, kp)];
    }
  return m;
}

struct Ordering {
  int l = 1;
  int m = 2;
  int s = 3;

  friend bool operator==(const Ordering&, const Ordering&) = default;
};

/// Indices with |eps_l| >= |eps_m| >= |eps_s|; on ties the smaller index
/// takes the larger role.
inline Ordering ordering(const Real4& eps) {
  std::array<int, 3> idx{1, 2, 3};
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return std::abs(eps[a]) > std::abs(eps[b]); });
  return {idx[0], idx[1], idx[2]};
}

inline Ordering ordering(const PauliChannel& ch) { return ordering(epsilon_vector(ch)); }

enum class ThresholdStatus { ok, degenerate, no_threshold };

inline const char* to_string(ThresholdStatus s) noexcept {
  switch (s) {
    case ThresholdStatus::ok: return "ok";
    case ThresholdStatus::degenerate: return "degenerate";
    case ThresholdStatus::no_threshold: return "no_threshold";
  }
  return "unknown";
}

/// A memory threshold clamped to [0,1]; `raw` keeps the unclamped formula
/// value (NaN when the formula is undefined).
struct Threshold {
  double value = 0.0;
  double raw = std::numeric_limits<double>::quiet_NaN();
  ThresholdStatus status = ThresholdStatus::ok;
};

namespace detail {

inline Threshold clamped(double raw) {
  return {std::clamp(raw, 0.0, 1.0), raw, ThresholdStatus::ok};
}

}  // namespace detail

/// mu_ml = (|eps_l| - eps_m^2) / (1 - eps_m^2), where eps_mm^2 = eps_l^2.
/// Degenerate (value 0) when eps_m^2 = 1.
inline Threshold compute_threshold_ml(const Real4& eps, const Ordering& o) {
  const double em2 = eps[o.m] * eps[o.m];
  const double denom = 1.0 - em2;
  if (denom <= 0.0) return {0.0, std::numeric_limits<double>::quiet_NaN(), ThresholdStatus::degenerate};
  return detail::clamped((std::abs(eps[o.l]) - em2) / denom);
}

/// mu_star, the root in mu of eps_ss^2 + eps_mm^2 = 2 eps_l^2:
///
///   mu_star = (-d_m e_m^2 - d_s e_s^2 + sqrt(2 e_l^2 (d_m^2 + d_s^2) - (d_m - d_s)^2))
///             / (d_m^2 + d_s^2),   d_k = 1 - e_k^2.
inline Threshold compute_threshold_star(const Real4& eps, const Ordering& o) {
  const double el2 = eps[o.l] * eps[o.l];
  const double em2 = eps[o.m] * eps[o.m];
  const double es2 = eps[o.s] * eps[o.s];
  const double dm = 1.0 - em2;
  const double ds = 1.0 - es2;
  const double denom = dm * dm + ds * ds;
  if (denom <= 0.0) return {0.0, std::numeric_limits<double>::quiet_NaN(), ThresholdStatus::degenerate};
  double radicand = 2.0 * el2 * denom - (dm - ds) * (dm - ds);
  if (radicand < 0.0) {
    // Only roundoff can push the radicand this far below zero for a valid channel.
    if (radicand < -1e-14)
      return {0.0, std::numeric_limits<double>::quiet_NaN(), ThresholdStatus::no_threshold};
    radicand = 0.0;
  }
  return detail::clamped((-dm * em2 - ds * es2 + std::sqrt(radicand)) / denom);
}

/// Throws Degenerate when eps_m^2 = 1.
inline double threshold_ml(const PauliChannel& ch) {
  const Real4 e = epsilon_vector(ch);
  const Threshold t = compute_threshold_ml(e, ordering(e));
  if (t.status == ThresholdStatus::degenerate)
    throw error(errc::degenerate, "eps_m^2 = 1, mu_ml is undefined");
  return t.value;
}

/// Throws Degenerate when eps_m^2 = eps_s^2 = 1, NoThreshold on a negative radicand.
inline double threshold_star(const PauliChannel& ch) {
  const Real4 e = epsilon_vector(ch);
  const Threshold t = compute_threshold_star(e, ordering(e));
  if (t.status == ThresholdStatus::degenerate)
    throw error(errc::degenerate, "eps_m^2 = eps_s^2 = 1, mu_star is undefined");
  if (t.status == ThresholdStatus::no_threshold)
    throw error(errc::no_threshold, "negative radicand in the mu_star formula");
  return t.value;
}

struct ChannelParams {
  Real4 eps{};
  Real4x4 eps2{};
  Ordering order{};
  Threshold mu_ml{};
  Threshold mu_star{};

  double eps_l() const { return eps[order.l]; }
  double eps_kk(int k) const { return eps2[k][k]; }
};

inline ChannelParams channel_params(const PauliChannel& ch) {
  ChannelParams cp;
  cp.eps = epsilon_vector(ch);
  cp.eps2 = epsilon_matrix(ch);
  cp.order = ordering(cp.eps);
  cp.mu_ml = compute_threshold_ml(cp.eps, cp.order);
  cp.mu_star = compute_threshold_star(cp.eps, cp.order);
  return cp;
}

/// Operator-sum route: sixteen conjugations weighted by p_ij.
inline DensityOperator apply_channel(const PauliChannel& ch, const DensityOperator& rho) {
  const double tr = trace(rho).real();
  if (!(std::abs(tr - 1.0) <= 1e-9))
    throw error(errc::invalid_state, "trace of rho is " + std::to_string(tr));
  const Real4x4 p = joint_probability(ch);
  DensityOperator out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (p[i][j] == 0.0) continue;
      const Matrix4& U = pauli_product(i, j);
      out += (U * rho * U) * cplx{p[i][j], 0.0};
    }
  return out;
}

/// Pauli-basis route: w'(n, k) = eps_{nk} w(n, k).
inline PauliWeights apply_channel_weights(const PauliChannel& ch, const PauliWeights& w) {
  const Real4x4 e = epsilon_matrix(ch);
  PauliWeights out;
  for (int n = 0; n < 4; ++n)
    for (int k = 0; k < 4; ++k) out(n, k) = e[n][k] * w(n, k);
  return out;
}

}  // namespace pauli_memory
