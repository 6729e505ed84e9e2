#pragma once

// Independent numerical check of the analytic optimum: the output matrix is
// built entry by entry from the Pauli weights, diagonalized numerically, and
// its entropy minimized over the full six-parameter pure-state family.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <thread>
#include <tuple>
#include <vector>

#include "pauli_memory/capacity.hpp"
#include "pauli_memory/channel.hpp"
#include "pauli_memory/eigen_hermitian4.hpp"
#include "pauli_memory/nelder_mead.hpp"
#include "pauli_memory/states.hpp"

namespace pauli_memory {

/// E(rho) assembled from the explicit matrix elements <f s|E(rho)|f' s'>
/// (diagonal, single-flip and double-flip entries) of the channel-scaled
/// Pauli weights eps_{nk} w_{nk}.
inline DensityOperator output_matrix(const PauliChannel& ch, const PauliWeights& w) {
  const Real4x4 e = epsilon_matrix(ch);
  auto v = [&](int n, int k) { return e[n][k] * w(n, k); };
  const cplx i{0.0, 1.0};
  auto sgn = [](int bit) { return bit ? -1.0 : 1.0; };
  auto idx = [](int f, int s) { return static_cast<std::size_t>(2 * f + s); };

  DensityOperator out;
  for (int f = 0; f < 2; ++f)
    for (int s = 0; s < 2; ++s) {
      const double pf = sgn(f);
      const double ps = sgn(s);
      const double pfs = pf * ps;
      out(idx(f, s), idx(f, s)) = 0.25 * (1.0 + pf * v(3, 0) + ps * v(0, 3) + pfs * v(3, 3));
      out(idx(f, s), idx(1 - f, s)) =
          0.25 * (v(1, 0) - i * pf * v(2, 0) + ps * v(1, 3) - i * pfs * v(2, 3));
      out(idx(f, s), idx(f, 1 - s)) =
          0.25 * (v(0, 1) - i * ps * v(0, 2) + pf * v(3, 1) - i * pfs * v(3, 2));
      out(idx(f, s), idx(1 - f, 1 - s)) =
          0.25 * (v(1, 1) - i * pf * v(2, 1) - i * ps * v(1, 2) - pfs * v(2, 2));
    }
  return out;
}

/// a2 = (3 - A - B - C) / 8, the quadratic coefficient of the characteristic
/// polynomial of the channel output, split into its diagonal (A), local (B)
/// and cross (C) contributions under the (l, m, s) ordering.
struct A2Terms {
  double a2 = 0.0;
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;

  double total() const { return A + B + C; }
};

inline A2Terms a2_coefficient(const ChannelParams& cp, const PauliWeights& w) {
  const auto& e = cp.eps2;
  auto sq = [](double x) { return x * x; };
  const std::array<int, 3> idx{cp.order.l, cp.order.m, cp.order.s};
  A2Terms t;
  for (int k : idx) {
    t.A += sq(e[k][k]) * sq(w(k, k));
    t.B += sq(cp.eps[k]) * (sq(w(0, k)) + sq(w(k, 0)));
  }
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const int j = idx[a];
      const int k = idx[b];
      t.C += sq(e[j][k]) * (sq(w(j, k)) + sq(w(k, j)));
    }
  t.a2 = (3.0 - t.total()) / 8.0;
  return t;
}

struct SearchConfig {
  int grid_points_per_angle = 7;
  int refinements = 3;   // best grid cells handed to the local search
  int restarts = 16;     // additional local searches from random starts
  std::uint64_t seed = 20070101;
  double tol_entropy = 1e-6;  // bits
  long max_iters = 20000;     // objective evaluations per local search
};

struct OracleResult {
  double min_entropy = 0.0;
  PureStateParams best_params{};
  Spectrum best_spectrum{};
  long evaluations = 0;
  double gap_to_analytic = 0.0;  // min_entropy - min(S_product, S_bell), signed
  bool budget_exceeded = false;
};

namespace detail {

using Params6 = std::array<double, 6>;

inline PureStateParams to_params(const Params6& x) { return {x[0], x[1], x[2], x[3], x[4], x[5]}; }

inline Spectrum oracle_spectrum(const PauliChannel& ch, const Params6& x) {
  const PauliWeights w = pauli_weights(pure_density(to_params(x)));
  return eig_hermitian4(output_matrix(ch, w));
}

inline double oracle_entropy(const PauliChannel& ch, const Params6& x) {
  const Spectrum s = oracle_spectrum(ch, x);
  double h = 0.0;
  for (double v : s)
    if (v > 0.0) h -= v * std::log2(v);
  return std::max(h, 0.0);
}

struct Candidate {
  double f;
  Params6 x;

  bool operator<(const Candidate& o) const { return std::tie(f, x) < std::tie(o.f, o.x); }
};

}  // namespace detail

/// Grid over (theta, phi, psi, phi11, phi10, phi01) with theta in [0, pi] and
/// the rest in [0, 2pi), then Nelder-Mead from the best `refinements` grid
/// points and from `restarts` seeded random starts. Deterministic for a fixed
/// config; ties are broken by lexicographic parameter order.
inline OracleResult min_entropy_bruteforce(const PauliChannel& ch, const SearchConfig& cfg = {}) {
  using detail::Candidate;
  using detail::Params6;
  const int g = std::max(cfg.grid_points_per_angle, 1);
  const double two_pi = 2.0 * std::numbers::pi;
  const double theta_step = g > 1 ? std::numbers::pi / (g - 1) : 0.0;
  const double angle_step = two_pi / g;

  long evaluations = 0;
  const std::size_t keep = static_cast<std::size_t>(std::max(cfg.refinements, 0));
  std::vector<Candidate> top;  // sorted ascending, at most `keep` entries
  Candidate best{1e300, {}};

  std::array<int, 6> c{};
  for (;;) {
    Params6 x{c[0] * theta_step, c[1] * angle_step, c[2] * angle_step,
              c[3] * angle_step, c[4] * angle_step, c[5] * angle_step};
    const Candidate cand{detail::oracle_entropy(ch, x), x};
    ++evaluations;
    if (cand < best) best = cand;
    if (keep > 0 && (top.size() < keep || cand < top.back())) {
      top.insert(std::upper_bound(top.begin(), top.end(), cand), cand);
      if (top.size() > keep) top.pop_back();
    }
    int d = 5;
    while (d >= 0 && ++c[d] == g) c[d--] = 0;
    if (d < 0) break;
  }

  std::vector<Params6> starts;
  for (const auto& t : top) starts.push_back(t.x);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> angle(0.0, two_pi);
  for (int r = 0; r < cfg.restarts; ++r) {
    Params6 x;
    for (auto& v : x) v = angle(rng);
    starts.push_back(x);
  }

  SimplexOptions opt;
  opt.initial_step = 0.5 * angle_step;
  opt.max_evaluations = cfg.max_iters;
  bool budget_exceeded = false;
  auto objective = [&](const Params6& x) { return detail::oracle_entropy(ch, x); };
  for (const auto& x0 : starts) {
    const auto res = nelder_mead(objective, x0, opt);
    evaluations += res.evaluations;
    budget_exceeded = budget_exceeded || res.budget_exceeded;
    const Candidate cand{res.f, res.x};
    if (cand < best) best = cand;
  }

  OracleResult out;
  out.min_entropy = best.f;
  out.best_params = detail::to_params(best.x);
  out.best_spectrum = detail::oracle_spectrum(ch, best.x);
  out.evaluations = evaluations;
  out.gap_to_analytic = best.f - capacity_two_use(ch).min_entropy();
  out.budget_exceeded = budget_exceeded;
  return out;
}

struct VerifyPoint {
  double mu = 0.0;
  double s_oracle = 0.0;
  double s_product = 0.0;
  double s_bell = 0.0;
  double gap = 0.0;  // s_oracle - min(s_product, s_bell)
  bool flag = false; // oracle beat both analytic branches by more than tol_entropy
  Regime winner = Regime::product;
  bool budget_exceeded = false;
  PureStateParams best_params{};
};

struct VerifyReport {
  std::vector<VerifyPoint> points;

  bool any_flag() const {
    return std::any_of(points.begin(), points.end(), [](const VerifyPoint& p) { return p.flag; });
  }
  bool any_budget_exceeded() const {
    return std::any_of(points.begin(), points.end(), [](const VerifyPoint& p) { return p.budget_exceeded; });
  }
};

/// Runs the oracle at every mu of the grid. Grid points are independent and
/// may be evaluated on `workers` threads (0 picks the hardware concurrency);
/// the report is identical to a sequential run.
inline VerifyReport verify_optimality_grid(const PauliChannel& base, std::span<const double> mu_grid,
                                           const SearchConfig& cfg = {}, unsigned workers = 0) {
  std::vector<PauliChannel> channels;
  channels.reserve(mu_grid.size());
  for (double mu : mu_grid) channels.push_back(base.with_mu(mu));

  VerifyReport report;
  report.points.resize(channels.size());
  auto run = [&](std::size_t k) {
    const PauliChannel& ch = channels[k];
    const CapacityResult cap = capacity_two_use(ch);
    const OracleResult orc = min_entropy_bruteforce(ch, cfg);
    VerifyPoint& p = report.points[k];
    p.mu = ch.mu;
    p.s_oracle = orc.min_entropy;
    p.s_product = cap.entropy_product;
    p.s_bell = cap.entropy_bell;
    p.gap = orc.min_entropy - cap.min_entropy();
    p.flag = p.gap < -cfg.tol_entropy;
    p.winner = cap.regime;
    p.budget_exceeded = orc.budget_exceeded;
    p.best_params = orc.best_params;
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(channels.size()));
  if (workers <= 1) {
    for (std::size_t k = 0; k < channels.size(); ++k) run(k);
    return report;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t k; (k = next.fetch_add(1)) < channels.size();) run(k);
    });
  pool.clear();
  return report;
}

}  // namespace pauli_memory
