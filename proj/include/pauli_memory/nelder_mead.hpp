#pragma once

// Nelder-Mead simplex minimization over R^N with restarts.

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>

namespace pauli_memory {

template <std::size_t N>
struct SimplexResult {
  std::array<double, N> x{};
  double f = 0.0;
  long evaluations = 0;
  bool budget_exceeded = false;
};

struct SimplexOptions {
  double initial_step = 0.5;
  double f_tol = 1e-13;       // stop when the simplex value spread is below this
  double x_tol = 1e-10;       // ... and its vertices lie within this distance
  long max_evaluations = 20000;
  int max_restarts = 8;       // fresh simplices built around the incumbent
};

/// Minimizes f starting from x0. After each convergence the simplex is rebuilt
/// around the incumbent with a halved step; the search ends once a restart
/// no longer improves f by more than f_tol, or the evaluation budget is spent.
template <std::size_t N, class F>
SimplexResult<N> nelder_mead(F&& f, std::array<double, N> x0, const SimplexOptions& opt = {}) {
  using Point = std::array<double, N>;
  constexpr double alpha = 1.0;  // reflection
  constexpr double gamma = 2.0;  // expansion
  constexpr double rho = 0.5;    // contraction
  constexpr double sigma = 0.5;  // shrink

  SimplexResult<N> res;
  auto eval = [&](const Point& p) {
    ++res.evaluations;
    return f(p);
  };

  Point best = x0;
  double fbest = eval(best);
  double step = opt.initial_step;

  for (int restart = 0; restart <= opt.max_restarts; ++restart) {
    std::array<Point, N + 1> pts;
    std::array<double, N + 1> fv;
    pts[0] = best;
    fv[0] = fbest;
    for (std::size_t i = 0; i < N; ++i) {
      pts[i + 1] = best;
      pts[i + 1][i] += step;
      fv[i + 1] = eval(pts[i + 1]);
    }

    std::array<std::size_t, N + 1> order;
    for (;;) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
      const std::size_t lo = order[0];
      const std::size_t hi = order[N];
      const std::size_t second = order[N - 1];

      double xspread = 0.0;
      for (std::size_t v = 0; v <= N; ++v)
        for (std::size_t i = 0; i < N; ++i) xspread = std::max(xspread, std::abs(pts[v][i] - pts[lo][i]));
      if (fv[hi] - fv[lo] <= opt.f_tol && xspread <= opt.x_tol) break;
      if (fv[hi] - fv[lo] <= opt.f_tol * 1e-3) break;
      if (res.evaluations >= opt.max_evaluations) {
        res.budget_exceeded = true;
        break;
      }

      Point centroid{};
      for (std::size_t v = 0; v <= N; ++v) {
        if (v == hi) continue;
        for (std::size_t i = 0; i < N; ++i) centroid[i] += pts[v][i] / static_cast<double>(N);
      }
      auto along = [&](double t) {
        Point p;
        for (std::size_t i = 0; i < N; ++i) p[i] = centroid[i] + t * (pts[hi][i] - centroid[i]);
        return p;
      };

      const Point xr = along(-alpha);
      const double fr = eval(xr);
      if (fr < fv[lo]) {
        const Point xe = along(-alpha * gamma);
        const double fe = eval(xe);
        if (fe < fr) {
          pts[hi] = xe;
          fv[hi] = fe;
        } else {
          pts[hi] = xr;
          fv[hi] = fr;
        }
        continue;
      }
      if (fr < fv[second]) {
        pts[hi] = xr;
        fv[hi] = fr;
        continue;
      }
      const bool outside = fr < fv[hi];
      const Point xc = along(outside ? -alpha * rho : rho);
      const double fc = eval(xc);
      if (fc < (outside ? fr : fv[hi])) {
        pts[hi] = xc;
        fv[hi] = fc;
        continue;
      }
      for (std::size_t v = 0; v <= N; ++v) {
        if (v == lo) continue;
        for (std::size_t i = 0; i < N; ++i) pts[v][i] = pts[lo][i] + sigma * (pts[v][i] - pts[lo][i]);
        fv[v] = eval(pts[v]);
      }
    }

    const std::size_t lo = *std::min_element(order.begin(), order.end(),
                                             [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const double improvement = fbest - fv[lo];
    if (fv[lo] < fbest) {
      fbest = fv[lo];
      best = pts[lo];
    }
    if (res.budget_exceeded || (restart > 0 && improvement <= opt.f_tol)) break;
    step *= 0.5;
  }

  res.x = best;
  res.f = fbest;
  return res;
}

}  // namespace pauli_memory
