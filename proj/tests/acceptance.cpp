// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "test_support.hpp"

using namespace pauli_memory;

namespace {

using clock_type = std::chrono::steady_clock;

const Real4 kIllustration{0.2, 0.1, 0.3, 0.4};

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void report(const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = clock_type::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(clock_type::now() - t0).count();
  const bool in_time = dt < budget_s;
  const bool pass = r.ok && in_time;
  if (!pass) ++failures;
  std::printf("%s %-28s %10.6fs (limit %gs)%s  %s\n", pass ? "PASS" : "FAIL", name, dt, budget_s,
              in_time ? "" : " TIMEOUT", r.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string capture(const std::string& args) {
  const std::string cmd = std::string(PAULI_CAPACITY_BIN) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "<popen failed>";
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) out += "<exit " + std::to_string(WEXITSTATUS(status)) + ">";
  return out;
}

double sq(double x) { return x * x; }

Outcome illustration() {
  const auto ch = new_channel(kIllustration, 0.0);
  const auto cp = channel_params(ch);
  const bool eps_ok = format_g12(cp.eps[1]) == "-0.4" && format_g12(cp.eps[2]) == "0" && format_g12(cp.eps[3]) == "0.2";
  const bool order_ok = cp.order == Ordering{1, 3, 2};
  const bool star_ok = cp.mu_star.status == ThresholdStatus::ok && std::abs(cp.mu_star.value - 0.39) <= 0.005;
  return {eps_ok && order_ok && star_ok,
          fmt("eps=(%.12g, %.12g, %.12g)", cp.eps[1], cp.eps[2], cp.eps[3]) + fmt(" mu_star=%.6f", cp.mu_star.value)};
}

Outcome threshold_property() {
  std::mt19937_64 rng(2001);
  int tested = 0;
  double worst_star = 0, worst_ml = 0;
  while (tested < 100) {
    const auto base = pm_test::random_channel(rng, 0.0);
    const auto cp = channel_params(base);
    if (cp.mu_star.status != ThresholdStatus::ok || cp.mu_ml.status != ThresholdStatus::ok) continue;
    ++tested;
    const int l = cp.order.l, m = cp.order.m, s = cp.order.s;
    const auto at_star = channel_params(base.with_mu(cp.mu_star.value));
    worst_star = std::max(worst_star, std::abs(sq(at_star.eps2[m][m]) + sq(at_star.eps2[s][s]) - 2 * sq(cp.eps[l])));
    const auto at_ml = channel_params(base.with_mu(cp.mu_ml.value));
    worst_ml = std::max(worst_ml, std::abs(sq(at_ml.eps2[m][m]) - sq(cp.eps[l])));
  }
  return {worst_star <= 1e-10 && worst_ml <= 1e-10, fmt("max residual star=%.3g ml=%.3g", worst_star, worst_ml)};
}

Outcome route_equivalence() {
  std::mt19937_64 rng(2002);
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto ch = pm_test::random_channel(rng);
    const auto rho = pure_density(random_pure_params(rng));
    const auto w = pauli_weights(rho);
    const auto a = apply_channel(ch, rho);
    worst = std::max(worst, max_abs_diff(a, output_matrix(ch, w)));
    worst = std::max(worst, max_abs_diff(a, weights_to_density(apply_channel_weights(ch, w))));
  }
  return {worst <= 1e-12, fmt("max diff %.3g", worst)};
}

Outcome spectrum_formulas() {
  std::mt19937_64 rng(2003);
  double worst = 0;
  for (int c = 0; c < 20; ++c) {
    const auto base = pm_test::random_channel(rng, 0.0);
    for (int k = 0; k <= 100; ++k) {
      const auto ch = base.with_mu(k / 100.0);
      const auto cp = channel_params(ch);
      const auto sp = spectrum_product_regime(cp);
      const auto sb = spectrum_bell_regime(cp);
      const auto np = eig_hermitian4(apply_channel(ch, product_optimal_state(cp.order.l, 1, -1)));
      const auto nb = eig_hermitian4(apply_channel(ch, bell_state(1, -1, 1)));
      for (int i = 0; i < 4; ++i) worst = std::max({worst, std::abs(sp[i] - np[i]), std::abs(sb[i] - nb[i])});
    }
  }
  return {worst <= 1e-12, fmt("max diff %.3g", worst)};
}

Outcome constraint_identities() {
  std::mt19937_64 rng(2004);
  double sum_rule = 0, ineq = 0, closed = 0, bound = 0;
  for (int t = 0; t < 10000; ++t) {
    const auto p = random_pure_params(rng);
    const auto w = pauli_weights(pure_density(p));
    sum_rule = std::max(sum_rule, std::abs(purity_sum(w) - 3.0));
    ineq = std::max(ineq, weight_inequality_max(w) - 1.0);
    const auto d = alpha_beta(w);
    const auto c = alpha_beta(p);
    closed = std::max({closed, std::abs(c.alpha_plus - d.alpha_plus), std::abs(c.alpha_minus - d.alpha_minus),
                       std::abs(c.beta - d.beta)});
    bound = std::max({bound, d.alpha_minus - 1, d.alpha_plus - 3, d.beta - 2, d.alpha_plus + d.beta - 3});
  }
  const bool ok = sum_rule <= 1e-10 && ineq <= 1e-10 && closed <= 1e-10 && bound <= 1e-10;
  return {ok, fmt("sum rule %.3g, inequality excess %.3g, ", sum_rule, ineq) +
                  fmt("closed form %.3g, bound excess %.3g", closed, bound)};
}

Outcome achievability() {
  std::mt19937_64 rng(2005);
  double dev = 0, spread = 0;
  for (int t = 0; t < 100; ++t) {
    const auto ch = pm_test::random_channel(rng);
    const auto chk = verify_ensemble_achievability(ch, pure_density(random_pure_params(rng)));
    dev = std::max(dev, chk.max_deviation);
    spread = std::max(spread, chk.entropy_spread);
  }
  return {dev <= 1e-12 && spread <= 1e-10, fmt("max deviation %.3g, entropy spread %.3g", dev, spread)};
}

Outcome main_theorem() {
  const std::vector<std::pair<std::string, PauliChannel>> channels{
      {"illustration", new_channel(kIllustration, 0.0)},
      {"depolarizing 0.1", depolarizing(0.1, 0.0)},
      {"depolarizing 0.25", depolarizing(0.25, 0.0)},
      {"mp 0.1", mp_channel(0.1, 0.0)},
      {"mp 0.4", mp_channel(0.4, 0.0)}};
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(k * 0.05);
  const SearchConfig cfg;
  double below = 0, above = 0;
  int wrong_winner = 0, budget = 0;
  std::string where;
  for (const auto& [name, base] : channels) {
    const double star = threshold_star(base);
    const auto rep = verify_optimality_grid(base, grid, cfg);
    for (const auto& pt : rep.points) {
      const double best = std::min(pt.s_product, pt.s_bell);
      below = std::max(below, best - pt.s_oracle);
      above = std::max(above, pt.s_oracle - best);
      if (pt.budget_exceeded) ++budget;
      if ((pt.mu < star - 1e-3 && pt.winner != Regime::product) || (pt.mu > star + 1e-3 && pt.winner != Regime::entangled)) {
        ++wrong_winner;
        where += " " + name + fmt("@%.2f", pt.mu);
      }
    }
  }
  const bool ok = below <= 1e-6 && above <= 1e-4 && wrong_winner == 0;
  return {ok, fmt("oracle below analytic by %.3g, above by %.3g, ", below, above) +
                  fmt("wrong winners %g, budget hits %g", wrong_winner, budget) + where};
}

Outcome endpoints() {
  std::mt19937_64 rng(2006);
  bool ok = true;
  for (int t = 0; t < 100; ++t) ok = ok && capacity_two_use(pm_test::random_channel(rng, 1.0)).c2 == 1.0;
  for (int k = 0; k <= 20; ++k) ok = ok && capacity_two_use(new_channel({1, 0, 0, 0}, k / 20.0)).c2 == 1.0;
  const double c2 = capacity_two_use(depolarizing(0.25, 0.0)).c2;
  const double closed = 1.0 - pm_test::binary_entropy(5.0 / 6.0);
  ok = ok && std::abs(c2 - closed) <= 1e-12;
  return {ok, fmt("depolarizing 0.25: %.15f vs %.15f", c2, closed)};
}

Outcome determinism() {
  const std::vector<std::string> cmds{
      "sweep --q 0.2,0.1,0.3,0.4 --mu-grid 0:1:0.05",
      "sweep --family depolarizing --p 0.25 --mu-grid 0:1:0.1 --format json",
      "capacity --family mp --p 0.1 --mu 0.3 --format json",
      "thresholds --q 0.2,0.1,0.3,0.4",
      "verify --q 0.2,0.1,0.3,0.4 --mu-grid 0:1:0.25 --seed 7 --grid-points 5 --restarts 4",
      "verify --q 0.2,0.1,0.3,0.4 --mu-grid 0:1:0.25 --seed 7 --grid-points 5 --restarts 4 --format json"};
  int differ = 0;
  for (const auto& c : cmds) {
    const auto a = capture(c);
    const auto b = capture(c);
    if (a != b || a.empty() || a.find("<exit") != std::string::npos) ++differ;
  }
  return {differ == 0, fmt("%g of %g commands differ or failed", differ, static_cast<double>(cmds.size()))};
}

}  // namespace

int main() {
  report("illustration", 1e-3, illustration);
  report("threshold-property", 1.0, threshold_property);
  report("route-equivalence", 10.0, route_equivalence);
  report("spectrum-formulas", 30.0, spectrum_formulas);
  report("constraint-identities", 30.0, constraint_identities);
  report("achievability-ensemble", 10.0, achievability);
  report("main-theorem-oracle", 300.0, main_theorem);
  report("capacity-endpoints", 1e-3, endpoints);
  report("cli-determinism", 60.0, determinism);
  std::printf("%s: %d failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
