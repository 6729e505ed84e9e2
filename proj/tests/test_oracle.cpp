#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "test_support.hpp"

using namespace pauli_memory;
using Catch::Approx;

namespace {

const Real4 kIllustration{0.2, 0.1, 0.3, 0.4};

Matrix4 diag(double a, double b, double c, double d) {
  Matrix4 m;
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

}  // namespace

TEST_CASE("eigensolver on fixed inputs", "[oracle][eigen]") {
  const auto ev = eig_hermitian4(diag(0.1, 0.4, 0.2, 0.3));
  CHECK(ev == std::array<double, 4>{0.4, 0.3, 0.2, 0.1});

  const auto bell = eig_hermitian4(bell_state(1, -1, 1));
  CHECK(bell[0] == Approx(1.0).margin(1e-15));
  for (int i = 1; i < 4; ++i) CHECK(std::abs(bell[i]) < 1e-15);

  Matrix4 skew = diag(1, 0, 0, 0);
  skew(0, 1) = 0.5;
  CHECK_THROWS_AS(eig_hermitian4(skew), error);
}

TEST_CASE("eigensolver recovers planted spectra", "[oracle][eigen][property]") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    std::array<double, 4> planted{u(rng), u(rng), u(rng), u(rng)};
    if (t % 5 == 0) planted[1] = planted[0];  // degenerate pairs
    if (t % 7 == 0) planted[3] = planted[2] = planted[1];
    const auto U = pm_test::random_unitary(rng);
    const auto m = U * diag(planted[0], planted[1], planted[2], planted[3]) * adjoint(U);
    auto got = eig_hermitian4(m);
    std::sort(planted.begin(), planted.end(), std::greater<>());
    double sum = 0;
    for (int i = 0; i < 4; ++i) {
      REQUIRE(std::abs(got[i] - planted[i]) < 1e-10);
      sum += got[i];
    }
    REQUIRE(std::abs(sum - trace(m).real()) < 1e-10);
    // unitary invariance
    const auto V = pm_test::random_unitary(rng);
    const auto again = eig_hermitian4(V * m * adjoint(V));
    for (int i = 0; i < 4; ++i) REQUIRE(std::abs(again[i] - got[i]) < 1e-10);
  }
}

TEST_CASE("explicit output matrix", "[oracle]") {
  const auto ill = new_channel(kIllustration, 0.5);
  CHECK(max_abs_diff(output_matrix(ill, PauliWeights::maximally_mixed()), Matrix4::identity() * cplx{0.25, 0}) < 1e-16);

  const auto phi = bell_state(1, -1, 1);
  CHECK(max_abs_diff(output_matrix(ill.with_mu(1.0), pauli_weights(phi)), phi) < 1e-15);

  std::mt19937_64 rng(55);
  for (int t = 0; t < 1000; ++t) {
    const auto ch = pm_test::random_channel(rng);
    const auto rho = pure_density(random_pure_params(rng));
    const auto w = pauli_weights(rho);
    const auto explicit_route = output_matrix(ch, w);
    REQUIRE(max_abs_diff(explicit_route, apply_channel(ch, rho)) < 1e-12);
    REQUIRE(max_abs_diff(explicit_route, weights_to_density(apply_channel_weights(ch, w))) < 1e-12);
  }
}

TEST_CASE("a2 coefficient", "[oracle]") {
  std::mt19937_64 rng(77);
  const auto identity = new_channel({1, 0, 0, 0}, 0.4);
  for (int t = 0; t < 20; ++t) {
    const auto t2 = a2_coefficient(channel_params(identity), pauli_weights(pure_density(random_pure_params(rng))));
    REQUIRE(t2.total() == Approx(3.0).margin(1e-12));
    REQUIRE(std::abs(t2.a2) < 1e-12);
  }

  for (int t = 0; t < 200; ++t) {
    const auto ch = pm_test::random_channel(rng);
    const auto cp = channel_params(ch);
    const int l = cp.order.l, m = cp.order.m, s = cp.order.s;
    auto sq = [](double x) { return x * x; };

    const auto prod = a2_coefficient(cp, pauli_weights(product_optimal_state(l, 1, -1)));
    REQUIRE(prod.total() == Approx(sq(cp.eps2[l][l]) + 2 * sq(cp.eps[l])).margin(1e-12));
    const auto bell = a2_coefficient(cp, pauli_weights(bell_state(-1, -1, -1)));
    REQUIRE(bell.total() == Approx(sq(cp.eps2[l][l]) + sq(cp.eps2[m][m]) + sq(cp.eps2[s][s])).margin(1e-12));

    // a2 is the second elementary symmetric polynomial of the output spectrum
    const auto rho = pure_density(random_pure_params(rng));
    const auto terms = a2_coefficient(cp, pauli_weights(rho));
    const auto ev = eig_hermitian4(apply_channel(ch, rho));
    double e2 = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) e2 += ev[i] * ev[j];
    REQUIRE(terms.a2 == Approx(e2).margin(1e-12));
    REQUIRE(terms.a2 >= -1e-12);

    // larger A+B+C means lower entropy outside [mu_hat, mu_star + 1e-3]
    const double hat = branch_crossover(ch).mu_hat;
    if (ch.mu < hat - 1e-6 || ch.mu > cp.mu_star.value + 1e-3) {
      const auto cap = capacity_two_use(ch);
      if (prod.total() > bell.total() + 1e-12) REQUIRE(cap.entropy_product <= cap.entropy_bell + 1e-12);
      if (bell.total() > prod.total() + 1e-12) REQUIRE(cap.entropy_bell <= cap.entropy_product + 1e-12);
    }
  }
}

TEST_CASE("Nelder-Mead minimizes a shifted quadratic", "[oracle]") {
  auto f = [](const std::array<double, 3>& x) {
    return (x[0] - 1) * (x[0] - 1) + 2 * (x[1] + 0.5) * (x[1] + 0.5) + 3 * (x[2] - 2) * (x[2] - 2) + 0.25;
  };
  const auto r = nelder_mead(f, std::array<double, 3>{0, 0, 0});
  CHECK(r.f == Approx(0.25).margin(1e-12));
  CHECK(r.x[0] == Approx(1).margin(1e-5));
  CHECK(r.x[1] == Approx(-0.5).margin(1e-5));
  CHECK(r.x[2] == Approx(2).margin(1e-5));
  CHECK_FALSE(r.budget_exceeded);

  SimplexOptions tight;
  tight.max_evaluations = 10;
  CHECK(nelder_mead(f, std::array<double, 3>{0, 0, 0}, tight).budget_exceeded);
}

TEST_CASE("brute-force minimum entropy", "[oracle]") {
  SearchConfig cfg;
  cfg.grid_points_per_angle = 5;
  cfg.restarts = 4;

  const auto id = min_entropy_bruteforce(new_channel({1, 0, 0, 0}, 0.3), cfg);
  CHECK(id.min_entropy == 0.0);

  std::mt19937_64 rng(3);
  const auto at_one = min_entropy_bruteforce(pm_test::random_channel(rng, 1.0), cfg);
  CHECK(at_one.min_entropy < 1e-4);
  const auto w = pauli_weights(pure_density(at_one.best_params));
  CHECK(alpha_beta(w).alpha_plus == Approx(3.0).margin(1e-3));  // a Bell state

  const auto ill = new_channel(kIllustration, 0.2);
  const auto r = min_entropy_bruteforce(ill, cfg);
  const double analytic = capacity_two_use(ill).entropy_product;
  CHECK(r.min_entropy >= analytic - 1e-6);
  CHECK(r.min_entropy <= analytic + 1e-4);
  CHECK(r.gap_to_analytic == Approx(r.min_entropy - analytic).margin(1e-15));
  CHECK(r.evaluations > 5 * 5 * 5 * 5 * 5 * 5);

  // determinism
  const auto again = min_entropy_bruteforce(ill, cfg);
  CHECK(again.min_entropy == r.min_entropy);
  CHECK(again.best_params == r.best_params);
  CHECK(again.evaluations == r.evaluations);
}

TEST_CASE("optimality grid report", "[oracle]") {
  SearchConfig cfg;
  cfg.grid_points_per_angle = 5;
  cfg.restarts = 4;
  const auto ill = new_channel(kIllustration, 0.0);

  const std::vector<double> one{1.0};
  const auto rep1 = verify_optimality_grid(ill, one, cfg);
  REQUIRE(rep1.points.size() == 1);
  CHECK(std::abs(rep1.points[0].gap) < 1e-4);
  CHECK_FALSE(rep1.any_flag());

  const std::vector<double> grid{0.0, 0.3, 0.6};
  const auto seq = verify_optimality_grid(ill, grid, cfg, 1);
  const auto par = verify_optimality_grid(ill, grid, cfg, 3);
  REQUIRE(seq.points.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(seq.points[i].mu == grid[i]);
    CHECK(seq.points[i].s_oracle == par.points[i].s_oracle);
    CHECK(seq.points[i].gap == par.points[i].gap);
  }
  CHECK(seq.points[0].winner == Regime::product);
  CHECK(seq.points[2].winner == Regime::entangled);
  CHECK_FALSE(seq.any_flag());
}
