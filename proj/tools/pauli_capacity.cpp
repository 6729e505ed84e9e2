// pauli_capacity: channel parameters, memory thresholds, two-use capacity
// curves and brute-force optimality checks for Pauli channels with memory.
//
// Exit codes: 0 success, 1 verification finding, 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pauli_memory.hpp"

namespace pm = pauli_memory;

namespace {

constexpr int kExitFinding = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string q;
  std::string family;
  std::optional<double> p;
  std::string config;
  std::optional<double> mu;
  std::string mu_grid;
  std::string format = "csv";
  std::string out;
  pm::SearchConfig search;
};

pm::Real4 parse_q(const std::string& text) {
  pm::Real4 q{};
  std::stringstream ss(text);
  std::string tok;
  std::size_t n = 0;
  while (std::getline(ss, tok, ',')) {
    if (n == 4) throw UsageError("--q expects exactly 4 comma-separated numbers");
    char* end = nullptr;
    q[n] = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size()) throw UsageError("--q: bad number \"" + tok + "\"");
    ++n;
  }
  if (n != 4) throw UsageError("--q expects exactly 4 comma-separated numbers");
  return q;
}

/// Channel with mu taken from --mu, else from the config file, else `fallback`.
pm::PauliChannel load_channel(const Options& o, std::optional<double> fallback) {
  const int sources = !o.q.empty() + !o.family.empty() + !o.config.empty();
  if (sources != 1) throw UsageError("give exactly one channel source: --q, --family/--p or --config");

  std::optional<double> mu = o.mu;
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw UsageError("cannot open config file " + o.config);
    pm::json j;
    try {
      j = pm::json::parse(in);
    } catch (const pm::json::exception& e) {
      throw UsageError("malformed config file " + o.config + ": " + e.what());
    }
    if (!mu && j.is_object() && j.contains("mu") && j["mu"].is_number()) mu = j["mu"].get<double>();
    if (!mu) mu = fallback;
    if (!mu) throw UsageError("no memory parameter: pass --mu or set \"mu\" in the config");
    if (j.is_object()) j.erase("mu");
    return pm::channel_from_json(j, *mu);
  }
  if (!mu) mu = fallback;
  if (!mu) throw UsageError("no memory parameter: pass --mu");
  if (!o.q.empty()) return pm::new_channel(parse_q(o.q), *mu);
  if (!o.p) throw UsageError("--family needs --p");
  if (o.family == "depolarizing") return pm::depolarizing(*o.p, *mu);
  if (o.family == "mp") return pm::mp_channel(*o.p, *mu);
  throw UsageError("unknown --family \"" + o.family + "\" (expected depolarizing or mp)");
}

std::vector<double> load_grid(const Options& o, const pm::PauliChannel& ch) {
  if (!o.mu_grid.empty()) {
    if (o.mu) throw UsageError("--mu and --mu-grid are mutually exclusive");
    return pm::parse_mu_grid(o.mu_grid);
  }
  return {ch.mu};
}

class KeyValueCsv {
 public:
  KeyValueCsv() : text_("key,value\n") {}
  void add(const std::string& key, double v) { text_ += key + ',' + pm::format_g12(v) + '\n'; }
  void add(const std::string& key, const std::string& v) { text_ += key + ',' + v + '\n'; }
  void add(const std::string& key, const pm::Threshold& t) {
    add(key, t.value);
    add(key + "_raw", std::isfinite(t.raw) ? pm::format_g12(t.raw) : std::string("nan"));
    add(key + "_status", pm::to_string(t.status));
  }
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

std::string cmd_params(const Options& o) {
  const pm::PauliChannel ch = load_channel(o, std::nullopt);
  const pm::ChannelParams cp = pm::channel_params(ch);
  if (o.format == "json") {
    pm::json j = pm::to_json(cp);
    j["channel"] = pm::to_json(ch);
    return j.dump(2) + '\n';
  }
  KeyValueCsv csv;
  for (int n = 0; n < 4; ++n) csv.add("eps" + std::to_string(n), cp.eps[n]);
  for (int n = 0; n < 4; ++n)
    for (int k = 0; k < 4; ++k) csv.add("eps" + std::to_string(n) + std::to_string(k), cp.eps2[n][k]);
  csv.add("l", std::to_string(cp.order.l));
  csv.add("m", std::to_string(cp.order.m));
  csv.add("s", std::to_string(cp.order.s));
  return csv.str();
}

std::string cmd_thresholds(const Options& o) {
  const pm::PauliChannel ch = load_channel(o, 0.0);
  const pm::ChannelParams cp = pm::channel_params(ch);
  const pm::BranchCrossover x = pm::branch_crossover(ch);
  if (o.format == "json") {
    pm::json j{{"mu_ml", pm::to_json(cp.mu_ml)},
               {"mu_star", pm::to_json(cp.mu_star)},
               {"mu_hat", x.mu_hat},
               {"gap_at_mu_star", x.gap_at_mu_star},
               {"ordering", pm::to_json(cp.order)}};
    return j.dump(2) + '\n';
  }
  KeyValueCsv csv;
  csv.add("mu_ml", cp.mu_ml);
  csv.add("mu_star", cp.mu_star);
  csv.add("mu_hat", x.mu_hat);
  csv.add("gap_at_mu_star", x.gap_at_mu_star);
  return csv.str();
}

std::string cmd_capacity(const Options& o) {
  const pm::PauliChannel ch = load_channel(o, std::nullopt);
  const pm::CapacityResult r = pm::capacity_two_use(ch);
  if (o.format == "json") return pm::to_json(r).dump(2) + '\n';
  KeyValueCsv csv;
  csv.add("mu", r.mu);
  csv.add("regime", pm::to_string(r.regime));
  csv.add("c2", r.c2);
  csv.add("entropy_product", r.entropy_product);
  csv.add("entropy_bell", r.entropy_bell);
  for (int i = 0; i < 4; ++i) csv.add("lambda" + std::to_string(i + 1), r.lambdas()[i]);
  csv.add("mu_ml", r.mu_ml);
  csv.add("mu_star", r.mu_star);
  csv.add("optimal_family", pm::to_string(r.optimal.family));
  if (r.optimal.family == pm::StateFamily::product)
    csv.add("optimal_l", std::to_string(r.optimal.l));
  else
    csv.add("optimal_signs", std::to_string(r.optimal.signs[0]) + ' ' + std::to_string(r.optimal.signs[1]) + ' ' +
                                 std::to_string(r.optimal.signs[2]));
  return csv.str();
}

std::string cmd_sweep(const Options& o) {
  const pm::PauliChannel ch = load_channel(o, o.mu_grid.empty() ? std::nullopt : std::optional<double>(0.0));
  const std::vector<double> grid = load_grid(o, ch);
  const auto rows = pm::capacity_sweep(ch, grid);
  return o.format == "json" ? pm::sweep_json(rows).dump(2) + '\n' : pm::sweep_csv(rows);
}

std::string cmd_verify(const Options& o, bool& finding) {
  const pm::PauliChannel ch = load_channel(o, o.mu_grid.empty() ? std::nullopt : std::optional<double>(0.0));
  const std::vector<double> grid = load_grid(o, ch);
  const pm::VerifyReport report = pm::verify_optimality_grid(ch, grid, o.search);
  for (const auto& p : report.points)
    if (p.budget_exceeded) std::cerr << "warning: BudgetExceeded at mu=" << pm::format_g12(p.mu) << '\n';
  finding = report.any_flag();
  return o.format == "json" ? pm::to_json(report).dump(2) + '\n' : pm::verify_csv(report);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Two-use classical capacity of Pauli channels with correlated-noise memory"};
  app.fallthrough();
  app.require_subcommand(1);

  auto* q_opt = app.add_option("--q", o.q, "Pauli probabilities q0,q1,q2,q3");
  auto* fam_opt = app.add_option("--family", o.family, "Channel family: depolarizing | mp");
  app.add_option("--p", o.p, "Family parameter p");
  auto* cfg_opt = app.add_option("--config", o.config, "JSON channel config file");
  q_opt->excludes(fam_opt)->excludes(cfg_opt);
  fam_opt->excludes(cfg_opt);
  auto* mu_opt = app.add_option("--mu", o.mu, "Memory parameter mu in [0,1]");
  auto* grid_opt = app.add_option("--mu-grid", o.mu_grid, "Grid start:end:step, endpoints inclusive");
  mu_opt->excludes(grid_opt);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", o.out, "Output file (default: standard output)");
  app.add_option("--seed", o.search.seed, "Oracle random seed");
  app.add_option("--grid-points", o.search.grid_points_per_angle, "Oracle grid points per angle")
      ->check(CLI::PositiveNumber);
  app.add_option("--restarts", o.search.restarts, "Oracle random restarts")->check(CLI::NonNegativeNumber);
  app.add_option("--refinements", o.search.refinements, "Oracle grid cells refined locally")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--max-iters", o.search.max_iters, "Oracle evaluations per local search")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-entropy", o.search.tol_entropy, "Oracle entropy tolerance in bits")
      ->check(CLI::Range(1e-12, 1.0));

  auto* params = app.add_subcommand("params", "Channel parameters eps_n, eps_nk and the (l,m,s) ordering");
  auto* thresholds = app.add_subcommand("thresholds", "Memory thresholds mu_ml and mu_star");
  auto* capacity = app.add_subcommand("capacity", "Two-use capacity at one mu");
  auto* sweep = app.add_subcommand("sweep", "Capacity curve over a mu grid");
  auto* verify = app.add_subcommand("verify", "Brute-force check of the analytic optimum over a mu grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  std::string output;
  bool finding = false;
  try {
    if (params->parsed()) output = cmd_params(o);
    if (thresholds->parsed()) output = cmd_thresholds(o);
    if (capacity->parsed()) output = cmd_capacity(o);
    if (sweep->parsed()) output = cmd_sweep(o);
    if (verify->parsed()) output = cmd_verify(o, finding);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const pm::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (o.out.empty()) {
    std::cout << output;
    std::cout.flush();
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << o.out << '\n';
      return kExitUsage;
    }
    f << output;
  }
  return finding ? kExitFinding : 0;
}
