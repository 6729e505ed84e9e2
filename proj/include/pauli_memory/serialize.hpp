#pragma once

// JSON and CSV encodings for channels, states, capacity results and oracle
// reports.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pauli_memory/capacity.hpp"
#include "pauli_memory/channel.hpp"
#include "pauli_memory/error.hpp"
#include "pauli_memory/oracle.hpp"
#include "pauli_memory/states.hpp"

namespace pauli_memory {

using json = nlohmann::json;

/// %.12g, with negative zero printed as 0.
inline std::string format_g12(double x) {
  if (x == 0.0) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// Accepts {"q": [q0,q1,q2,q3], "mu": m} or
/// {"family": "depolarizing"|"mp", "p": x, "mu": m}. A missing "mu" reads as
/// `default_mu`. Throws OutOfRange on a malformed object and the channel
/// constructors' errors on invalid values.
inline PauliChannel channel_from_json(const json& j, double default_mu = 0.0) {
  if (!j.is_object()) throw error(errc::out_of_range, "channel config must be a JSON object");
  double mu = default_mu;
  if (j.contains("mu")) {
    if (!j["mu"].is_number()) throw error(errc::out_of_range, "\"mu\" must be a number");
    mu = j["mu"].get<double>();
  }
  const bool has_q = j.contains("q");
  const bool has_family = j.contains("family");
  if (has_q == has_family) throw error(errc::out_of_range, "channel config needs exactly one of \"q\" or \"family\"");
  if (has_q) {
    const json& q = j["q"];
    if (!q.is_array() || q.size() != 4) throw error(errc::out_of_range, "\"q\" must be an array of 4 numbers");
    Real4 arr{};
    for (std::size_t i = 0; i < 4; ++i) {
      if (!q[i].is_number()) throw error(errc::out_of_range, "\"q\" must be an array of 4 numbers");
      arr[i] = q[i].get<double>();
    }
    return new_channel(arr, mu);
  }
  if (!j["family"].is_string() || !j.contains("p") || !j["p"].is_number())
    throw error(errc::out_of_range, "\"family\" needs a string name and a numeric \"p\"");
  const std::string family = j["family"].get<std::string>();
  const double p = j["p"].get<double>();
  if (family == "depolarizing") return depolarizing(p, mu);
  if (family == "mp") return mp_channel(p, mu);
  throw error(errc::out_of_range, "unknown channel family \"" + family + "\"");
}

inline json to_json(const PauliChannel& ch) { return {{"q", ch.q}, {"mu", ch.mu}}; }

inline json to_json(const PureStateParams& p) {
  return {{"theta", p.theta}, {"phi", p.phi}, {"psi", p.psi},
          {"phi11", p.phi11}, {"phi10", p.phi10}, {"phi01", p.phi01}};
}

inline PureStateParams params_from_json(const json& j) {
  PureStateParams p;
  p.theta = j.at("theta").get<double>();
  p.phi = j.at("phi").get<double>();
  p.psi = j.at("psi").get<double>();
  p.phi11 = j.at("phi11").get<double>();
  p.phi10 = j.at("phi10").get<double>();
  p.phi01 = j.at("phi01").get<double>();
  return p;
}

/// NaN becomes null.
inline json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json to_json(const Threshold& t) {
  return {{"value", t.value}, {"raw", number_or_null(t.raw)}, {"status", to_string(t.status)}};
}

inline json to_json(const Ordering& o) { return json::array({o.l, o.m, o.s}); }

inline json to_json(const ChannelParams& cp) {
  return {{"eps", cp.eps}, {"eps_matrix", cp.eps2}, {"ordering", to_json(cp.order)}};
}

inline json to_json(const OptimalState& s) {
  json j{{"family", to_string(s.family)}};
  if (s.family == StateFamily::product)
    j["l"] = s.l;
  else
    j["signs"] = s.signs;
  return j;
}

inline json to_json(const CapacityResult& r) {
  return {{"mu", r.mu},
          {"regime", to_string(r.regime)},
          {"c2", r.c2},
          {"entropy_product", r.entropy_product},
          {"entropy_bell", r.entropy_bell},
          {"lambdas_product", r.lambdas_product},
          {"lambdas_bell", r.lambdas_bell},
          {"mu_ml", to_json(r.mu_ml)},
          {"mu_star", to_json(r.mu_star)},
          {"optimal_state", to_json(r.optimal)}};
}

inline json to_json(const VerifyPoint& p) {
  return {{"mu", p.mu}, {"s_oracle", p.s_oracle}, {"s_product", p.s_product},
          {"s_bell", p.s_bell}, {"gap", p.gap}, {"flag", p.flag}};
}

inline json to_json(const VerifyReport& r) {
  json arr = json::array();
  for (const auto& p : r.points) arr.push_back(to_json(p));
  return arr;
}

inline constexpr const char* kSweepCsvHeader = "mu,regime,c2,entropy_product,entropy_bell,l1,l2,l3,l4";

/// One row per result; l1..l4 are the eigenvalues of the winning branch.
inline std::string sweep_csv(const std::vector<CapacityResult>& rows) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += format_g12(r.mu) + ',' + to_string(r.regime) + ',' + format_g12(r.c2) + ',' +
           format_g12(r.entropy_product) + ',' + format_g12(r.entropy_bell);
    for (double l : r.lambdas()) out += ',' + format_g12(l);
    out += '\n';
  }
  return out;
}

inline json sweep_json(const std::vector<CapacityResult>& rows) {
  json arr = json::array();
  for (const auto& r : rows) arr.push_back(to_json(r));
  return arr;
}

inline constexpr const char* kVerifyCsvHeader = "mu,s_oracle,s_product,s_bell,gap,flag";

inline std::string verify_csv(const VerifyReport& r) {
  std::string out = kVerifyCsvHeader;
  out += '\n';
  for (const auto& p : r.points)
    out += format_g12(p.mu) + ',' + format_g12(p.s_oracle) + ',' + format_g12(p.s_product) + ',' +
           format_g12(p.s_bell) + ',' + format_g12(p.gap) + ',' + (p.flag ? "true" : "false") + '\n';
  return out;
}

}  // namespace pauli_memory
