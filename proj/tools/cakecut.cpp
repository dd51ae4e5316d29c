/*
 * Copyright 2026 The cakecut Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// cakecut: command-line front end.
//
// Exit codes: 0 success, 1 property violation found, 2 input error,
// 3 internal invariant breach.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cakecut/aligned_mechanism.hpp"
#include "cakecut/general_mechanism.hpp"
#include "cakecut/ic_verifier.hpp"
#include "cakecut/interval_set.hpp"
#include "cakecut/json_io.hpp"
#include "cakecut/oracle_protocol.hpp"
#include "cakecut/reductions.hpp"
#include "cakecut/welfare.hpp"

namespace {

using namespace cakecut;

constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;

struct Config {
  std::string theta = "1/2";
  std::string grid = "0.01";
  int refine = 6;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string oracle_cmd;
};

IntervalSet read_demand(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open demand file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_interval_set(buf.str());
}

Theta theta_of(const Config& cfg) { return Theta{parse_rational(cfg.theta)}; }

double positive_real(const std::string& text, const char* what) {
  double v = to_double(parse_rational(text));
  if (!(v > 0.0)) throw InputError(std::string(what) + " must be positive");
  return v;
}

MechanismOracle builtin_mechanism(const std::string& name, const Config& cfg) {
  if (name == "family") return family_mechanism(theta_of(cfg));
  if (name == "proportional") return proportional_mechanism();
  throw InputError("unknown mechanism '" + name + "' (expected family, proportional or oracle)");
}

std::shared_ptr<SubprocessOracle> launch_oracle(const Config& cfg) {
  if (cfg.oracle_cmd.empty()) throw InputError("--oracle-cmd is required");
  return std::make_shared<SubprocessOracle>(cfg.oracle_cmd);
}

int cmd_allocate(const Config& cfg, const std::string& file_a, const std::string& file_b) {
  const IntervalSet A = read_demand(file_a);
  const IntervalSet B = read_demand(file_b);
  const DemandPair demands{A, B};
  const Allocation x = allocate(theta_of(cfg), demands);
  Json out = to_json(ratio_tuple(A, B, x));
  out["C"] = x.C;
  out["D"] = x.D;
  std::cout << out.dump() << '\n';
  return 0;
}

int cmd_aligned(const Config& cfg, const std::string& a, const std::string& b) {
  const AlignedProfile p{parse_rational(a), parse_rational(b)};
  const AlignedAllocation x = f_theta(theta_of(cfg), p);
  std::cout << Json{{"c", rational_to_json(x.c)}, {"d", rational_to_json(x.d)}}.dump() << '\n';
  return 0;
}

int cmd_sweep(const Config& cfg) {
  const auto rows = welfare_sweep(to_double(theta_of(cfg).value()), positive_real(cfg.grid, "--grid"));
  if (cfg.format == "csv") {
    write_welfare_csv(std::cout, rows);
    return 0;
  }
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back({{"theta", format_real(r.theta)},
                   {"a", format_real(r.a)},
                   {"b", format_real(r.b)},
                   {"sw_mech", format_real(r.sw_mechanism)},
                   {"sw_max", format_real(r.sw_max)},
                   {"eta", format_real(r.eta)},
                   {"case", std::string(to_string(r.label))}});
  }
  std::cout << out.dump() << '\n';
  return 0;
}

int cmd_theta_sweep(const Config& cfg, const std::string& grid_theta) {
  const auto rows = theta_sweep(positive_real(grid_theta, "--grid-theta"), positive_real(cfg.grid, "--grid"),
                                cfg.refine);
  write_theta_sweep_csv(std::cout, rows);
  return 0;
}

int cmd_pot(const Config& cfg, const std::string& p, const std::string& resolution) {
  const auto best = minimize_pot_bound(to_double(parse_rational(p)), positive_real(resolution, "--resolution"),
                                       cfg.refine);
  // Emitted by hand so both reals keep the nine-significant-digit format.
  std::cout << "{\"bound\":" << format_real(best.bound) << ",\"tau_star\":" << format_real(best.tau_star)
            << "}\n";
  return 0;
}

int cmd_verify_ic(const Config& cfg, const std::string& mechanism, long trials) {
  if (trials < 0) throw InputError("--trials must be non-negative");
  ICReport report;
  if (mechanism == "oracle") {
    auto oracle = launch_oracle(cfg);
    report = run_ic_suite(subprocess_mechanism(oracle), "oracle:" + cfg.oracle_cmd, cfg.seed, trials, 8,
                          make_rational(1, 1000000000));
  } else {
    std::string name = mechanism == "family" ? "family:" + to_string(theta_of(cfg).value()) : mechanism;
    report = run_ic_suite(builtin_mechanism(mechanism, cfg), name, cfg.seed, trials);
  }
  std::cout << to_json(report).dump() << '\n';
  return report.violated() ? kExitViolation : 0;
}

int cmd_characterize(const Config& cfg) {
  auto oracle = launch_oracle(cfg);
  const auto result = characterize(aligned_view(subprocess_mechanism(oracle)), parse_rational(cfg.grid));
  if (const auto* theta = std::get_if<Theta>(&result)) {
    std::cout << Json{{"theta", rational_to_json(theta->value())}}.dump() << '\n';
    return 0;
  }
  std::cout << Json{{"not_in_family", to_json(std::get<NotInFamily>(result))}}.dump() << '\n';
  return kExitViolation;
}

int cmd_witness(const Config& cfg, const std::string& a, const std::string& b) {
  auto oracle = launch_oracle(cfg);
  try {
    const auto w = witness_pair(subprocess_mechanism(oracle), parse_rational(a), parse_rational(b));
    std::cout << Json{{"A", w.A}, {"B", w.B}, {"trace", to_json(w.trace)}}.dump() << '\n';
    return 0;
  } catch (const OracleViolation& e) {
    std::cout << Json{{"violation", e.what()}, {"trace", to_json(e.trace())}}.dump() << '\n';
    return kExitViolation;
  }
}

int cmd_serve(const Config& cfg, const std::string& mechanism) {
  serve_mechanism(builtin_mechanism(mechanism, cfg), std::cin, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cakecut: truthful two-player cake cutting with uniform valuations"};
  app.require_subcommand(1);

  Config cfg;
  if (const char* env = std::getenv("CAKE_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: CAKE_SEED must be a non-negative integer\n";
      return kExitInput;
    }
  }

  auto add_theta = [&](CLI::App* sub) {
    sub->add_option("--theta", cfg.theta, "mechanism parameter in [0,1], as p/q or decimal")
        ->capture_default_str();
  };

  std::string file_a, file_b;
  auto* allocate_cmd = app.add_subcommand("allocate", "allocate two demand files with F_theta");
  add_theta(allocate_cmd);
  allocate_cmd->add_option("demand_a", file_a, "IntervalSet JSON for player I")->required();
  allocate_cmd->add_option("demand_b", file_b, "IntervalSet JSON for player II")->required();

  std::string a = "1", b = "1";
  auto* aligned_cmd = app.add_subcommand("aligned", "evaluate f_theta at an aligned profile");
  add_theta(aligned_cmd);
  aligned_cmd->add_option("--a", a, "player I demands [0,a]")->required();
  aligned_cmd->add_option("--b", b, "player II demands [1-b,1]")->required();

  auto* sweep_cmd = app.add_subcommand("sweep", "welfare of f_theta over an (a,b) grid");
  add_theta(sweep_cmd);
  sweep_cmd->add_option("--grid", cfg.grid, "grid spacing")->capture_default_str();
  sweep_cmd->add_option("--format", cfg.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_val("csv");

  std::string grid_theta = "0.05";
  auto* theta_sweep_cmd = app.add_subcommand("theta-sweep", "minimum competitive ratio per theta");
  theta_sweep_cmd->add_option("--grid-theta", grid_theta, "theta spacing")->capture_default_str();
  theta_sweep_cmd->add_option("--grid", cfg.grid, "(a,b) grid spacing")->capture_default_str();
  theta_sweep_cmd->add_option("--refine", cfg.refine, "refinement rounds")->capture_default_str();

  std::string pot_p = "0.5", resolution = "0.01";
  auto* pot_cmd = app.add_subcommand("pot", "minimize the randomized truthfulness bound over tau");
  pot_cmd->add_option("--p", pot_p, "smaller expected full-cake share, in [0,1/2]")->capture_default_str();
  pot_cmd->add_option("--resolution", resolution, "tau grid spacing")->capture_default_str();
  pot_cmd->add_option("--refine", cfg.refine, "refinement rounds")->capture_default_str();

  std::string mechanism = "family";
  long trials = 500;
  auto* verify_cmd = app.add_subcommand("verify-ic", "search for profitable misreports");
  add_theta(verify_cmd);
  verify_cmd->add_option("--mechanism", mechanism, "family, proportional or oracle")->capture_default_str();
  verify_cmd->add_option("--trials", trials, "random truthful profiles")->capture_default_str();
  verify_cmd->add_option("--seed", cfg.seed, "seed (default: $CAKE_SEED or 0)");
  verify_cmd->add_option("--oracle-cmd", cfg.oracle_cmd, "shell command speaking the oracle protocol");

  auto* characterize_cmd = app.add_subcommand("characterize", "identify theta of an external mechanism");
  characterize_cmd->add_option("--oracle-cmd", cfg.oracle_cmd, "shell command speaking the oracle protocol")
      ->required();
  characterize_cmd->add_option("--grid", cfg.grid, "probe grid spacing (exact rational)")->capture_default_str();

  auto* witness_cmd = app.add_subcommand("witness", "build general demands replicating an aligned profile");
  witness_cmd->add_option("--oracle-cmd", cfg.oracle_cmd, "shell command speaking the oracle protocol")
      ->required();
  witness_cmd->add_option("--a", a, "target |A|")->required();
  witness_cmd->add_option("--b", b, "target |B|")->required();

  std::string served = "family";
  auto* serve_cmd = app.add_subcommand("serve", "answer oracle-protocol requests on stdin");
  add_theta(serve_cmd);
  serve_cmd->add_option("--mechanism", served, "family or proportional")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*allocate_cmd) return cmd_allocate(cfg, file_a, file_b);
    if (*aligned_cmd) return cmd_aligned(cfg, a, b);
    if (*sweep_cmd) return cmd_sweep(cfg);
    if (*theta_sweep_cmd) return cmd_theta_sweep(cfg, grid_theta);
    if (*pot_cmd) return cmd_pot(cfg, pot_p, resolution);
    if (*verify_cmd) return cmd_verify_ic(cfg, mechanism, trials);
    if (*characterize_cmd) return cmd_characterize(cfg);
    if (*witness_cmd) return cmd_witness(cfg, a, b);
    if (*serve_cmd) return cmd_serve(cfg, served);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return kExitInput;
}
