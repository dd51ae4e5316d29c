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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "cakecut/aligned_mechanism.hpp"
#include "cakecut/general_mechanism.hpp"
#include "cakecut/ic_verifier.hpp"
#include "cakecut/interval_set.hpp"
#include "cakecut/reductions.hpp"
#include "cakecut/welfare.hpp"
#include "test_support.hpp"

namespace {

using namespace cakecut;
using testing::brute_sw_max;

const double kSqrt3 = std::sqrt(3.0);
const double kPot = 1.0 / (8.0 - 4.0 * kSqrt3);

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome fail(std::string detail) { return {false, std::move(detail)}; }

template <typename... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream os;
  os.precision(12);
  (os << ... << parts);
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome pot_value() {
  const auto start = std::chrono::steady_clock::now();
  const auto m = eta_min(0.5, 1e-2, 6);
  const double elapsed = seconds_since(start);
  const std::string summary = cat("eta_min=", m.value, " at (", m.argmin.a, ", ", m.argmin.b, ") in ", elapsed, "s");
  if (std::abs(m.value - kPot) > 1e-6) return fail(summary + ", value off");
  if (std::abs(m.argmin.a - 1.0) > 1e-4 || std::abs(m.argmin.b - (kSqrt3 - 1.0)) > 1e-4)
    return fail(summary + ", argmin off");
  if (elapsed >= 10.0) return fail(summary + ", too slow");
  return {true, summary};
}

Outcome randomized_bound() {
  const auto start = std::chrono::steady_clock::now();
  const auto m = minimize_pot_bound(0.5, 0.01);
  const double elapsed = seconds_since(start);
  const std::string summary = cat("tau*=", m.tau_star, " bound=", m.bound, " in ", elapsed, "s");
  if (std::abs(m.tau_star - (2.0 - kSqrt3)) > 1e-5) return fail(summary + ", tau off");
  if (std::abs(m.bound - kPot) > 1e-6) return fail(summary + ", bound off");
  if (elapsed >= 1.0) return fail(summary + ", too slow");
  return {true, summary};
}

Outcome theta_optimality() {
  const auto rows = theta_sweep(0.05, 0.01, 6);
  if (rows.size() != 21) return fail(cat(rows.size(), " theta rows"));
  const ThetaSweepRow* peak = nullptr;
  for (const auto& r : rows)
    if (std::abs(r.theta - 0.5) < 1e-12) peak = &r;
  if (!peak) return fail("theta = 0.5 missing from sweep");
  double runner_up = -1.0;
  for (const auto& r : rows) {
    if (&r == peak) continue;
    if (!(r.minimum.value < peak->minimum.value))
      return fail(cat("eta_min(", r.theta, ")=", r.minimum.value, " not below eta_min(0.5)"));
    runner_up = std::max(runner_up, r.minimum.value);
    if (!(std::min(r.probe_high_a, r.probe_high_b) < kPot - 1e-9))
      return fail(cat("no probe certifies theta=", r.theta));
  }
  return {true, cat("peak ", peak->minimum.value, " at 0.5, runner-up ", runner_up)};
}

Outcome characterization_round_trip() {
  for (std::int64_t k = 0; k <= 20; ++k) {
    const Theta theta{make_rational(k, 20)};
    const auto found = characterize(family_oracle(theta), make_rational(1, 20));
    const auto* got = std::get_if<Theta>(&found);
    if (!got || got->value() != theta.value()) return fail(cat("characterize missed theta=", k, "/20"));
    if (derive_aligned(family_mechanism(theta)).theta.value() != theta.value())
      return fail(cat("derive_aligned missed theta=", k, "/20"));
  }
  return {true, "21 values recovered by both routes"};
}

Outcome ic_suite() {
  long checked = 0;
  for (const char* t : {"0", "1/4", "1/2", "3/4", "1"}) {
    const Theta theta{parse_rational(t)};
    const auto report = run_ic_suite(family_mechanism(theta), t, 20260101, 500);
    checked += report.deviations_checked;
    if (report.violated() || report.worst_gain > 0)
      return fail(cat("theta=", t, " worst_gain=", to_string(report.worst_gain)));
  }
  const auto prop = run_ic_suite(proportional_mechanism(), "proportional", 20260101, 500);
  if (!(prop.worst_gain > 0) || !prop.witness) return fail("proportional fixture not caught");
  return {true, cat(checked, " misreports, none profitable; proportional gain ", to_string(prop.worst_gain))};
}

Outcome non_wastefulness() {
  DeviationRng rng(6);
  const Theta half{make_rational(1, 2)};
  for (int i = 0; i < 1000; ++i) {
    const IntervalSet A = rng.positive_interval_set(), B = rng.positive_interval_set();
    const Allocation x = allocate(half, A, B);
    if (!is_subset(x.C, A) || !is_subset(x.D, B) || !disjoint(x.C, x.D) || unite(x.C, x.D) != unite(A, B))
      return fail(cat("wasteful on A=", to_string(A), " B=", to_string(B)));
  }
  return {true, "1000 pairs"};
}

Outcome ratio_preservation() {
  DeviationRng rng(7);
  const std::vector<Theta> thetas{Theta{0}, Theta{make_rational(1, 4)}, Theta{make_rational(1, 3)},
                                  Theta{make_rational(1, 2)}, Theta{make_rational(3, 4)}, Theta{1}};
  for (int i = 0; i < 1000; ++i) {
    const Theta& theta = thetas[static_cast<std::size_t>(i) % thetas.size()];
    const IntervalSet A = rng.positive_interval_set(), B = rng.positive_interval_set();
    const Rational u = unite(A, B).measure();
    const AlignedProfile p{A.measure() / u, B.measure() / u};
    const auto f = f_theta(theta, p);
    const auto t = ratio_tuple(A, B, allocate(theta, A, B));
    if (t.alpha != p.a || t.beta != p.b || t.gamma != f.c || t.delta != f.d)
      return fail(cat("tuple mismatch on A=", to_string(A), " B=", to_string(B)));
  }

  int witnesses = 0;
  for (std::int64_t i = 1; i <= 20; ++i)
    for (std::int64_t j = 1; j <= 20; ++j) {
      if (i + j <= 20) continue;
      const Theta& theta = thetas[static_cast<std::size_t>(witnesses) % thetas.size()];
      const Rational a = make_rational(i, 20), b = make_rational(j, 20);
      const auto w = witness_pair(family_mechanism(theta), a, b);
      if (unite(w.A, w.B) != IntervalSet::full()) return fail(cat("witness at (", i, ",", j, ")/20 misses cake"));
      const auto f = f_theta(theta, AlignedProfile{a, b});
      const auto t = ratio_tuple(w.A, w.B, allocate(theta, w.A, w.B));
      if (t.alpha != a || t.beta != b || t.gamma != f.c || t.delta != f.d)
        return fail(cat("witness tuple mismatch at (", i, ",", j, ")/20"));
      ++witnesses;
    }
  if (witnesses < 200) return fail(cat("only ", witnesses, " witness points"));
  return {true, cat("1000 pairs, ", witnesses, " witness points")};
}

Outcome envy_boundary() {
  DeviationRng rng(8);
  const auto half = family_mechanism(Theta{make_rational(1, 2)});
  for (int i = 0; i < 500; ++i) {
    const IntervalSet A = rng.positive_interval_set(), B = rng.positive_interval_set();
    const auto ef = check_envy_free(half, A, B);
    if (!ef.player_i || !ef.player_ii)
      return fail(cat("finding: envy at theta=1/2 for A=", to_string(A), " B=", to_string(B)));
  }
  const auto full = IntervalSet::full();
  const auto ef = check_envy_free(family_mechanism(Theta{make_rational(7, 10)}), full, full);
  if (ef.player_ii) return fail("theta=7/10 full-cake instance shows no envy");
  return {true, "500 envy-free trials; player II envies at theta=7/10"};
}

Outcome welfare_oracles() {
  DeviationRng rng(9);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double a = static_cast<double>(1 + rng.below(1000)) / 1000.0;
    const double b = static_cast<double>(1 + rng.below(1000)) / 1000.0;
    worst = std::max(worst, std::abs(sw_max_aligned(a, b) - brute_sw_max(a, b)));
  }
  if (worst > 1e-6) return fail(cat("sw_max off by ", worst));
  for (std::int64_t i = 1; i <= 100; ++i)
    for (std::int64_t j = 1; j <= 100; ++j) {
      const Rational a = make_rational(i, 100), b = make_rational(j, 100);
      const auto label = welfare_case(a, b);
      if (sw_aligned(Rational(make_rational(1, 2)), a, b) != sw_half_by_case(label, a, b) ||
          sw_max_aligned(a, b) != sw_max_by_case(label, a, b))
        return fail(cat("case formula mismatch at (", i, ",", j, ")/100"));
    }
  return {true, cat("max deviation ", worst, "; 10000 grid cells exact")};
}

Outcome interval_algebra() {
  DeviationRng rng(10);
  for (int i = 0; i < 1000; ++i) {
    const IntervalSet S = rng.interval_set(64, 4), T = rng.interval_set(64, 4);
    const auto again = IntervalSet::normalize(S.intervals());
    if (again != S) return fail(cat("normalize not idempotent on ", to_string(S)));
    if (unite(S, T).measure() + intersect(S, T).measure() != S.measure() + T.measure())
      return fail(cat("inclusion-exclusion fails on ", to_string(S), ", ", to_string(T)));
    if (complement(unite(S, T)) != intersect(complement(S), complement(T)) ||
        complement(intersect(S, T)) != unite(complement(S), complement(T)))
      return fail(cat("De Morgan fails on ", to_string(S), ", ", to_string(T)));
    const Rational m = S.measure() * make_rational(static_cast<std::int64_t>(rng.below(17)), 16);
    const auto prefix = take_from_left(S, m);
    if (prefix.measure() != m || !is_subset(prefix, S))
      return fail(cat("take_from_left(", to_string(S), ", ", to_string(m), ") inexact"));
  }
  return {true, "1000 cases"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"pot value", pot_value},
      {"randomized bound", randomized_bound},
      {"theta optimality", theta_optimality},
      {"characterization round trip", characterization_round_trip},
      {"incentive compatibility", ic_suite},
      {"non-wastefulness", non_wastefulness},
      {"ratio preservation", ratio_preservation},
      {"envy-freeness boundary", envy_boundary},
      {"welfare oracles", welfare_oracles},
      {"interval algebra", interval_algebra},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu (%s): %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
