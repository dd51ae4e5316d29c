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

/**
 * \file cakecut/ic_verifier.hpp
 *
 * \brief Refutation engine for incentive compatibility, non-wastefulness and
 *  envy-freeness of general-model mechanisms.
 *
 * Misreports are built from the four-way split of the symmetric difference
 * between the truthful demand A and a misreport A' by membership in the
 * opponent's demand B:
 *
 *   delta1 = (A' \ A) n B     delta2 = (A \ A') n B
 *   delta3 = (A' \ A) \ B     delta4 = (A \ A') \ B
 *
 * Undoing them one at a time walks A' back to A. All comparisons are exact.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cakecut/errors.hpp"
#include "cakecut/general_mechanism.hpp"
#include "cakecut/interval_set.hpp"

namespace cakecut {

struct DeltaDecomposition {
  IntervalSet delta1;  ///< added, wanted by the opponent
  IntervalSet delta2;  ///< withheld, wanted by the opponent
  IntervalSet delta3;  ///< added, not wanted by the opponent
  IntervalSet delta4;  ///< withheld, not wanted by the opponent
};

inline DeltaDecomposition delta_decompose(const IntervalSet& A, const IntervalSet& misreport,
                                          const IntervalSet& B) {
  const IntervalSet added = difference(misreport, A);
  const IntervalSet withheld = difference(A, misreport);
  return {intersect(added, B), intersect(withheld, B), difference(added, B), difference(withheld, B)};
}

/// [A1 = misreport, A2, A3, A4, A5 = A]; each step zeroes one delta.
inline std::vector<IntervalSet> deviation_chain(const IntervalSet& A, const IntervalSet& misreport,
                                                const IntervalSet& B) {
  const auto d = delta_decompose(A, misreport, B);
  std::vector<IntervalSet> chain;
  chain.reserve(5);
  chain.push_back(misreport);
  chain.push_back(difference(chain.back(), d.delta1));
  chain.push_back(unite(chain.back(), d.delta2));
  chain.push_back(difference(chain.back(), d.delta3));
  chain.push_back(unite(chain.back(), d.delta4));
  return chain;
}

/// Deterministic generator; uses raw 64-bit draws so sequences do not depend
/// on the standard library's distribution implementations.
class DeviationRng {
 public:
  explicit DeviationRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  /// A canonical set of at most `max_pieces` intervals whose endpoints share
  /// a random denominator in [1, max_den].
  IntervalSet interval_set(std::uint64_t max_den = 64, std::uint64_t max_pieces = 3) {
    const auto den = static_cast<std::int64_t>(1 + below(max_den));
    const auto pieces = 1 + below(max_pieces);
    std::vector<std::int64_t> ends;
    for (std::uint64_t i = 0; i < 2 * pieces; ++i)
      ends.push_back(static_cast<std::int64_t>(below(static_cast<std::uint64_t>(den) + 1)));
    std::sort(ends.begin(), ends.end());
    std::vector<Interval> raw;
    for (std::size_t i = 0; i + 1 < ends.size(); i += 2)
      raw.push_back({make_rational(ends[i], den), make_rational(ends[i + 1], den)});
    return IntervalSet::normalize(std::move(raw));
  }

  IntervalSet positive_interval_set(std::uint64_t max_den = 64, std::uint64_t max_pieces = 3) {
    for (;;) {
      IntervalSet s = interval_set(max_den, max_pieces);
      if (!s.empty()) return s;
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Fractions of a region's measure used by the structured single-delta moves.
inline const std::array<Rational, 2>& deviation_magnitudes() {
  static const std::array<Rational, 2> kMagnitudes{make_rational(1, 16), make_rational(1, 4)};
  return kMagnitudes;
}

/// Misreports of A against opponent demand B:
///  (i)   single-delta moves (add mass in B\A, drop mass in A n B, add mass
///        outside A u B, drop mass in A\B) at each magnitude, skipping empty
///        regions;
///  (ii)  the intermediate steps of deviation chains toward ceil(n/4) random
///        targets;
///  (iii) n random sets with denominators at most 64.
inline std::vector<IntervalSet> generate_deviations(const IntervalSet& A, const IntervalSet& B,
                                                    std::uint64_t seed, std::size_t n) {
  std::vector<IntervalSet> out;
  const IntervalSet b_only = difference(B, A);
  const IntervalSet joint = intersect(A, B);
  const IntervalSet outside = complement(unite(A, B));
  const IntervalSet a_only = difference(A, B);
  for (const auto& frac : deviation_magnitudes()) {
    if (!b_only.empty()) out.push_back(unite(A, take_from_left(b_only, frac * b_only.measure())));
    if (!joint.empty()) out.push_back(difference(A, take_from_left(joint, frac * joint.measure())));
    if (!outside.empty()) out.push_back(unite(A, take_from_left(outside, frac * outside.measure())));
    if (!a_only.empty()) out.push_back(difference(A, take_from_left(a_only, frac * a_only.measure())));
  }

  DeviationRng rng(seed);
  for (std::size_t i = 0; i < (n + 3) / 4; ++i) {
    auto chain = deviation_chain(A, rng.interval_set(), B);
    chain.pop_back();  // the truthful report itself
    for (auto& step : chain) out.push_back(std::move(step));
  }
  for (std::size_t i = 0; i < n; ++i) out.push_back(rng.interval_set());
  return out;
}

struct ICWitness {
  int player;  ///< 1 or 2: who profits from misreporting
  IntervalSet A;
  IntervalSet B;
  IntervalSet misreport;
  Allocation truthful;
  Allocation deviant;
  Rational gain;
};

struct WasteWitness {
  IntervalSet A;
  IntervalSet B;
  Allocation allocation;
  std::string reason;
};

struct ICReport {
  std::string mechanism;
  long trials = 0;
  long deviations_checked = 0;
  /// max over misreports of V(misreport outcome) - V(truthful outcome); 0
  /// when nothing was checked.
  Rational worst_gain = 0;
  /// Gains at or below this count as no violation (0 for exact mechanisms).
  Rational slack = 0;
  std::optional<ICWitness> witness;
  std::optional<WasteWitness> waste;

  bool violated() const { return witness.has_value() || waste.has_value(); }

  /// Combines two reports; the earlier report keeps precedence on ties.
  void merge(ICReport other) {
    trials += other.trials;
    if (other.deviations_checked > 0 && (deviations_checked == 0 || other.worst_gain > worst_gain))
      worst_gain = other.worst_gain;
    deviations_checked += other.deviations_checked;
    if (other.witness && (!witness || other.witness->gain > witness->gain)) witness = std::move(other.witness);
    if (!waste && other.waste) waste = std::move(other.waste);
  }
};

namespace detail {

class ICProbe {
 public:
  ICProbe(const MechanismOracle& mech, ICReport& report) : mech_(mech), report_(report) {}

  /// Queries the mechanism; records wasteful outputs and returns nullopt for them.
  std::optional<Allocation> run(const IntervalSet& A, const IntervalSet& B) {
    Allocation x = mech_(A, B);
    if (auto violation = allocation_violation(A, B, x)) {
      if (!report_.waste) report_.waste = WasteWitness{A, B, x, *violation};
      return std::nullopt;
    }
    return x;
  }

  void observe(ICWitness candidate) {
    ++report_.deviations_checked;
    if (report_.deviations_checked == 1 || candidate.gain > report_.worst_gain)
      report_.worst_gain = candidate.gain;
    if (candidate.gain > report_.slack && (!report_.witness || candidate.gain > report_.witness->gain))
      report_.witness = std::move(candidate);
  }

 private:
  const MechanismOracle& mech_;
  ICReport& report_;
};

}  // namespace detail

/// Evaluates every misreport of player I from `deviations_a` and of player II
/// from `deviations_b` against the truthful profile (A, B).
inline ICReport check_ic(const MechanismOracle& mech, const IntervalSet& A, const IntervalSet& B,
                         const std::vector<IntervalSet>& deviations_a,
                         const std::vector<IntervalSet>& deviations_b, std::string name = "mechanism",
                         Rational slack = 0) {
  if (A.measure() == 0 || B.measure() == 0)
    throw InvariantError("check_ic requires positive-measure truthful demands");
  ICReport report;
  report.mechanism = std::move(name);
  report.trials = 1;
  report.slack = std::move(slack);
  detail::ICProbe probe(mech, report);

  const auto truthful = probe.run(A, B);
  if (!truthful) return report;
  const Rational u_a = valuation(A, truthful->C);
  const Rational u_b = valuation(B, truthful->D);

  for (const auto& lie : deviations_a) {
    if (unite(lie, B).empty()) continue;
    if (auto x = probe.run(lie, B))
      probe.observe({1, A, B, lie, *truthful, *x, valuation(A, x->C) - u_a});
  }
  for (const auto& lie : deviations_b) {
    if (unite(A, lie).empty()) continue;
    if (auto x = probe.run(A, lie))
      probe.observe({2, A, B, lie, *truthful, *x, valuation(B, x->D) - u_b});
  }
  return report;
}

/// Uses the same misreport list for both players.
inline ICReport check_ic(const MechanismOracle& mech, const IntervalSet& A, const IntervalSet& B,
                         const std::vector<IntervalSet>& deviations, std::string name = "mechanism",
                         Rational slack = 0) {
  return check_ic(mech, A, B, deviations, deviations, std::move(name), std::move(slack));
}

/// `trials` seeded random truthful profiles, each checked against generated
/// misreports (structured moves plus `random_deviations` random sets) for
/// both players.
inline ICReport run_ic_suite(const MechanismOracle& mech, std::string name, std::uint64_t seed,
                             long trials, std::size_t random_deviations = 8, Rational slack = 0) {
  ICReport total;
  total.mechanism = name;
  total.slack = slack;
  DeviationRng rng(seed);
  for (long t = 0; t < trials; ++t) {
    IntervalSet A = rng.positive_interval_set();
    IntervalSet B = rng.positive_interval_set();
    const std::uint64_t dev_seed = rng.below(UINT64_MAX);
    auto devs_a = generate_deviations(A, B, dev_seed, random_deviations);
    auto devs_b = generate_deviations(B, A, dev_seed ^ 0x9e3779b97f4a7c15ULL, random_deviations);
    total.merge(check_ic(mech, A, B, devs_a, devs_b, name, slack));
  }
  return total;
}

struct EnvyFreeness {
  bool player_i;   ///< V_A(C) >= V_A(D)
  bool player_ii;  ///< V_B(D) >= V_B(C)

  bool operator==(const EnvyFreeness&) const = default;
};

inline EnvyFreeness check_envy_free(const MechanismOracle& mech, const IntervalSet& A, const IntervalSet& B) {
  const Allocation x = mech(A, B);
  return {valuation(A, x.C) >= valuation(A, x.D), valuation(B, x.D) >= valuation(B, x.C)};
}

/// Trims each piece to its owner's demand. Valuations are unchanged and a
/// Pareto-efficient allocation becomes non-wasteful.
inline Allocation pareto_convert(const IntervalSet& A, const IntervalSet& B, const IntervalSet& C,
                                 const IntervalSet& D) {
  if (!disjoint(C, D)) throw InputError("pareto_convert requires disjoint pieces");
  return {intersect(C, A), intersect(D, B)};
}

/// Reference mechanism that is non-wasteful but not truthful: the overlap is
/// split in proportion to |A| : |B|, player I taking the left part.
inline Allocation proportional_split(const IntervalSet& A, const IntervalSet& B) {
  const IntervalSet joint = intersect(A, B);
  const Rational total = A.measure() + B.measure();
  Rational share = total == 0 ? Rational(0) : Rational(joint.measure() * A.measure() / total);
  IntervalSet left = take_from_left(joint, share);
  return {unite(difference(A, B), left), unite(difference(B, A), difference(joint, left))};
}

inline MechanismOracle proportional_mechanism() { return proportional_split; }

}  // namespace cakecut
