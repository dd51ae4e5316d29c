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
 * \file cakecut/reductions.hpp
 *
 * \brief Moving between the general and the aligned model.
 *
 * Both directions preserve the ratio tuple (|A|, |B|, |C|, |D|) / |A u B|.
 * The general -> aligned direction treats the general mechanism as a black
 * box: one query on ([0,1],[0,1]) fixes theta, and witness_pair builds
 * concrete demands that make the black box reproduce any aligned profile,
 * checking every answer it relies on along the way.
 */

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cakecut/aligned_mechanism.hpp"
#include "cakecut/errors.hpp"
#include "cakecut/general_mechanism.hpp"
#include "cakecut/interval_set.hpp"

namespace cakecut {

struct RatioTuple {
  Rational alpha;  ///< |A| / |A u B|
  Rational beta;   ///< |B| / |A u B|
  Rational gamma;  ///< |C| / |A u B|
  Rational delta;  ///< |D| / |A u B|

  bool operator==(const RatioTuple&) const = default;
};

inline RatioTuple ratio_tuple(const IntervalSet& A, const IntervalSet& B, const IntervalSet& C,
                              const IntervalSet& D) {
  const Rational whole = unite(A, B).measure();
  if (whole == 0) throw InvariantError("ratio tuple undefined for a zero-measure union");
  return {A.measure() / whole, B.measure() / whole, C.measure() / whole, D.measure() / whole};
}

inline RatioTuple ratio_tuple(const IntervalSet& A, const IntervalSet& B, const Allocation& x) {
  return ratio_tuple(A, B, x.C, x.D);
}

struct OracleQuery {
  std::string label;
  IntervalSet A;
  IntervalSet B;
  Allocation result;
};

struct WitnessTrace {
  std::string construction;  ///< "disjoint", "both_exceed", "a_within_c", "b_within_d"
  std::vector<OracleQuery> queries;
  std::vector<std::pair<std::string, IntervalSet>> sets;
};

/// The oracle answered in a way no non-wasteful truthful mechanism can.
class OracleViolation : public InvariantError {
 public:
  OracleViolation(const std::string& what, WitnessTrace trace)
      : InvariantError(what), trace_(std::move(trace)) {}
  const WitnessTrace& trace() const { return trace_; }

 private:
  WitnessTrace trace_;
};

/// The aligned mechanism induced by a general one: f_{|C~|} where
/// (C~, D~) = F([0,1], [0,1]).
struct DerivedAligned {
  Theta theta;
  Allocation probe;

  AlignedAllocation operator()(const AlignedProfile& p) const { return f_theta(theta, p); }
};

inline DerivedAligned derive_aligned(const MechanismOracle& mechanism) {
  const IntervalSet cake = IntervalSet::full();
  Allocation probe = mechanism(cake, cake);
  if (auto violation = allocation_violation(cake, cake, probe)) {
    WitnessTrace trace{"probe", {{"F([0,1],[0,1])", cake, cake, probe}}, {}};
    throw OracleViolation("mechanism is wasteful on the full-cake probe: " + *violation +
                              " (|C~| = " + to_string(probe.C.measure()) +
                              ", |D~| = " + to_string(probe.D.measure()) + ")",
                          std::move(trace));
  }
  Theta theta{probe.C.measure()};
  return {std::move(theta), std::move(probe)};
}

struct WitnessPair {
  IntervalSet A;
  IntervalSet B;
  WitnessTrace trace;
};

namespace detail {

class WitnessBuilder {
 public:
  explicit WitnessBuilder(const MechanismOracle& mechanism) : mechanism_(mechanism) {}

  Allocation query(std::string label, const IntervalSet& A, const IntervalSet& B) {
    Allocation x = mechanism_(A, B);
    trace_.queries.push_back({std::move(label), A, B, x});
    if (auto violation = allocation_violation(A, B, x))
      fail("oracle allocation is wasteful: " + *violation);
    return x;
  }

  void record(std::string name, const IntervalSet& s) { trace_.sets.emplace_back(std::move(name), s); }

  void expect_size(const std::string& what, const Rational& got, const Rational& want) {
    if (got != want)
      fail(what + " has measure " + to_string(got) + " but truthfulness and non-wastefulness force " +
           to_string(want));
  }

  [[noreturn]] void fail(const std::string& what) { throw OracleViolation(what, trace_); }

  WitnessTrace& trace() { return trace_; }

 private:
  const MechanismOracle& mechanism_;
  WitnessTrace trace_;
};

}  // namespace detail

/// Demands (A, B) with |A| = a and |B| = b on which `mechanism` allocates
/// exactly the sizes of its derived aligned mechanism at (a, b). When a + b >= 1
/// the returned demands cover [0,1].
///
/// Underdetermined set choices ("a set of size a containing X") are resolved
/// by extending X with the leftmost mass of its complement.
inline WitnessPair witness_pair(const MechanismOracle& mechanism, const Rational& a, const Rational& b) {
  const AlignedProfile profile{a, b};  // validates the range
  const IntervalSet cake = IntervalSet::full();
  detail::WitnessBuilder w(mechanism);

  if (a + b <= 1) {
    w.trace().construction = "disjoint";
    IntervalSet A = IntervalSet::interval(0, a);
    IntervalSet B = IntervalSet::interval(1 - b, 1);
    w.record("A", A);
    w.record("B", B);
    if (!unite(A, B).empty()) {
      Allocation x = w.query("F(A,B)", A, B);
      w.expect_size("C(A,B)", x.C.measure(), a);
      w.expect_size("D(A,B)", x.D.measure(), b);
    }
    return {std::move(A), std::move(B), std::move(w.trace())};
  }

  Allocation probe = w.query("F([0,1],[0,1])", cake, cake);
  const Theta theta{probe.C.measure()};
  const AlignedAllocation target = f_theta(theta, profile);
  const Rational c_tilde = probe.C.measure();
  const Rational d_tilde = probe.D.measure();
  w.record("C~", probe.C);
  w.record("D~", probe.D);

  IntervalSet A, B;
  if (a > c_tilde && b > d_tilde) {
    w.trace().construction = "both_exceed";
    IntervalSet A1 = unite(probe.C, take_from_left(complement(probe.C), a - c_tilde));
    w.record("A1", A1);
    Allocation first = w.query("F(A1,[0,1])", A1, cake);
    w.expect_size("C1 = C(A1,[0,1])", first.C.measure(), c_tilde);
    IntervalSet D1 = complement(first.C);
    w.record("D1", D1);
    IntervalSet B2 = unite(D1, take_from_left(complement(D1), b - D1.measure()));
    w.record("B2", B2);
    A = std::move(A1);
    B = std::move(B2);
  } else if (a <= c_tilde) {
    w.trace().construction = "a_within_c";
    IntervalSet A1 = take_from_left(probe.C, a);
    w.record("A1", A1);
    Allocation first = w.query("F(A1,[0,1])", A1, cake);
    w.expect_size("C1 = C(A1,[0,1])", first.C.measure(), a);
    IntervalSet D1 = complement(A1);
    w.record("D1", D1);
    IntervalSet B2 = unite(D1, take_from_left(A1, b - D1.measure()));
    w.record("B2", B2);
    A = std::move(A1);
    B = std::move(B2);
  } else {
    w.trace().construction = "b_within_d";
    IntervalSet B1 = take_from_left(probe.D, b);
    w.record("B1", B1);
    Allocation first = w.query("F([0,1],B1)", cake, B1);
    w.expect_size("D1 = D([0,1],B1)", first.D.measure(), b);
    IntervalSet C1 = complement(B1);
    w.record("C1", C1);
    IntervalSet A2 = unite(C1, take_from_left(B1, a - C1.measure()));
    w.record("A2", A2);
    A = std::move(A2);
    B = std::move(B1);
  }

  if (unite(A, B) != cake) w.fail("witness demands do not cover [0,1]");
  Allocation last = w.query("F(A,B)", A, B);
  w.expect_size("C(A,B)", last.C.measure(), target.c);
  w.expect_size("D(A,B)", last.D.measure(), target.d);
  return {std::move(A), std::move(B), std::move(w.trace())};
}

/// Views a general mechanism through the aligned model: (a, b) is sent as
/// ([0,a], [1-b,1]) and the answer is read back by measure.
inline AlignedOracle aligned_view(MechanismOracle mechanism) {
  return [mechanism = std::move(mechanism)](const AlignedProfile& p) -> AlignedAllocation {
    IntervalSet A = IntervalSet::interval(0, p.a);
    IntervalSet B = IntervalSet::interval(1 - p.b, 1);
    if (A.empty() && B.empty()) return {Rational(0), Rational(0)};
    Allocation x = mechanism(A, B);
    return {x.C.measure(), x.D.measure()};
  };
}

}  // namespace cakecut
