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
 * \file cakecut/general_mechanism.hpp
 *
 * \brief Truthful mechanism for arbitrary interval-union demands, obtained by
 *  normalizing the demands to the aligned model and scaling the aligned
 *  allocation back.
 *
 * Sizes: |C| = min{|A|, max{|A\B|, theta |A u B|}} and symmetrically for D.
 * Positions: each player first receives the part only they demanded; in the
 * joint area A n B player I takes the leftmost mass and player II the
 * rightmost.
 */

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "cakecut/aligned_mechanism.hpp"
#include "cakecut/errors.hpp"
#include "cakecut/interval_set.hpp"

namespace cakecut {

struct DemandPair {
  IntervalSet A;
  IntervalSet B;

  DemandPair(IntervalSet a, IntervalSet b) : A(std::move(a)), B(std::move(b)) {
    if (A.measure() == 0) throw InvariantError("demand A must have positive measure");
    if (B.measure() == 0) throw InvariantError("demand B must have positive measure");
  }
};

struct Allocation {
  IntervalSet C;  ///< player I's piece
  IntervalSet D;  ///< player II's piece

  bool operator==(const Allocation&) const = default;
};

/// A general-model mechanism (A, B) -> (C, D), possibly a black box.
using MechanismOracle = std::function<Allocation(const IntervalSet&, const IntervalSet&)>;

/// Empty if `x` is a disjoint, non-wasteful allocation for demands (A, B);
/// otherwise names the first violated invariant.
inline std::optional<std::string> allocation_violation(const IntervalSet& A, const IntervalSet& B,
                                                       const Allocation& x) {
  if (!disjoint(x.C, x.D)) return "C and D intersect";
  if (!is_subset(x.C, A)) return "C is not contained in A";
  if (!is_subset(x.D, B)) return "D is not contained in B";
  if (unite(x.C, x.D) != unite(A, B)) return "C u D differs from A u B";
  return std::nullopt;
}

/// (|C|, |D|) for the family member `theta`. Throws InvariantError if the
/// union of the demands has zero measure.
inline std::pair<Rational, Rational> allocation_sizes(const Theta& theta, const IntervalSet& A,
                                                      const IntervalSet& B) {
  const Rational whole = unite(A, B).measure();
  if (whole == 0) throw InvariantError("demands have a zero-measure union");
  const Rational only_a = difference(A, B).measure();
  const Rational only_b = difference(B, A).measure();
  Rational size_c = std::min(A.measure(), std::max(only_a, Rational(theta.value() * whole)));
  Rational size_d = std::min(B.measure(), std::max(only_b, Rational((1 - theta.value()) * whole)));
  if (size_c + size_d != whole)
    throw InvariantError("allocation sizes " + to_string(size_c) + " + " + to_string(size_d) +
                         " do not cover |A u B| = " + to_string(whole));
  return {std::move(size_c), std::move(size_d)};
}

inline std::pair<Rational, Rational> allocation_sizes(const Theta& theta, const DemandPair& dp) {
  return allocation_sizes(theta, dp.A, dp.B);
}

inline Allocation allocate(const Theta& theta, const IntervalSet& A, const IntervalSet& B) {
  const auto [size_c, size_d] = allocation_sizes(theta, A, B);
  const IntervalSet joint = intersect(A, B);
  const IntervalSet only_a = difference(A, B);
  const IntervalSet only_b = difference(B, A);
  Allocation out{unite(only_a, take_from_left(joint, size_c - only_a.measure())),
                 unite(only_b, take_from_right(joint, size_d - only_b.measure()))};
  if (auto violation = allocation_violation(A, B, out))
    throw InvariantError("allocate produced an invalid allocation: " + *violation);
  return out;
}

inline Allocation allocate(const Theta& theta, const DemandPair& dp) {
  return allocate(theta, dp.A, dp.B);
}

inline MechanismOracle family_mechanism(const Theta& theta) {
  return [theta](const IntervalSet& A, const IntervalSet& B) { return allocate(theta, A, B); };
}

}  // namespace cakecut
