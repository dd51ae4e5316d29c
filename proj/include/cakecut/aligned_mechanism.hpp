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
 * \file cakecut/aligned_mechanism.hpp
 *
 * \brief The one-parameter family of truthful, non-wasteful mechanisms for
 *  the aligned model.
 *
 * In the aligned model player I demands [0,a] and player II demands [1-b,1];
 * allocations are [0,c] and [1-d,1]. Every deterministic, non-wasteful and
 * incentive-compatible mechanism has the form
 *
 *   c(a,b) = min{a, max{1-b, theta}},   d(a,b) = min{b, max{1-a, 1-theta}}
 *
 * for a single theta in [0,1]; theta is the share player I gets when both
 * players demand the whole cake.
 */

#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cakecut/errors.hpp"
#include "cakecut/rational.hpp"

namespace cakecut {

class Theta {
 public:
  explicit Theta(Rational value) : value_(std::move(value)) {
    if (value_ < 0 || value_ > 1) throw InputError("theta must lie in [0,1], got " + to_string(value_));
  }

  const Rational& value() const { return value_; }
  bool operator==(const Theta&) const = default;

 private:
  Rational value_;
};

struct AlignedProfile {
  Rational a;  ///< player I demands [0,a]
  Rational b;  ///< player II demands [1-b,1]

  AlignedProfile(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {
    if (a < 0 || a > 1 || b < 0 || b > 1)
      throw InputError("aligned demands must lie in [0,1], got (" + to_string(a) + ", " +
                       to_string(b) + ")");
  }
  bool operator==(const AlignedProfile&) const = default;
};

struct AlignedAllocation {
  Rational c;  ///< player I receives [0,c]
  Rational d;  ///< player II receives [1-d,1]

  bool operator==(const AlignedAllocation&) const = default;
};

inline Rational mu(const Theta& theta, const Rational& b) {
  return std::max(Rational(1 - b), theta.value());
}

inline Rational nu(const Theta& theta, const Rational& a) {
  return std::max(Rational(1 - a), Rational(1 - theta.value()));
}

/// Allocation of the family member indexed by `theta`.
inline AlignedAllocation f_theta(const Theta& theta, const AlignedProfile& p) {
  return {std::min(p.a, mu(theta, p.b)), std::min(p.b, nu(theta, p.a))};
}

using AlignedOracle = std::function<AlignedAllocation(const AlignedProfile&)>;

inline AlignedOracle family_oracle(const Theta& theta) {
  return [theta](const AlignedProfile& p) { return f_theta(theta, p); };
}

/// Why an aligned oracle is not a member of the family.
struct NotInFamily {
  enum class Reason { kWasteful, kFormMismatch };

  Reason reason;
  AlignedProfile profile;
  AlignedAllocation observed;
  /// Family prediction at `profile` for the recovered theta; absent when the
  /// oracle was wasteful at the (1,1) probe and no theta could be recovered.
  std::optional<AlignedAllocation> expected;
  std::string detail;
};

inline std::string to_string(NotInFamily::Reason r) {
  return r == NotInFamily::Reason::kWasteful ? "wasteful" : "not_in_family";
}

using Characterization = std::variant<Theta, NotInFamily>;

/// Empty when the allocation is feasible and non-wasteful for the profile,
/// otherwise a description of the violated constraint.
inline std::optional<std::string> aligned_waste(const AlignedProfile& p, const AlignedAllocation& x) {
  if (x.c < 0 || x.d < 0) return "negative allocation";
  if (x.c > p.a) return "player I receives more than demanded (c > a)";
  if (x.d > p.b) return "player II receives more than demanded (d > b)";
  if (x.c + x.d > 1) return "allocations overlap (c + d > 1)";
  if (x.c + x.d < std::min(Rational(p.a + p.b), Rational(1)))
    return "demanded cake left unallocated (c + d < min{a+b, 1})";
  return std::nullopt;
}

namespace detail {

inline std::vector<Rational> probe_grid(const Rational& step, const Rational& theta_hat) {
  if (step <= 0) throw InputError("grid step must be positive");
  std::vector<Rational> grid;
  for (Rational x = 0; x <= 1; x += step) grid.push_back(x);
  grid.emplace_back(1);
  grid.push_back(theta_hat);
  grid.emplace_back(1 - theta_hat);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace detail

/// Decides whether a black-box aligned mechanism belongs to the family.
///
/// theta is recovered from the (1,1) probe, then every profile on the grid
/// {0, step, ..., 1} (augmented with theta and 1-theta, the breakpoints of the
/// family) is compared exactly against f_theta. The first offending profile in
/// lexicographic (a, b) order is reported.
inline Characterization characterize(const AlignedOracle& oracle, const Rational& grid_step) {
  if (grid_step <= 0) throw InputError("grid step must be positive");
  const AlignedProfile corner{Rational(1), Rational(1)};
  const AlignedAllocation at_corner = oracle(corner);
  if (auto waste = aligned_waste(corner, at_corner))
    return NotInFamily{NotInFamily::Reason::kWasteful, corner, at_corner, std::nullopt, *waste};
  const Theta theta_hat{at_corner.c};

  const auto grid = detail::probe_grid(grid_step, theta_hat.value());
  for (const auto& a : grid) {
    for (const auto& b : grid) {
      AlignedProfile p{a, b};
      AlignedAllocation got = oracle(p);
      AlignedAllocation want = f_theta(theta_hat, p);
      if (auto waste = aligned_waste(p, got))
        return NotInFamily{NotInFamily::Reason::kWasteful, p, got, want, *waste};
      if (got != want)
        return NotInFamily{NotInFamily::Reason::kFormMismatch, p, got, want,
                           "allocation differs from the family member theta = " +
                               to_string(theta_hat.value())};
    }
  }
  return theta_hat;
}

}  // namespace cakecut
