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
 * \file cakecut/welfare.hpp
 *
 * \brief Social welfare of the aligned family, its competitive ratio, and the
 *  price-of-truthfulness bound for randomized mechanisms.
 *
 * The closed forms are templates over the scalar type: instantiate with
 * Rational for exact identities, with double wherever irrational profiles
 * (sqrt 3) or numerical minimization are involved.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cakecut/errors.hpp"
#include "cakecut/rational.hpp"

namespace cakecut {

/// Closed-form optimum shared by the deterministic and randomized bounds:
/// 1 / (8 - 4 sqrt 3).
inline constexpr double kPriceOfTruthfulness = 1.0 / (8.0 - 4.0 * std::numbers::sqrt3);
inline constexpr double kWorstShrink = 2.0 - std::numbers::sqrt3;

/// Row of the case table for theta = 1/2, determined by the order of
/// {a, 1-a, b, 1-b, 1/2}. Ties on a boundary go to the lower-numbered row in
/// the order case1, case3, case2, case4; both neighbours agree there.
enum class WelfareCase { kNoOverlap, kCase1, kCase2, kCase3, kCase4 };

inline std::string_view to_string(WelfareCase c) {
  switch (c) {
    case WelfareCase::kNoOverlap: return "none";
    case WelfareCase::kCase1: return "case1";
    case WelfareCase::kCase2: return "case2";
    case WelfareCase::kCase3: return "case3";
    case WelfareCase::kCase4: return "case4";
  }
  return "?";
}

namespace detail {

template <typename T>
void require_positive_demands(const T& a, const T& b) {
  if (!(a > 0) || !(b > 0)) throw InputError("welfare requires positive demands a and b");
}

}  // namespace detail

template <typename T>
WelfareCase welfare_case(const T& a, const T& b) {
  const T half = T(1) / 2;
  if (a + b <= 1) return WelfareCase::kNoOverlap;
  if (b <= half) return WelfareCase::kCase1;  // 1-a < b <= 1/2 <= 1-b < a
  if (a <= half) return WelfareCase::kCase3;  // 1-b < a <= 1/2 <= 1-a < b
  return b <= a ? WelfareCase::kCase2 : WelfareCase::kCase4;
}

/// Welfare c/a + d/b of f_theta at (a, b); 2 when the demands do not overlap.
template <typename T>
T sw_aligned(const T& theta, const T& a, const T& b) {
  detail::require_positive_demands(a, b);
  if (a + b <= 1) return T(2);
  const T c = std::min<T>(a, std::max<T>(1 - b, theta));
  const T d = std::min<T>(b, std::max<T>(1 - a, 1 - theta));
  return c / a + d / b;
}

/// Best achievable welfare over all aligned splits.
template <typename T>
T sw_max_aligned(const T& a, const T& b) {
  detail::require_positive_demands(a, b);
  if (a + b <= 1) return T(2);
  const T lo = std::min<T>(a, b);
  const T hi = std::max<T>(a, b);
  return 1 + (1 - lo) / hi;
}

template <typename T>
T eta(const T& theta, const T& a, const T& b) {
  return sw_aligned(theta, a, b) / sw_max_aligned(a, b);
}

/// Welfare of f_{1/2} read off the case table row for `label`.
template <typename T>
T sw_half_by_case(WelfareCase label, const T& a, const T& b) {
  switch (label) {
    case WelfareCase::kNoOverlap: return T(2);
    case WelfareCase::kCase1: return (1 - b) / a + 1;
    case WelfareCase::kCase2:
    case WelfareCase::kCase4: return 1 / (2 * a) + 1 / (2 * b);
    case WelfareCase::kCase3: return 1 + (1 - a) / b;
  }
  throw InvariantError("unknown welfare case");
}

/// Maximum welfare read off the case table row for `label`.
template <typename T>
T sw_max_by_case(WelfareCase label, const T& a, const T& b) {
  switch (label) {
    case WelfareCase::kNoOverlap: return T(2);
    case WelfareCase::kCase1:
    case WelfareCase::kCase2: return 1 + (1 - b) / a;
    case WelfareCase::kCase3:
    case WelfareCase::kCase4: return 1 + (1 - a) / b;
  }
  throw InvariantError("unknown welfare case");
}

struct WelfareReport {
  double theta;
  double a;
  double b;
  double sw_mechanism;
  double sw_max;
  double eta;
  WelfareCase label;
};

inline WelfareReport welfare_report(double theta, double a, double b) {
  WelfareReport r{theta, a, b, sw_aligned(theta, a, b), sw_max_aligned(a, b), 0.0, welfare_case(a, b)};
  r.eta = r.sw_mechanism / r.sw_max;
  return r;
}

struct RealProfile {
  double a;
  double b;
};

struct EtaMinimum {
  double value;
  RealProfile argmin;
};

namespace detail {

inline void require_theta(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw InputError("theta must lie in [0,1]");
}

/// {step, 2 step, ...} up to and including 1.
inline std::vector<double> unit_grid(double step) {
  if (!(step > 0.0)) throw InputError("grid step must be positive");
  std::vector<double> pts;
  for (long i = 1;; ++i) {
    double x = static_cast<double>(i) * step;
    if (x >= 1.0 - 1e-12) {
      pts.push_back(1.0);
      break;
    }
    pts.push_back(x);
  }
  return pts;
}

/// Ties prefer the larger a, then the smaller b, so the reported minimizer of
/// the symmetric theta = 1/2 landscape is the b < a copy.
inline bool improves(double v, double a, double b, const EtaMinimum& best) {
  if (v != best.value) return v < best.value;
  if (a != best.argmin.a) return a > best.argmin.a;
  return b < best.argmin.b;
}

}  // namespace detail

/// Minimum of eta(theta, ., .) over the overlap region a + b > 1 of (0,1]^2:
/// a full grid scan followed by `refine_iters` rounds, each rescanning a
/// 21 x 21 window around the incumbent at a tenth of the previous spacing.
inline EtaMinimum eta_min(double theta, double grid_step, int refine_iters) {
  detail::require_theta(theta);
  if (refine_iters < 0) throw InputError("refine_iters must be non-negative");
  EtaMinimum best{INFINITY, {0.0, 0.0}};
  auto visit = [&](double a, double b) {
    if (a <= 0.0 || b <= 0.0 || a + b <= 1.0) return;
    double v = eta(theta, a, b);
    if (detail::improves(v, a, b, best)) best = {v, {a, b}};
  };

  const auto grid = detail::unit_grid(grid_step);
  for (double a : grid)
    for (double b : grid) visit(a, b);

  double h = grid_step;
  for (int round = 0; round < refine_iters; ++round) {
    h /= 10.0;
    const RealProfile centre = best.argmin;
    for (int i = -10; i <= 10; ++i) {
      double a = std::min(1.0, centre.a + i * h);
      for (int j = -10; j <= 10; ++j) visit(a, std::min(1.0, centre.b + j * h));
    }
  }
  return best;
}

struct ThetaSweepRow {
  double theta;
  EtaMinimum minimum;
  double probe_high_a;  ///< eta at (1, sqrt3 - 1)
  double probe_high_b;  ///< eta at (sqrt3 - 1, 1)
};

inline std::vector<ThetaSweepRow> theta_sweep(double grid_step_theta, double grid_step_ab,
                                              int refine_iters = 6) {
  if (!(grid_step_theta > 0.0)) throw InputError("theta grid step must be positive");
  constexpr double kProbe = std::numbers::sqrt3 - 1.0;
  std::vector<ThetaSweepRow> rows;
  std::vector<double> thetas{0.0};
  for (double t : detail::unit_grid(grid_step_theta)) thetas.push_back(t);
  for (double theta : thetas) {
    rows.push_back({theta, eta_min(theta, grid_step_ab, refine_iters), eta(theta, 1.0, kProbe),
                    eta(theta, kProbe, 1.0)});
  }
  return rows;
}

/// Upper bound on the competitive ratio of any truthful mechanism, possibly
/// randomized, whose expected full-cake share for the smaller player is p,
/// witnessed by the demand [0, 1 - tau] against [0, 1].
inline double randomized_pot_bound(double p, double tau) {
  if (!(p >= 0.0 && p <= 0.5)) throw InputError("p must lie in [0, 1/2]");
  if (!(tau >= 0.0)) throw InputError("tau must be non-negative");
  if (!(tau < 1.0)) throw InputError("tau must be below 1");
  return (p / (1.0 - tau) + 1.0 - p) / (1.0 + tau);
}

struct PotMinimum {
  double tau_star;
  double bound;
};

/// Minimizes randomized_pot_bound(p, .) over tau in [0, tau_max] by a grid of
/// spacing `resolution` and `refine_iters` rounds of tenfold refinement.
inline PotMinimum minimize_pot_bound(double p, double resolution, int refine_iters = 6,
                                     double tau_max = 0.99) {
  if (!(resolution > 0.0)) throw InputError("resolution must be positive");
  if (!(tau_max >= 0.0 && tau_max < 1.0)) throw InputError("tau_max must lie in [0,1)");
  if (refine_iters < 0) throw InputError("refine_iters must be non-negative");
  PotMinimum best{0.0, randomized_pot_bound(p, 0.0)};
  auto visit = [&](double tau) {
    tau = std::clamp(tau, 0.0, tau_max);
    double v = randomized_pot_bound(p, tau);
    if (v < best.bound || (v == best.bound && tau < best.tau_star)) best = {tau, v};
  };
  for (long i = 0;; ++i) {
    double tau = static_cast<double>(i) * resolution;
    if (tau >= tau_max) {
      visit(tau_max);
      break;
    }
    visit(tau);
  }
  double h = resolution;
  for (int round = 0; round < refine_iters; ++round) {
    h /= 10.0;
    const double centre = best.tau_star;
    for (int i = -10; i <= 10; ++i) visit(centre + i * h);
  }
  return best;
}

/// Every grid profile (a, b) in (0,1]^2 for a fixed theta, row-major in a.
inline std::vector<WelfareReport> welfare_sweep(double theta, double grid_step) {
  detail::require_theta(theta);
  std::vector<WelfareReport> out;
  const auto grid = detail::unit_grid(grid_step);
  out.reserve(grid.size() * grid.size());
  for (double a : grid)
    for (double b : grid) out.push_back(welfare_report(theta, a, b));
  return out;
}

/// Nine significant digits, the CSV/JSON convention for reals.
inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

inline void write_welfare_csv(std::ostream& os, const std::vector<WelfareReport>& rows) {
  os << "theta,a,b,sw_mech,sw_max,eta,case\n";
  for (const auto& r : rows) {
    os << format_real(r.theta) << ',' << format_real(r.a) << ',' << format_real(r.b) << ','
       << format_real(r.sw_mechanism) << ',' << format_real(r.sw_max) << ',' << format_real(r.eta)
       << ',' << to_string(r.label) << '\n';
  }
}

inline void write_theta_sweep_csv(std::ostream& os, const std::vector<ThetaSweepRow>& rows) {
  os << "theta,eta_min,argmin_a,argmin_b,eta_probe_1_sqrt3m1,eta_probe_sqrt3m1_1\n";
  for (const auto& r : rows) {
    os << format_real(r.theta) << ',' << format_real(r.minimum.value) << ','
       << format_real(r.minimum.argmin.a) << ',' << format_real(r.minimum.argmin.b) << ','
       << format_real(r.probe_high_a) << ',' << format_real(r.probe_high_b) << '\n';
  }
}

}  // namespace cakecut
