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
 * \file cakecut/interval_set.hpp
 *
 * \brief Exact algebra of finite unions of half-open intervals in [0,1].
 *
 * Every IntervalSet is kept in canonical form: pieces [lo, hi) with
 * 0 <= lo < hi <= 1, sorted, pairwise disjoint and non-adjacent. Two sets are
 * therefore equal as point sets iff their piece lists are equal, and the
 * measure of a set is the exact sum of its piece lengths.
 */

#pragma once

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cakecut/errors.hpp"
#include "cakecut/rational.hpp"

namespace cakecut {

struct Interval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

class IntervalSet {
 public:
  /// The empty set.
  IntervalSet() = default;

  /// Canonicalizes arbitrary pieces: sorts, merges overlapping or adjacent
  /// pieces and drops empty ones. Throws InputError if an endpoint lies
  /// outside [0,1] or lo > hi.
  static IntervalSet normalize(std::vector<Interval> raw) {
    for (const auto& iv : raw) {
      if (iv.lo < 0 || iv.hi > 1)
        throw InputError("interval endpoint outside [0,1]: [" + to_string(iv.lo) + ", " +
                         to_string(iv.hi) + ")");
      if (iv.lo > iv.hi)
        throw InputError("interval with lo > hi: [" + to_string(iv.lo) + ", " +
                         to_string(iv.hi) + ")");
    }
    std::erase_if(raw, [](const Interval& iv) { return iv.lo == iv.hi; });
    std::sort(raw.begin(), raw.end(),
              [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    IntervalSet out;
    for (auto& iv : raw) {
      if (!out.pieces_.empty() && iv.lo <= out.pieces_.back().hi) {
        if (iv.hi > out.pieces_.back().hi) out.pieces_.back().hi = iv.hi;
      } else {
        out.pieces_.push_back(std::move(iv));
      }
    }
    return out;
  }

  static IntervalSet normalize(const std::vector<std::pair<Rational, Rational>>& raw) {
    std::vector<Interval> pieces;
    pieces.reserve(raw.size());
    for (const auto& [lo, hi] : raw) pieces.push_back({lo, hi});
    return normalize(std::move(pieces));
  }

  static IntervalSet interval(const Rational& lo, const Rational& hi) {
    return normalize(std::vector<Interval>{{lo, hi}});
  }

  static IntervalSet full() { return interval(Rational(0), Rational(1)); }

  const std::vector<Interval>& intervals() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  std::size_t size() const { return pieces_.size(); }

  Rational measure() const {
    Rational total = 0;
    for (const auto& iv : pieces_) total += iv.length();
    return total;
  }

  bool contains(const Rational& x) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](const Rational& v, const Interval& iv) { return v < iv.lo; });
    if (it == pieces_.begin()) return false;
    --it;
    return x < it->hi;
  }

  bool operator==(const IntervalSet&) const = default;

  /// Pointwise boolean combination of two canonical sets. The result is
  /// canonical by construction.
  template <typename Predicate>
  static IntervalSet combine(const IntervalSet& s, const IntervalSet& t, Predicate keep) {
    std::vector<Rational> cuts;
    cuts.reserve(2 * (s.size() + t.size()) + 2);
    cuts.emplace_back(0);
    cuts.emplace_back(1);
    for (const auto* set : {&s, &t}) {
      for (const auto& iv : set->pieces_) {
        cuts.push_back(iv.lo);
        cuts.push_back(iv.hi);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    IntervalSet out;
    std::size_t i = 0, j = 0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const Rational& x = cuts[k];
      while (i < s.size() && s.pieces_[i].hi <= x) ++i;
      while (j < t.size() && t.pieces_[j].hi <= x) ++j;
      bool in_s = i < s.size() && s.pieces_[i].lo <= x;
      bool in_t = j < t.size() && t.pieces_[j].lo <= x;
      if (!keep(in_s, in_t)) continue;
      if (!out.pieces_.empty() && out.pieces_.back().hi == x)
        out.pieces_.back().hi = cuts[k + 1];
      else
        out.pieces_.push_back({x, cuts[k + 1]});
    }
    return out;
  }

 private:
  std::vector<Interval> pieces_;
};

inline IntervalSet unite(const IntervalSet& s, const IntervalSet& t) {
  return IntervalSet::combine(s, t, [](bool x, bool y) { return x || y; });
}

inline IntervalSet intersect(const IntervalSet& s, const IntervalSet& t) {
  return IntervalSet::combine(s, t, [](bool x, bool y) { return x && y; });
}

inline IntervalSet difference(const IntervalSet& s, const IntervalSet& t) {
  return IntervalSet::combine(s, t, [](bool x, bool y) { return x && !y; });
}

inline IntervalSet symmetric_difference(const IntervalSet& s, const IntervalSet& t) {
  return IntervalSet::combine(s, t, [](bool x, bool y) { return x != y; });
}

/// Complement within [0,1].
inline IntervalSet complement(const IntervalSet& s) {
  return IntervalSet::combine(s, IntervalSet{}, [](bool x, bool) { return !x; });
}

inline Rational measure(const IntervalSet& s) { return s.measure(); }

inline bool is_subset(const IntervalSet& s, const IntervalSet& t) {
  return difference(s, t).empty();
}

inline bool disjoint(const IntervalSet& s, const IntervalSet& t) {
  return intersect(s, t).empty();
}

inline IntervalSet operator|(const IntervalSet& s, const IntervalSet& t) { return unite(s, t); }
inline IntervalSet operator&(const IntervalSet& s, const IntervalSet& t) { return intersect(s, t); }
inline IntervalSet operator-(const IntervalSet& s, const IntervalSet& t) { return difference(s, t); }

namespace detail {

inline void check_take(const IntervalSet& s, const Rational& m) {
  if (m < 0) throw InputError("cannot take negative mass " + to_string(m));
  if (m > s.measure())
    throw InputError("cannot take mass " + to_string(m) + " from a set of measure " +
                     to_string(s.measure()));
}

}  // namespace detail

/// The leftmost sub-piece of `s` with measure exactly `m`.
inline IntervalSet take_from_left(const IntervalSet& s, const Rational& m) {
  detail::check_take(s, m);
  std::vector<Interval> out;
  Rational remaining = m;
  for (const auto& iv : s.intervals()) {
    if (remaining == 0) break;
    if (iv.length() <= remaining) {
      out.push_back(iv);
      remaining -= iv.length();
    } else {
      out.push_back({iv.lo, iv.lo + remaining});
      remaining = 0;
    }
  }
  return IntervalSet::normalize(std::move(out));
}

/// The rightmost sub-piece of `s` with measure exactly `m`.
inline IntervalSet take_from_right(const IntervalSet& s, const Rational& m) {
  detail::check_take(s, m);
  std::vector<Interval> out;
  Rational remaining = m;
  const auto& pieces = s.intervals();
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
    if (remaining == 0) break;
    if (it->length() <= remaining) {
      out.push_back(*it);
      remaining -= it->length();
    } else {
      out.push_back({it->hi - remaining, it->hi});
      remaining = 0;
    }
  }
  return IntervalSet::normalize(std::move(out));
}

/// Uniform valuation of a player demanding `demand` for piece `piece`:
/// |piece ∩ demand| / |demand|.
inline Rational valuation(const IntervalSet& demand, const IntervalSet& piece) {
  Rational total = demand.measure();
  if (total == 0) throw InvariantError("valuation of a zero-measure demand is undefined");
  return intersect(piece, demand).measure() / total;
}

namespace detail {

inline std::string pretty(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
  return to_string(r);
}

}  // namespace detail

inline std::string to_string(const IntervalSet& s) {
  if (s.empty()) return "{}";
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& iv : s.intervals()) {
    if (!first) os << ", ";
    first = false;
    os << '[' << detail::pretty(iv.lo) << ", " << detail::pretty(iv.hi) << ')';
  }
  os << '}';
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const IntervalSet& s) { return os << to_string(s); }

}  // namespace cakecut
