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
 * \file cakecut/json_io.hpp
 *
 * \brief JSON wire formats.
 *
 * Rationals travel as "p/q" strings (a bare integer, as string or JSON
 * number, is accepted on input). An IntervalSet is
 * {"intervals": [["lo","hi"], ...]}; decoding canonicalizes.
 */

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "cakecut/aligned_mechanism.hpp"
#include "cakecut/errors.hpp"
#include "cakecut/general_mechanism.hpp"
#include "cakecut/ic_verifier.hpp"
#include "cakecut/interval_set.hpp"
#include "cakecut/rational.hpp"
#include "cakecut/reductions.hpp"

namespace cakecut {

using Json = nlohmann::json;

inline Json rational_to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw InputError("expected a rational as \"p/q\", got " + j.dump());
}

inline void to_json(Json& j, const IntervalSet& s) {
  Json pieces = Json::array();
  for (const auto& iv : s.intervals()) pieces.push_back({to_string(iv.lo), to_string(iv.hi)});
  j = Json{{"intervals", std::move(pieces)}};
}

inline void from_json(const Json& j, IntervalSet& s) {
  if (!j.is_object() || !j.contains("intervals") || !j.at("intervals").is_array())
    throw InputError("interval set must be an object with an \"intervals\" array");
  std::vector<Interval> raw;
  for (const auto& piece : j.at("intervals")) {
    if (!piece.is_array() || piece.size() != 2)
      throw InputError("each interval must be a [lo, hi] pair, got " + piece.dump());
    raw.push_back({rational_from_json(piece[0]), rational_from_json(piece[1])});
  }
  s = IntervalSet::normalize(std::move(raw));
}

inline void to_json(Json& j, const Allocation& x) { j = Json{{"C", x.C}, {"D", x.D}}; }

inline void from_json(const Json& j, Allocation& x) {
  if (!j.is_object() || !j.contains("C") || !j.contains("D"))
    throw InputError("allocation must be an object with \"C\" and \"D\"");
  x.C = j.at("C").get<IntervalSet>();
  x.D = j.at("D").get<IntervalSet>();
}

/// Parses text holding one IntervalSet; InputError on any malformation.
inline IntervalSet parse_interval_set(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return j.get<IntervalSet>();
}

inline Json to_json(const RatioTuple& t) {
  return {{"alpha", rational_to_json(t.alpha)},
          {"beta", rational_to_json(t.beta)},
          {"gamma", rational_to_json(t.gamma)},
          {"delta", rational_to_json(t.delta)}};
}

inline Json to_json(const WitnessTrace& trace) {
  Json queries = Json::array();
  for (const auto& q : trace.queries)
    queries.push_back({{"label", q.label}, {"A", q.A}, {"B", q.B}, {"result", q.result}});
  Json sets = Json::object();
  for (const auto& [name, s] : trace.sets) sets[name] = s;
  return {{"construction", trace.construction}, {"queries", std::move(queries)}, {"sets", std::move(sets)}};
}

inline Json to_json(const NotInFamily& n) {
  Json j{{"reason", to_string(n.reason)},
         {"detail", n.detail},
         {"profile", {{"a", rational_to_json(n.profile.a)}, {"b", rational_to_json(n.profile.b)}}},
         {"observed", {{"c", rational_to_json(n.observed.c)}, {"d", rational_to_json(n.observed.d)}}},
         {"expected", nullptr}};
  if (n.expected)
    j["expected"] = {{"c", rational_to_json(n.expected->c)}, {"d", rational_to_json(n.expected->d)}};
  return j;
}

inline Json to_json(const ICReport& r) {
  Json j{{"mechanism", r.mechanism},
         {"trials", r.trials},
         {"deviations_checked", r.deviations_checked},
         {"worst_gain", rational_to_json(r.worst_gain)},
         {"slack", rational_to_json(r.slack)},
         {"witness", nullptr},
         {"waste", nullptr}};
  if (r.witness) {
    const auto& w = *r.witness;
    j["witness"] = {{"player", w.player}, {"A", w.A},           {"B", w.B},
                    {"misreport", w.misreport}, {"truthful", w.truthful}, {"deviant", w.deviant},
                    {"gain", rational_to_json(w.gain)}};
  }
  if (r.waste) {
    const auto& w = *r.waste;
    j["waste"] = {{"A", w.A}, {"B", w.B}, {"allocation", w.allocation}, {"reason", w.reason}};
  }
  return j;
}

}  // namespace cakecut
