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

#include "cakecut/ic_verifier.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace cakecut {
namespace {

using testing::R;
using testing::S;

const Theta kHalf{make_rational(1, 2)};

TEST(DeltaDecompositionTest, Examples) {
  const auto same = delta_decompose(S({{"0", "1/2"}}), S({{"0", "1/2"}}), S({{"1/4", "1"}}));
  EXPECT_TRUE(same.delta1.empty() && same.delta2.empty() && same.delta3.empty() && same.delta4.empty());

  const auto shifted = delta_decompose(S({{"0", "1/2"}}), S({{"1/4", "3/4"}}), S({{"1/2", "1"}}));
  EXPECT_EQ(shifted.delta1, S({{"1/2", "3/4"}}));
  EXPECT_TRUE(shifted.delta2.empty());
  EXPECT_TRUE(shifted.delta3.empty());
  EXPECT_EQ(shifted.delta4, S({{"0", "1/4"}}));

  const auto withdrawn = delta_decompose(IntervalSet::full(), IntervalSet{}, S({{"0", "1/2"}}));
  EXPECT_TRUE(withdrawn.delta1.empty());
  EXPECT_EQ(withdrawn.delta2, S({{"0", "1/2"}}));
  EXPECT_TRUE(withdrawn.delta3.empty());
  EXPECT_EQ(withdrawn.delta4, S({{"1/2", "1"}}));
}

TEST(DeltaDecompositionTest, ChainExamples) {
  const auto A = S({{"0", "1/2"}});
  const auto chain = deviation_chain(A, S({{"1/4", "3/4"}}), S({{"1/2", "1"}}));
  ASSERT_EQ(chain.size(), 5u);
  EXPECT_EQ(chain[1], S({{"1/4", "1/2"}}));
  EXPECT_EQ(chain[2], chain[1]);
  EXPECT_EQ(chain[3], chain[2]);
  EXPECT_EQ(chain[4], A);

  for (const auto& step : deviation_chain(A, A, IntervalSet::full())) EXPECT_EQ(step, A);
  EXPECT_EQ(deviation_chain(A, IntervalSet{}, S({{"1/4", "1"}})).back(), A);
}

TEST(DeltaDecompositionPropertyTest, CoverageAndChainSoundness) {
  DeviationRng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto A = rng.interval_set(), lie = rng.interval_set(), B = rng.interval_set();
    const auto d = delta_decompose(A, lie, B);
    const std::vector<IntervalSet> parts{d.delta1, d.delta2, d.delta3, d.delta4};
    for (std::size_t p = 0; p < parts.size(); ++p)
      for (std::size_t q = p + 1; q < parts.size(); ++q) ASSERT_TRUE(disjoint(parts[p], parts[q]));
    ASSERT_EQ(unite(unite(d.delta1, d.delta2), unite(d.delta3, d.delta4)), symmetric_difference(A, lie));
    ASSERT_EQ(deviation_chain(A, lie, B).back(), A);
  }
}

TEST(DeltaDecompositionPropertyTest, UtilityNeverDecreasesAlongChains) {
  DeviationRng rng(8);
  for (const char* t : {"0", "1/4", "1/2", "3/4", "1"}) {
    const Theta theta{R(t)};
    for (int i = 0; i < 200; ++i) {
      const auto A = rng.positive_interval_set(), B = rng.positive_interval_set();
      const auto chain = deviation_chain(A, rng.interval_set(), B);
      std::optional<Rational> previous;
      for (const auto& step : chain) {
        if (unite(step, B).empty()) continue;
        const Rational u = valuation(A, allocate(theta, step, B).C);
        if (previous) {
          ASSERT_GE(u, *previous) << "theta=" << t << " A=" << A << " B=" << B;
        }
        previous = u;
      }
    }
  }
}

TEST(GenerateDeviationsTest, StructuredMoves) {
  // every region (B\A, A n B, outside, A\B) is non-empty: 4 moves x 2 magnitudes
  const auto A = S({{"0", "1/2"}}), B = S({{"1/4", "3/4"}});
  const auto devs = generate_deviations(A, B, 1, 0);
  ASSERT_EQ(devs.size(), 8u);
  EXPECT_EQ(devs[0], S({{"0", "33/64"}}));           // + 1/16 of B\A
  EXPECT_EQ(devs[1], S({{"0", "1/4"}, {"17/64", "1/2"}}));  // - 1/16 of A n B

  const auto full = generate_deviations(IntervalSet::full(), IntervalSet::full(), 1, 0);
  ASSERT_EQ(full.size(), 2u);  // only "drop mass in A n B" applies
  EXPECT_EQ(full[0], S({{"1/16", "1"}}));
  EXPECT_EQ(full[1], S({{"1/4", "1"}}));
}

TEST(GenerateDeviationsTest, DeterministicForAFixedSeed) {
  const auto A = S({{"0", "1/2"}}), B = S({{"1/4", "3/4"}});
  const auto first = generate_deviations(A, B, 42, 12);
  EXPECT_EQ(first, generate_deviations(A, B, 42, 12));
  EXPECT_NE(first, generate_deviations(A, B, 43, 12));
  EXPECT_EQ(first.size(), 8u + 3u * 4u + 12u);
}

TEST(CheckIcTest, FamilyHasNoProfitablePrefixDeviation) {
  std::vector<IntervalSet> devs;
  for (int t = 1; t <= 9; ++t) devs.push_back(IntervalSet::interval(0, make_rational(t, 10)));
  const auto cake = IntervalSet::full();
  const auto report = check_ic(family_mechanism(kHalf), cake, cake, devs, "family:1/2");
  EXPECT_LE(report.worst_gain, 0);
  EXPECT_FALSE(report.witness);
  EXPECT_FALSE(report.waste);
  EXPECT_EQ(report.deviations_checked, 18);
}

TEST(CheckIcTest, ProportionalSplitIsManipulable) {
  const auto A = S({{"0", "1/2"}}), B = IntervalSet::full();
  const auto mech = proportional_mechanism();
  // Exhaustive oracle over single-interval misreports on the 1/20 grid.
  const Rational truthful = valuation(A, mech(A, B).C);
  Rational best_gain = -1;
  for (std::int64_t i = 0; i <= 20; ++i)
    for (std::int64_t j = i; j <= 20; ++j) {
      const auto lie = IntervalSet::interval(make_rational(i, 20), make_rational(j, 20));
      best_gain = std::max(best_gain, Rational(valuation(A, mech(lie, B).C) - truthful));
    }
  // Truthful share is (1/2)(1/2)/(3/2) = 1/6, i.e. utility 1/3; claiming the
  // whole cake yields [0,1/2) and utility 1.
  EXPECT_EQ(truthful, R("1/3"));
  EXPECT_EQ(best_gain, R("2/3"));

  const auto report = check_ic(mech, A, B, generate_deviations(A, B, 0, 8), generate_deviations(B, A, 1, 8),
                               "proportional");
  EXPECT_GT(report.worst_gain, 0);
  ASSERT_TRUE(report.witness);
  EXPECT_EQ(report.witness->gain, report.worst_gain);
  EXPECT_EQ(valuation(A, report.witness->deviant.C) - valuation(A, report.witness->truthful.C),
            report.witness->gain);
}

TEST(CheckIcTest, FamilyWithstandsRandomSuites) {
  for (const char* t : {"0", "1/4", "1/2", "3/4", "1"}) {
    const auto report = run_ic_suite(family_mechanism(Theta{R(t)}), t, 1234, 200);
    EXPECT_EQ(report.trials, 200);
    EXPECT_GT(report.deviations_checked, 200 * 16);
    EXPECT_LE(report.worst_gain, 0) << "theta=" << t;
    EXPECT_FALSE(report.violated());
  }
}

TEST(CheckIcTest, WastefulOutputIsReportedSeparately) {
  MechanismOracle greedy = [](const IntervalSet& A, const IntervalSet& B) { return Allocation{A, difference(B, A)}; };
  MechanismOracle grabby = [](const IntervalSet&, const IntervalSet&) {
    return Allocation{IntervalSet::full(), IntervalSet{}};
  };
  const auto A = S({{"0", "1/2"}}), B = S({{"1/4", "1"}});
  EXPECT_FALSE(check_ic(greedy, A, B, {S({{"0", "1/4"}})}).waste);
  const auto report = check_ic(grabby, A, B, {S({{"0", "1/4"}})});
  ASSERT_TRUE(report.waste);
  EXPECT_EQ(report.waste->reason, "C is not contained in A");
  EXPECT_FALSE(report.witness);
  EXPECT_TRUE(report.violated());
}

TEST(CheckIcTest, SlackSuppressesSmallGains) {
  const auto A = S({{"0", "1/2"}}), B = IntervalSet::full();
  const std::vector<IntervalSet> devs{IntervalSet::full()};
  EXPECT_TRUE(check_ic(proportional_mechanism(), A, B, devs, "p", R("1/2")).witness);
  EXPECT_FALSE(check_ic(proportional_mechanism(), A, B, devs, "p", R("1")).witness);
}

TEST(EnvyTest, Examples) {
  const auto cake = IntervalSet::full();
  EXPECT_EQ(check_envy_free(family_mechanism(kHalf), cake, cake), (EnvyFreeness{true, true}));
  EXPECT_EQ(check_envy_free(family_mechanism(Theta{R("7/10")}), cake, cake), (EnvyFreeness{true, false}));
  EXPECT_EQ(check_envy_free(family_mechanism(kHalf), S({{"0", "1/4"}}), S({{"1/2", "1"}})),
            (EnvyFreeness{true, true}));
}

TEST(ParetoConvertTest, Examples) {
  const auto A = S({{"0", "1/2"}}), B = S({{"3/4", "1"}});
  EXPECT_EQ(pareto_convert(A, B, A, B), (Allocation{A, B}));
  const auto x = pareto_convert(A, B, S({{"0", "3/4"}}), B);
  EXPECT_EQ(x.C, A);
  EXPECT_EQ(valuation(A, x.C), valuation(A, S({{"0", "3/4"}})));
  EXPECT_EQ(pareto_convert(A, B, IntervalSet{}, IntervalSet{}), (Allocation{}));
  EXPECT_THROW(pareto_convert(A, B, S({{"0", "1"}}), B), InputError);
}

TEST(ParetoConvertPropertyTest, PreservesValuations) {
  DeviationRng rng(21);
  for (int i = 0; i < 500; ++i) {
    const auto A = rng.positive_interval_set(), B = rng.positive_interval_set();
    const auto C = rng.interval_set();
    const auto D = difference(rng.interval_set(), C);
    const auto x = pareto_convert(A, B, C, D);
    ASSERT_EQ(valuation(A, x.C), valuation(A, C));
    ASSERT_EQ(valuation(B, x.D), valuation(B, D));
    ASSERT_TRUE(is_subset(x.C, A));
    ASSERT_TRUE(is_subset(x.D, B));
  }
}

}  // namespace
}  // namespace cakecut
