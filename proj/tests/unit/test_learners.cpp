//
// Copyright 2026 The Littlestone Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <gtest/gtest.h>

#include <functional>
#include <string>
#include <vector>

#include "littlestone/littlestone.hpp"
#include "test_support.hpp"

using namespace littlestone;

namespace {

Hypothesis H(const std::string& s) { return Bits::from_string(s); }

// Calls visit(S) for every realizable sequence of length exactly `len`.
void for_each_realizable(const ConceptClass& c, std::size_t len,
                         const std::function<void(const LabeledSequence&)>& visit) {
  LabeledSequence s;
  std::function<void(const std::vector<Hypothesis>&)> rec = [&](const std::vector<Hypothesis>& vs) {
    if (s.size() == len) {
      visit(s);
      return;
    }
    for (std::size_t x = 0; x < c.domain_size(); ++x) {
      for (bool y : {false, true}) {
        std::vector<Hypothesis> next;
        for (const auto& h : vs) {
          if (h.test(x) == y) next.push_back(h);
        }
        if (next.empty()) continue;
        s.push_back({x, y});
        rec(next);
        s.pop_back();
      }
    }
  };
  rec(c.hypotheses());
}

}  // namespace

TEST(Soa, InitialHypothesisOnThresholds3) {
  Soa soa(make_thresholds(3));
  EXPECT_EQ(soa.current_hypothesis(), H("110"));
}

TEST(Soa, ForcedLabelsAfterNarrowing) {
  Soa soa(make_thresholds(3));
  soa.observe({1, true});
  EXPECT_EQ(soa.version_space_hypotheses(), (std::vector<Hypothesis>{H("110"), H("111")}));
  EXPECT_TRUE(soa.predict(0));
  EXPECT_TRUE(soa.predict(1));
}

TEST(Soa, MistakeBoundOnThresholds7Exhaustive) {
  const ConceptClass c = make_thresholds(7);
  auto engine = LdimEngine::make(c);
  std::size_t checked = 0;
  for (std::size_t len = 1; len <= 4; ++len) {
    for_each_realizable(c, len, [&](const LabeledSequence& s) {
      Soa soa(engine);
      for (const auto& z : s) soa.observe(z);
      EXPECT_LE(soa.mistakes(), 3u);
      EXPECT_LE(soa.mind_changes(), soa.mistakes());
      ++checked;
    });
  }
  EXPECT_GT(checked, 10000u);
}

TEST(Soa, MistakesAtMostCeilLog2OnThresholds) {
  for (std::size_t n = 1; n <= 7; ++n) {
    const ConceptClass c = make_thresholds(n);
    auto engine = LdimEngine::make(c);
    const std::size_t bound = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n + 1))));
    for_each_realizable(c, std::min<std::size_t>(n, 4), [&](const LabeledSequence& s) {
      Soa soa(engine);
      for (const auto& z : s) soa.observe(z);
      EXPECT_LE(soa.mistakes(), bound);
    });
  }
}

TEST(Soa, LazyModeChangesOnlyOnMistakes) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ConceptClass c = make_random_class(4, 2 + seed % 7, seed);
    auto engine = LdimEngine::make(c);
    for_each_realizable(c, 3, [&](const LabeledSequence& s) {
      Soa soa(engine);
      for (const auto& z : s) {
        soa.observe(z);
        EXPECT_TRUE(!soa.last_was_mind_change() || soa.last_was_mistake());
      }
      EXPECT_LE(static_cast<int>(soa.mistakes()), engine->ldim());
    });
  }
}

TEST(Soa, EagerModeObeysTheMistakeBound) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ConceptClass c = make_random_class(4, 2 + seed % 7, seed);
    auto engine = LdimEngine::make(c);
    for_each_realizable(c, 3, [&](const LabeledSequence& s) {
      Soa soa(engine, Soa::Mode::kEager);
      for (const auto& z : s) soa.observe(z);
      EXPECT_LE(static_cast<int>(soa.mistakes()), engine->ldim());
    });
  }
}

TEST(Soa, RejectsUnrealizableInputAndKeepsState) {
  Soa soa(make_thresholds(3));
  soa.observe({0, false});
  const Hypothesis before = soa.current_hypothesis();
  EXPECT_THROW(soa.observe({1, true}), UnrealizableInput);
  EXPECT_EQ(soa.current_hypothesis(), before);
  EXPECT_EQ(soa.version_space_hypotheses(), (std::vector<Hypothesis>{H("000")}));
  EXPECT_THROW(soa.observe({7, true}), InvalidArgument);
}

TEST(Soa, ResetRestoresTheInitialState) {
  Soa soa(make_thresholds(7));
  const Hypothesis h0 = soa.current_hypothesis();
  soa.observe({0, false});
  soa.reset();
  EXPECT_EQ(soa.current_hypothesis(), h0);
  EXPECT_EQ(soa.mistakes(), 0u);
  EXPECT_EQ(soa.steps(), 0u);
}

TEST(Soa, CloneIsIndependent) {
  Soa soa(make_thresholds(7));
  auto copy = soa.clone();
  soa.observe({0, false});
  EXPECT_EQ(copy->steps(), 0u);
  EXPECT_NE(copy->current_hypothesis(), soa.current_hypothesis());
}

TEST(FirstConsistent, PicksLexicographicallyFirst) {
  FirstConsistentLearner fc(make_thresholds(3));
  EXPECT_EQ(fc.current_hypothesis(), H("000"));
  fc.observe({1, true});
  EXPECT_EQ(fc.current_hypothesis(), H("110"));
}

TEST(FirstConsistent, ChangesOnlyWhenContradicted) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const ConceptClass c = make_random_class(4, 2 + seed % 9, seed + 100);
    auto engine = LdimEngine::make(c);
    for_each_realizable(c, 3, [&](const LabeledSequence& s) {
      FirstConsistentLearner fc(engine);
      for (const auto& z : s) {
        fc.observe(z);
        EXPECT_TRUE(!fc.last_was_mind_change() || fc.last_was_mistake());
      }
    });
  }
}

TEST(Constant, NeverChanges) {
  ConstantLearner k(H("101"));
  for (std::size_t x = 0; x < 3; ++x) k.observe({x, false});
  EXPECT_EQ(k.current_hypothesis(), H("101"));
  EXPECT_EQ(k.mind_changes(), 0u);
  EXPECT_EQ(k.mistakes(), 2u);
  EXPECT_TRUE(k.frozen());
}

TEST(Gibbs, StaysConsistentAndIsSeedDeterministic) {
  auto engine = LdimEngine::make(make_thresholds(7));
  GibbsLearner a(engine, 5), b(engine, 5);
  const LabeledSequence s{{5, false}, {1, true}, {3, false}, {2, true}};
  for (const auto& z : s) {
    a.observe(z);
    b.observe(z);
    EXPECT_TRUE(engine->concept_class().contains(a.current_hypothesis()));
  }
  EXPECT_EQ(a.current_hypothesis(), b.current_hypothesis());
  EXPECT_TRUE(consistent(a.current_hypothesis(), s));
}

TEST(BudgetWrapper, FreezesAfterBudget) {
  auto engine = LdimEngine::make(make_thresholds(7));
  BudgetWrapper w(std::make_unique<FirstConsistentLearner>(engine), 1);
  EXPECT_FALSE(w.frozen());
  w.observe({0, true});  // 0000000 -> 1000000
  EXPECT_TRUE(w.frozen());
  const Hypothesis held = w.current_hypothesis();
  w.observe({3, true});
  EXPECT_EQ(w.current_hypothesis(), held);
  EXPECT_EQ(w.mind_changes(), 1u);
  BudgetWrapper zero(std::make_unique<Soa>(engine), 0);
  EXPECT_TRUE(zero.frozen());
  auto copy = w.clone();
  EXPECT_EQ(copy->current_hypothesis(), held);
}

TEST(Online, RunOnlineCountsMistakesAndTraces) {
  const ConceptClass c = make_thresholds(7);
  Soa soa(c);
  const LabeledSequence s{{3, false}, {1, true}, {2, true}, {2, true}};
  const OnlineResult r = run_online(soa, c, s);
  EXPECT_TRUE(r.realizable);
  ASSERT_EQ(r.trace.size(), 4u);
  EXPECT_EQ(r.trace[0].step, 1u);
  EXPECT_LE(r.mistakes, 3u);
  EXPECT_FALSE(r.learner_rejected_at.has_value());
}

TEST(Online, UnrealizableSequenceIsScoredWithTheFrozenHypothesis) {
  const ConceptClass c = make_thresholds(3);
  Soa soa(c);
  const LabeledSequence s{{0, false}, {1, true}, {2, true}};
  const OnlineResult r = run_online(soa, c, s);
  EXPECT_FALSE(r.realizable);
  ASSERT_TRUE(r.learner_rejected_at.has_value());
  EXPECT_EQ(*r.learner_rejected_at, 2u);
  EXPECT_EQ(r.trace.size(), 3u);
}

TEST(Cover, SizeIsBinomialSum) {
  const ExpertCover cover = build_cover(make_thresholds(7), 6);
  EXPECT_EQ(cover.d, 3);
  EXPECT_EQ(cover.subsets.size(), binomial_sum(6, 3));
  EXPECT_TRUE(cover.subsets.front().empty());
  EXPECT_THROW(build_cover(make_thresholds(7), 40, 1000), ResourceLimit);
}

TEST(Cover, Thresholds3PassesExhaustiveVerification) {
  for (std::size_t n = 0; n <= 5; ++n) {
    const CoverVerification v = verify_cover(build_cover(make_thresholds(3), n));
    EXPECT_TRUE(v.covered) << "n=" << n;
    EXPECT_TRUE(v.exhaustive);
  }
  EXPECT_TRUE(verify_cover(build_cover(make_thresholds(3), 4)).covered);
}

TEST(Cover, DeletingAnExpertFromATightInstanceBreaksIt) {
  const ExpertCover full = build_cover(make_powerset(3), 3);
  ASSERT_EQ(full.subsets.size(), 8u);
  for (std::size_t drop = 0; drop < full.subsets.size(); ++drop) {
    ExpertCover cut = full;
    cut.subsets.erase(cut.subsets.begin() + static_cast<std::ptrdiff_t>(drop));
    const CoverVerification v = verify_cover(cut);
    EXPECT_FALSE(v.covered);
    ASSERT_TRUE(v.counterexample.has_value());
    EXPECT_EQ(v.counterexample->size(), 3u);
    EXPECT_TRUE(is_realizable_seq(make_powerset(3), *v.counterexample));
  }
}

TEST(Cover, ExpertsIgnoreLabels) {
  const ExpertCover cover = build_cover(make_thresholds(7), 4);
  auto experts = cover.experts();
  auto again = cover.experts();
  for (std::size_t e = 0; e < experts.size(); ++e) {
    for (std::size_t x : {2u, 5u, 0u, 6u}) EXPECT_EQ(experts[e].next(x), again[e].next(x));
  }
}

TEST(Cover, SampledVerificationWhenEnumerationIsTooLarge) {
  CoverVerifyOptions opts;
  opts.max_sequences = 10;
  opts.sampled_trials = 300;
  const CoverVerification v = verify_cover(build_cover(make_thresholds(7), 5), opts);
  EXPECT_FALSE(v.exhaustive);
  EXPECT_TRUE(v.covered);
  EXPECT_EQ(v.sequences_checked, 300u);
}
