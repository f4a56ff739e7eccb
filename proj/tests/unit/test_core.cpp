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

#include <cmath>
#include <string>
#include <vector>

#include "littlestone/io.hpp"
#include "littlestone/littlestone.hpp"
#include "test_support.hpp"

using namespace littlestone;

namespace {

Hypothesis H(const std::string& s) { return Bits::from_string(s); }

std::vector<std::string> strings(const ConceptClass& c) { return oracle::rows_of(c); }

}  // namespace

TEST(Bits, SetTestCountAcrossWordBoundary) {
  Bits b(130);
  b.set(0);
  b.set(64);
  b.set(129);
  EXPECT_EQ(b.count(), 3u);
  EXPECT_TRUE(b.test(64));
  EXPECT_FALSE(b.test(63));
  EXPECT_EQ(b.find_first(), 0u);
  EXPECT_EQ(b.find_next(0), 64u);
  EXPECT_EQ(b.find_next(64), 129u);
  Bits c = ~b;
  EXPECT_EQ(c.count(), 127u);
  EXPECT_TRUE((b & c).none());
  EXPECT_EQ((b | c).count(), 130u);
}

TEST(Bits, LexicographicOrderStartsAtPositionZero) {
  EXPECT_TRUE(H("000") < H("100"));
  EXPECT_TRUE(H("011") < H("100"));
  EXPECT_TRUE(H("100") < H("110"));
  EXPECT_EQ(H("0110").to_string(), "0110");
}

TEST(Core, DomainValidation) {
  EXPECT_THROW(Domain(0), InvalidArgument);
  EXPECT_THROW(Domain(std::vector<std::string>{"a", "a"}), InvalidArgument);
  Domain d(std::vector<std::string>{"p", "q"});
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(d.label(1), "q");
}

TEST(Core, ThresholdsSmallCases) {
  EXPECT_EQ(strings(make_thresholds(1)), (std::vector<std::string>{"0", "1"}));
  EXPECT_EQ(strings(make_thresholds(3)), (std::vector<std::string>{"000", "100", "110", "111"}));
  EXPECT_EQ(make_thresholds(8).size(), 9u);
  EXPECT_THROW(make_thresholds(0), InvalidArgument);
  EXPECT_EQ(make_thresholds(3).domain().label(0), "1");
}

TEST(Core, SingletonsAndPowerset) {
  EXPECT_EQ(strings(make_singletons(2)), (std::vector<std::string>{"01", "10"}));
  const ConceptClass s5 = make_singletons(5);
  EXPECT_EQ(s5.size(), 5u);
  for (const auto& h : s5.hypotheses()) EXPECT_EQ(h.count(), 1u);
  EXPECT_THROW(make_singletons(0), InvalidArgument);
  EXPECT_EQ(strings(make_powerset(1)), (std::vector<std::string>{"0", "1"}));
  EXPECT_EQ(make_powerset(3).size(), 8u);
  EXPECT_THROW(make_powerset(21), ResourceLimit);
}

TEST(Core, ClassRejectsDuplicatesAndBadLengths) {
  EXPECT_THROW(ConceptClass(Domain(2), {H("01"), H("01")}), InvalidArgument);
  EXPECT_THROW(ConceptClass(Domain(2), {H("011")}), InvalidArgument);
  std::size_t merged = 0;
  const ConceptClass c = ConceptClass::merging_duplicates(Domain(2), {H("01"), H("10"), H("01")}, &merged);
  EXPECT_EQ(merged, 1u);
  EXPECT_EQ(c.size(), 2u);
  const ConceptClass empty(Domain(3), {});
  EXPECT_TRUE(empty.empty());
}

TEST(Core, ClassIsCanonicallySorted) {
  const ConceptClass c(Domain(3), {H("111"), H("000"), H("100")});
  EXPECT_EQ(strings(c), (std::vector<std::string>{"000", "100", "111"}));
  EXPECT_EQ(c.index_of(H("100")), 1u);
  EXPECT_FALSE(c.contains(H("010")));
}

TEST(Core, Restrict) {
  const ConceptClass t3 = make_thresholds(3);
  EXPECT_EQ(strings(restrict(t3, 1, true)), (std::vector<std::string>{"110", "111"}));
  EXPECT_TRUE(restrict(restrict(t3, 1, false), 1, true).empty());
  const ConceptClass p2 = make_powerset(2);
  for (std::size_t x = 0; x < 2; ++x) {
    for (bool y : {false, true}) EXPECT_EQ(restrict(p2, x, y).size(), 2u);
  }
  EXPECT_THROW(restrict(t3, 3, true), InvalidArgument);
}

TEST(Core, RestrictPartitionsEveryClass) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const ConceptClass c = make_random_class(5, 1 + seed % 20, seed);
    for (std::size_t x = 0; x < 5; ++x) {
      EXPECT_EQ(restrict(c, x, false).size() + restrict(c, x, true).size(), c.size());
      EXPECT_TRUE(restrict(restrict(c, x, false), x, true).empty());
    }
  }
}

TEST(Core, DistributionValidation) {
  using A = FiniteDistribution::Atom;
  EXPECT_THROW(FiniteDistribution({{0, true, 0.5}, {1, false, 0.4}}), InvalidArgument);
  EXPECT_THROW(FiniteDistribution({{0, true, 0.5}, {0, true, 0.5}}), InvalidArgument);
  EXPECT_THROW(FiniteDistribution({{0, true, -0.5}, {1, true, 1.5}}), InvalidArgument);
  const FiniteDistribution d({A{0, true, 0.5}, A{1, false, 0.5}, A{2, false, 0.0}});
  EXPECT_EQ(d.support_size(), 2u);
  const FiniteDistribution third = FiniteDistribution::uniform_on_graph(H("100"));
  double total = 0.0;
  for (const auto& a : third.atoms()) total += a.weight;
  EXPECT_NEAR(total, 1.0, 1e-15);
}

TEST(Core, Loss) {
  const FiniteDistribution all_ones = FiniteDistribution::uniform_over(
      std::vector<LabeledExample>{{0, true}, {1, true}, {2, true}});
  EXPECT_NEAR(loss(H("110"), all_ones), 1.0 / 3.0, 1e-15);
  const FiniteDistribution g = FiniteDistribution::uniform_on_graph(H("110"));
  EXPECT_EQ(loss(H("110"), g), 0.0);
  EXPECT_NEAR(loss(H("001"), g), 1.0, 1e-15);
}

TEST(Core, LossIsAffineInTheDistribution) {
  using A = FiniteDistribution::Atom;
  const FiniteDistribution d1({A{0, true, 0.25}, A{1, false, 0.75}});
  const FiniteDistribution d2({A{1, true, 0.5}, A{2, false, 0.5}});
  const double alpha = 0.3;
  const FiniteDistribution mix({A{0, true, alpha * 0.25}, A{1, false, alpha * 0.75}, A{1, true, (1 - alpha) * 0.5},
                                A{2, false, (1 - alpha) * 0.5}});
  const ConceptClass cube = make_powerset(3);
  for (const auto& h : cube.hypotheses()) {
    EXPECT_NEAR(loss(h, mix), alpha * loss(h, d1) + (1 - alpha) * loss(h, d2), 1e-12);
  }
}

TEST(Core, Realizability) {
  const ConceptClass t3 = make_thresholds(3);
  EXPECT_TRUE(is_realizable_seq(t3, std::vector<LabeledExample>{{0, true}, {2, false}}));
  EXPECT_FALSE(is_realizable_seq(t3, std::vector<LabeledExample>{{0, false}, {2, true}}));
  EXPECT_THROW(is_realizable_seq(t3, std::vector<LabeledExample>{{5, true}}), InvalidArgument);
  const FiniteDistribution d = FiniteDistribution::uniform_over(
      std::vector<LabeledExample>{{0, true}, {1, false}, {2, false}});
  EXPECT_TRUE(is_realizable_dist(t3, d));
  const FiniteDistribution both = FiniteDistribution::uniform_over(std::vector<LabeledExample>{{1, false}, {1, true}});
  EXPECT_FALSE(is_realizable_dist(t3, both));
  EXPECT_FALSE(is_realizable_dist(ConceptClass(Domain(3), {}), d));
  for (const auto& h : t3.hypotheses()) EXPECT_TRUE(is_realizable_dist(t3, FiniteDistribution::uniform_on_graph(h)));
}

TEST(Core, RealizableDistributionIffSupportSequenceRealizable) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ConceptClass c = make_random_class(4, 3 + seed % 5, seed);
    Rng rng = derive_rng(seed, 1);
    std::vector<LabeledExample> zs;
    for (std::size_t x = 0; x < 4; ++x) {
      if (uniform_below(rng, 2) == 1) zs.push_back({x, uniform_below(rng, 2) == 1});
    }
    if (zs.empty()) continue;
    const FiniteDistribution d = FiniteDistribution::uniform_over(zs);
    EXPECT_EQ(is_realizable_dist(c, d), is_realizable_seq(c, zs));
    std::reverse(zs.begin(), zs.end());
    EXPECT_EQ(is_realizable_dist(c, d), is_realizable_seq(c, zs));
  }
}

TEST(Core, SamplingMatchesWeights) {
  using A = FiniteDistribution::Atom;
  const FiniteDistribution d({A{0, true, 0.2}, A{1, false, 0.3}, A{2, true, 0.5}});
  Rng rng = derive_rng(7, 0);
  std::vector<std::size_t> counts(3, 0);
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) ++counts[d.sample_index(rng)];
  EXPECT_NEAR(counts[0] / double(trials), 0.2, 0.01);
  EXPECT_NEAR(counts[1] / double(trials), 0.3, 0.01);
  EXPECT_NEAR(counts[2] / double(trials), 0.5, 0.01);
}

TEST(Core, RandomClassIsDeterministicPerSeed) {
  EXPECT_EQ(make_random_class(6, 10, 42), make_random_class(6, 10, 42));
  EXPECT_EQ(make_random_class(6, 10, 42).size(), 10u);
  EXPECT_THROW(make_random_class(2, 5, 1), InvalidArgument);
}

TEST(Io, ClassRoundTripCanonicalizes) {
  const std::string text = R"({"domain": ["a","b","c"], "hypotheses": [[1,1,0],[0,0,0],[1,0,0]]})";
  const ConceptClass c = io::read_class(text);
  EXPECT_EQ(strings(c), (std::vector<std::string>{"000", "100", "110"}));
  const std::string written = io::write_class(c);
  EXPECT_EQ(io::write_class(io::read_class(written)), written);
  EXPECT_EQ(io::read_class(written).domain().label(2), "c");
}

TEST(Io, GeneratorsRoundTrip) {
  for (const ConceptClass& c : {make_thresholds(5), make_singletons(4), make_powerset(3), make_random_class(5, 7, 3)}) {
    EXPECT_EQ(io::read_class(io::write_class(c)), c);
  }
}

TEST(Io, DuplicateRowIsAParseErrorWithLine) {
  const std::string text = "{\n  \"domain\": [\"a\",\"b\"],\n  \"hypotheses\": [\n    [0,1],\n    [1,1],\n    [0,1]\n  ]\n}\n";
  try {
    io::read_class(text);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 6u);
    EXPECT_EQ(e.field(), "hypotheses[2]");
  }
}

TEST(Io, RowLengthMismatchIsAParseError) {
  const std::string text = "{\"domain\": [\"a\",\"b\"],\n\"hypotheses\": [[0,1],\n[1,1,0]]}";
  try {
    io::read_class(text);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.field(), "hypotheses[1]");
  }
}

TEST(Io, MalformedJsonAndBadEntries) {
  EXPECT_THROW(io::read_class("{\"domain\": [\"a\"], \"hypotheses\": [[0]"), ParseError);
  EXPECT_THROW(io::read_class("{\"domain\": [\"a\"], \"hypotheses\": [[2]]}"), ParseError);
  EXPECT_THROW(io::read_class("{\"hypotheses\": [[0]]}"), ParseError);
  try {
    io::read_class("{\n\"domain\": [\"a\"],\n\"hypotheses\": [[0],,]}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Io, SequencesAndDistributions) {
  const LabeledSequence s = io::read_sequence(R"({"items": [[0,1],[2,0],[0,1]]})", 3);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[1], (LabeledExample{2, false}));
  EXPECT_EQ(io::read_sequence(io::write_sequence(s)), s);
  EXPECT_THROW(io::read_sequence(R"({"items": [[3,1]]})", 3), ParseError);
  const FiniteDistribution d = io::read_distribution(R"({"atoms": [[0,1,0.25],[1,0,0.75]]})");
  EXPECT_EQ(d.support_size(), 2u);
  EXPECT_THROW(io::read_distribution(R"({"atoms": [[0,1,0.25],[1,0,0.70]]})"), ParseError);
  const FiniteDistribution back = io::read_distribution(io::write_distribution(d));
  EXPECT_EQ(back.atoms()[1].weight, 0.75);
}

TEST(Io, TreeCertificateRoundTrip) {
  const ConceptClass t7 = make_thresholds(7);
  const MistakeTreeCert t = ldim_certificate(t7);
  const MistakeTreeCert back = io::read_tree(io::tree_json(t).dump(), t7.domain_size());
  EXPECT_EQ(back.depth, t.depth);
  EXPECT_EQ(back.nodes, t.nodes);
  EXPECT_EQ(back.leaves, t.leaves);
  EXPECT_THROW(io::read_tree(R"({"point": 0, "left": {"hypothesis": [0]}})", 1), ParseError);
}

TEST(Io, GraphSymmetryIsValidated) {
  const Graph g = io::read_graph(R"({"n": 2, "adj": [[0,1],[1,0]]})");
  EXPECT_TRUE(g.adjacent(0, 1));
  EXPECT_THROW(io::read_graph(R"({"n": 2, "adj": [[0,1],[0,0]]})"), ParseError);
  EXPECT_THROW(io::read_graph(R"({"n": 2, "adj": [[0,1]]})"), ParseError);
}
