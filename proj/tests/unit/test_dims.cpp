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

#include "littlestone/littlestone.hpp"
#include "test_support.hpp"

using namespace littlestone;

namespace {

Hypothesis H(const std::string& s) { return Bits::from_string(s); }

std::vector<std::size_t> all_points(std::size_t m) {
  std::vector<std::size_t> p(m);
  for (std::size_t x = 0; x < m; ++x) p[x] = x;
  return p;
}

std::vector<ConceptClass> random_suite(std::size_t count, std::size_t max_m, std::size_t max_h, std::uint64_t seed) {
  std::vector<ConceptClass> out;
  Rng rng = derive_rng(seed, 0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t m = 1 + uniform_below(rng, max_m);
    const std::size_t cap = std::min<std::size_t>(max_h, std::size_t{1} << m);
    const std::size_t h = 1 + uniform_below(rng, cap);
    out.push_back(make_random_class(m, h, seed * 1000 + i));
  }
  return out;
}

}  // namespace

TEST(Dims, FloorLog2) {
  EXPECT_EQ(floor_log2(1), 0);
  EXPECT_EQ(floor_log2(2), 1);
  EXPECT_EQ(floor_log2(7), 2);
  EXPECT_EQ(floor_log2(8), 3);
}

TEST(Dims, LdimConventions) {
  EXPECT_EQ(ldim(ConceptClass(Domain(2), {})), -1);
  EXPECT_EQ(ldim(ConceptClass(Domain(2), {H("01")})), 0);
  EXPECT_EQ(vc_dim(ConceptClass(Domain(2), {})), -1);
  EXPECT_EQ(vc_dim(ConceptClass(Domain(2), {H("01")})), 0);
}

TEST(Dims, LdimOfThresholdsIsFloorLog2OfClassSize) {
  for (std::size_t n = 1; n <= 15; ++n) {
    EXPECT_EQ(ldim(make_thresholds(n)), floor_log2(n + 1)) << "n=" << n;
  }
  EXPECT_EQ(ldim(make_thresholds(7)), 3);
}

TEST(Dims, LdimMatchesExhaustiveTreeSearch) {
  for (std::size_t n = 1; n <= 9; ++n) {
    const ConceptClass c = make_thresholds(n);
    EXPECT_EQ(ldim(c), oracle::ldim(oracle::rows_of(c))) << "thresholds " << n;
  }
  for (std::size_t m = 1; m <= 4; ++m) EXPECT_EQ(ldim(make_powerset(m)), static_cast<int>(m));
  for (const auto& c : random_suite(60, 6, 20, 11)) {
    EXPECT_EQ(ldim(c), oracle::ldim(oracle::rows_of(c)));
  }
}

TEST(Dims, LdimAtMostLog2ClassSizeAndAtLeastVc) {
  for (const auto& c : random_suite(100, 7, 40, 12)) {
    const int d = ldim(c);
    EXPECT_LE(d, floor_log2(c.size()));
    EXPECT_GE(d, vc_dim(c));
  }
}

TEST(Dims, LdimIsMonotoneUnderSubclasses) {
  for (const auto& c : random_suite(40, 5, 16, 13)) {
    if (c.size() < 2) continue;
    std::vector<Hypothesis> fewer(c.hypotheses().begin() + 1, c.hypotheses().end());
    EXPECT_LE(ldim(ConceptClass(c.domain(), fewer)), ldim(c));
  }
}

TEST(Dims, CertificatesVerify) {
  for (const auto& c : {make_thresholds(3), make_thresholds(7), make_powerset(2), make_powerset(3), make_singletons(5)}) {
    const MistakeTreeCert t = ldim_certificate(c);
    EXPECT_EQ(static_cast<int>(t.depth), ldim(c));
    EXPECT_TRUE(verify_mistake_tree(c, t).valid) << verify_mistake_tree(c, t).reason;
  }
  for (const auto& c : random_suite(50, 6, 20, 14)) {
    const MistakeTreeCert t = ldim_certificate(c);
    EXPECT_TRUE(verify_mistake_tree(c, t).valid);
    EXPECT_TRUE(verify_shattered_set(c, vc_certificate(c)).valid);
    EXPECT_TRUE(verify_half_graph(c, threshold_dim(c).cert).valid);
  }
  EXPECT_THROW(ldim_certificate(ConceptClass(Domain(2), {})), InvalidArgument);
}

TEST(Dims, Thresholds3TreeShape) {
  const MistakeTreeCert t = ldim_certificate(make_thresholds(3));
  ASSERT_EQ(t.depth, 2u);
  std::vector<Hypothesis> leaves = t.leaves;
  std::sort(leaves.begin(), leaves.end());
  EXPECT_EQ(leaves, (std::vector<Hypothesis>{H("000"), H("100"), H("110"), H("111")}));
  // The handcrafted tree: root point 2 (index 1), children 1 and 3.
  const MistakeTreeCert manual{2, {1, 0, 2}, {H("000"), H("100"), H("110"), H("111")}};
  EXPECT_TRUE(verify_mistake_tree(make_thresholds(3), manual).valid);
}

TEST(Dims, CorruptedTreeNamesTheBranch) {
  const ConceptClass c = make_thresholds(3);
  MistakeTreeCert t{2, {1, 0, 2}, {H("000"), H("100"), H("110"), H("111")}};
  t.leaves[1] = H("000");
  const CertificateCheck check = verify_mistake_tree(c, t);
  EXPECT_FALSE(check.valid);
  EXPECT_NE(check.reason.find("01"), std::string::npos) << check.reason;
  t.leaves[1] = H("010");
  EXPECT_FALSE(verify_mistake_tree(c, t).valid);
  MistakeTreeCert shallow{2, {1}, {H("000")}};
  EXPECT_FALSE(verify_mistake_tree(c, shallow).valid);
}

TEST(Dims, StrictDistinctTreesAgreeOnSmallFamilies) {
  for (std::size_t n = 1; n <= 7; ++n) EXPECT_EQ(ldim_strict_distinct(make_thresholds(n)), ldim(make_thresholds(n)));
  // A complete tree of depth d with distinct nodes needs 2^d - 1 points, so
  // the powerset drops to floor(log2(m + 1)) under this convention.
  for (std::size_t m = 1; m <= 4; ++m) EXPECT_EQ(ldim_strict_distinct(make_powerset(m)), floor_log2(m + 1));
  for (const auto& c : random_suite(40, 6, 16, 15)) EXPECT_LE(ldim_strict_distinct(c), ldim(c));
}

TEST(Dims, VcDimension) {
  EXPECT_EQ(vc_dim(make_thresholds(5)), 1);
  for (std::size_t n = 1; n <= 10; ++n) EXPECT_EQ(vc_dim(make_thresholds(n)), 1);
  EXPECT_EQ(vc_dim(make_powerset(4)), 4);
  for (const auto& c : random_suite(60, 6, 20, 16)) EXPECT_EQ(vc_dim(c), oracle::vc(oracle::rows_of(c)));
}

TEST(Dims, ShatteredSetCertificateRejectsWrongWitness) {
  const ConceptClass c = make_powerset(2);
  ShatteredSetCert s = vc_certificate(c);
  ASSERT_EQ(s.points.size(), 2u);
  EXPECT_TRUE(verify_shattered_set(c, s).valid);
  std::swap(s.witnesses[1], s.witnesses[2]);
  EXPECT_FALSE(verify_shattered_set(c, s).valid);
}

TEST(Dims, PatternCounts) {
  for (std::size_t n = 1; n <= 10; ++n) {
    EXPECT_EQ(pattern_count(make_thresholds(n), all_points(n)), n + 1);
    EXPECT_EQ(pattern_count(make_singletons(n), all_points(n)), n);
  }
  EXPECT_EQ(pattern_count(make_singletons(3), all_points(3)), 3u);
  // Subset of points: the all-zeros pattern appears once a singleton lives elsewhere.
  EXPECT_EQ(pattern_count(make_singletons(4), {0, 1}), 3u);
  EXPECT_EQ(pattern_count(make_thresholds(3), {}), 1u);
  EXPECT_THROW(pattern_count(make_thresholds(3), {0, 0}), InvalidArgument);
  EXPECT_THROW(pattern_count(make_thresholds(3), {3}), InvalidArgument);
  for (const auto& c : random_suite(30, 6, 20, 17)) {
    EXPECT_EQ(pattern_count(c, all_points(c.domain_size())), oracle::patterns(oracle::rows_of(c), all_points(c.domain_size())));
  }
}

TEST(Dims, SauerShelahBoundHolds) {
  const SspReport t6 = ssp_check(make_thresholds(6), {6});
  EXPECT_TRUE(t6.holds);
  EXPECT_EQ(t6.rows[0].max_patterns, 7u);
  EXPECT_EQ(t6.rows[0].bound, 7u);
  for (const auto& c : random_suite(30, 8, 40, 18)) {
    std::vector<std::size_t> sizes;
    for (std::size_t n = 1; n <= c.domain_size(); ++n) sizes.push_back(n);
    EXPECT_TRUE(ssp_check(c, sizes).holds);
  }
}

TEST(Dims, Binomials) {
  EXPECT_EQ(binomial(6, 0), 1u);
  EXPECT_EQ(binomial(6, 3), 20u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_EQ(binomial_sum(6, 1), 7u);
  EXPECT_EQ(binomial_sum(5, 5), 32u);
  EXPECT_EQ(binomial_sum(5, -1), 0u);
}

TEST(Dims, ThresholdDimension) {
  const ThresholdDimResult r = threshold_dim(make_thresholds(5));
  EXPECT_EQ(r.k, 5u);
  EXPECT_TRUE(r.exact);
  EXPECT_TRUE(verify_half_graph(make_thresholds(5), r.cert).valid);
  const HalfGraphCert manual{{0, 1, 2, 3, 4}, {H("00000"), H("10000"), H("11000"), H("11100"), H("11110")}};
  EXPECT_TRUE(verify_half_graph(make_thresholds(5), manual).valid);
  for (std::size_t n = 1; n <= 8; ++n) EXPECT_EQ(threshold_dim(make_thresholds(n)).k, n);
  EXPECT_EQ(threshold_dim(make_singletons(1)).k, 0u);
  EXPECT_EQ(threshold_dim(make_singletons(2)).k, 1u);
  EXPECT_EQ(threshold_dim(make_singletons(3)).k, 2u);
  EXPECT_EQ(threshold_dim(make_singletons(4)).k, 2u);
  EXPECT_EQ(threshold_dim(make_powerset(3)).k, 3u);
}

TEST(Dims, ThresholdDimensionMatchesBruteForce) {
  for (const auto& c : random_suite(80, 6, 20, 19)) {
    EXPECT_EQ(static_cast<int>(threshold_dim(c).k), oracle::threshold_dim(oracle::rows_of(c)));
  }
}

TEST(Dims, ThresholdDimensionCapMakesALowerBound) {
  const ThresholdDimResult r = threshold_dim(make_thresholds(14));
  EXPECT_EQ(r.k, 12u);
  EXPECT_FALSE(r.exact);
  EXPECT_TRUE(verify_half_graph(make_thresholds(14), r.cert).valid);
}

TEST(Dims, HalfGraphGivesATreeOfDepthFloorLog2K) {
  // k hypotheses of a half-graph support a tree of depth floor(log2 k).
  for (const auto& c : random_suite(150, 6, 20, 20)) {
    const ThresholdDimResult r = threshold_dim(c);
    if (r.k == 0) continue;
    EXPECT_GE(ldim(c), floor_log2(r.k));
  }
  for (std::size_t n = 1; n <= 12; ++n) {
    EXPECT_GE(ldim(make_thresholds(n)), floor_log2(threshold_dim(make_thresholds(n)).k + 1));
  }
}

TEST(Dims, HalfGraphBoundWithPlusOneHasCounterexamples) {
  // One hypothesis with a zero: threshold dimension 1, Ldim 0.
  const ConceptClass single(Domain(2), {H("01")});
  EXPECT_EQ(threshold_dim(single).k, 1u);
  EXPECT_EQ(ldim(single), 0);
  EXPECT_LT(ldim(single), floor_log2(threshold_dim(single).k + 1));
  // A 3-half-graph alone has only three hypotheses.
  const ConceptClass three(Domain(3), {H("000"), H("100"), H("110")});
  EXPECT_EQ(threshold_dim(three).k, 3u);
  EXPECT_EQ(ldim(three), 1);
}

TEST(Dims, Dualize) {
  const DualResult d = dualize(make_thresholds(3));
  EXPECT_EQ(d.dual.domain_size(), 4u);
  EXPECT_EQ(oracle::rows_of(d.dual), (std::vector<std::string>{"0001", "0011", "0111"}));
  EXPECT_EQ(d.merged, 0u);
  EXPECT_EQ(ldim(d.dual), 1);
  EXPECT_THROW(dualize(ConceptClass(Domain(2), {})), InvalidArgument);
  for (const auto& c : random_suite(40, 5, 12, 21)) {
    const DualResult dr = dualize(c);
    EXPECT_LE(ldim(dr.dual), floor_log2(dr.dual.size()));
    EXPECT_GE(ldim(dr.dual), -1);
  }
}

TEST(Dims, EngineMemoIsSharedAndSoaLabelsTieToOne) {
  auto engine = LdimEngine::make(make_thresholds(3));
  EXPECT_EQ(engine->ldim(), 2);
  EXPECT_GT(engine->memo_size(), 0u);
  // Point 1 favours 1, point 2 ties (so 1), point 3 favours 0.
  EXPECT_EQ(engine->soa_labels(engine->full()), H("110"));
  const ConceptClass p1 = make_powerset(1);
  auto e1 = LdimEngine::make(p1);
  EXPECT_EQ(e1->soa_labels(e1->full()), H("1"));
}
