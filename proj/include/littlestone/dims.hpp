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

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "littlestone/bits.hpp"
#include "littlestone/core.hpp"
#include "littlestone/error.hpp"

namespace littlestone {

inline int floor_log2(std::size_t n) {
  return n == 0 ? -1 : static_cast<int>(std::bit_width(n)) - 1;
}

// Complete binary mistake tree in heap layout: internal node i has children
// 2i+1 (label 0) and 2i+2 (label 1). Leaf r is the branch whose directions,
// read root first, spell r in binary (most significant bit first).
struct MistakeTreeCert {
  std::size_t depth = 0;
  std::vector<std::size_t> nodes;   // 2^depth - 1 domain points
  std::vector<Hypothesis> leaves;   // 2^depth hypotheses
};

// x_i in h_j iff i < j.
struct HalfGraphCert {
  std::vector<std::size_t> points;
  std::vector<Hypothesis> hypotheses;
};

// witnesses[p] realizes pattern p, where bit i of p is the label of points[i].
struct ShatteredSetCert {
  std::vector<std::size_t> points;
  std::vector<Hypothesis> witnesses;
};

struct CertificateCheck {
  bool valid = true;
  std::string reason;

  static CertificateCheck fail(std::string why) { return {false, std::move(why)}; }
};

// ---------------------------------------------------------------------------
// Littlestone dimension over the subclasses of one fixed class.
//
// Subclasses are bitsets over the (sorted) hypothesis indices of the root
// class, so a subset mask names the canonical sorted sub-list uniquely. The
// memo is shared by every caller holding the engine and is safe to use from
// several threads.
class LdimEngine {
 public:
  explicit LdimEngine(ConceptClass c) : class_(std::move(c)), full_(class_.size(), true) {
    ones_.assign(class_.domain_size(), Bits(class_.size()));
    for (std::size_t j = 0; j < class_.size(); ++j) {
      class_[j].for_each_set([&](std::size_t x) { ones_[x].set(j); });
    }
  }

  static std::shared_ptr<const LdimEngine> make(ConceptClass c) {
    return std::make_shared<const LdimEngine>(std::move(c));
  }

  const ConceptClass& concept_class() const { return class_; }
  std::size_t domain_size() const { return class_.domain_size(); }
  std::size_t class_size() const { return class_.size(); }
  const Bits& full() const { return full_; }
  const Bits& ones(std::size_t point) const { return ones_[point]; }

  Bits restrict(const Bits& subset, std::size_t point, bool label) const {
    Bits r(subset);
    if (label) {
      r &= ones_[point];
    } else {
      r.subtract(ones_[point]);
    }
    return r;
  }

  int ldim() const { return ldim(full_); }

  // -1 for the empty subclass, 0 for a single hypothesis.
  int ldim(const Bits& subset) const {
    const std::size_t n = subset.count();
    if (n <= 1) return n == 0 ? -1 : 0;
    {
      std::lock_guard lock(mu_);
      if (auto it = memo_.find(subset); it != memo_.end()) return it->second;
    }
    const int value = compute(subset, n);
    std::lock_guard lock(mu_);
    memo_.emplace(subset, value);
    return value;
  }

  // For each point the label whose restriction has the larger Ldim; ties
  // (including both sides empty) go to 1. Memoized per subclass.
  Hypothesis soa_labels(const Bits& subset) const {
    {
      std::lock_guard lock(mu_);
      if (auto it = soa_memo_.find(subset); it != soa_memo_.end()) return it->second;
    }
    Hypothesis h(domain_size());
    for (std::size_t x = 0; x < domain_size(); ++x) {
      const int with_one = ldim(restrict(subset, x, true));
      const int with_zero = ldim(restrict(subset, x, false));
      h.set(x, with_one >= with_zero);
    }
    std::lock_guard lock(mu_);
    soa_memo_.emplace(subset, h);
    return h;
  }

  // A shattered tree of the requested depth; requires depth <= ldim(subset).
  MistakeTreeCert certificate(const Bits& subset, std::size_t depth) const {
    if (static_cast<int>(depth) > ldim(subset)) {
      throw InvalidArgument("no shattered tree of depth " + std::to_string(depth));
    }
    MistakeTreeCert cert;
    cert.depth = depth;
    cert.nodes.assign((std::size_t{1} << depth) - 1, 0);
    cert.leaves.assign(std::size_t{1} << depth, Hypothesis());
    build(subset, depth, 0, cert);
    return cert;
  }

  std::size_t memo_size() const {
    std::lock_guard lock(mu_);
    return memo_.size();
  }

 private:
  int compute(const Bits& subset, std::size_t n) const {
    const int bound = floor_log2(n);
    int best = 0;
    for (std::size_t x = 0; x < domain_size() && best < bound; ++x) {
      Bits with_one = restrict(subset, x, true);
      const std::size_t c1 = with_one.count();
      const std::size_t c0 = n - c1;
      if (c0 == 0 || c1 == 0) continue;
      if (1 + floor_log2(std::min(c0, c1)) <= best) continue;
      Bits with_zero = restrict(subset, x, false);
      const Bits& smaller = c0 <= c1 ? with_zero : with_one;
      const Bits& larger = c0 <= c1 ? with_one : with_zero;
      const int a = ldim(smaller);
      if (1 + a <= best) continue;
      const int b = ldim(larger);
      best = std::max(best, 1 + std::min(a, b));
    }
    return best;
  }

  void build(const Bits& subset, std::size_t depth, std::size_t node, MistakeTreeCert& cert) const {
    if (depth == 0) {
      const std::size_t leaf = node - cert.nodes.size();
      cert.leaves[leaf] = class_[subset.find_first()];
      return;
    }
    const int need = static_cast<int>(depth) - 1;
    for (std::size_t x = 0; x < domain_size(); ++x) {
      Bits zero = restrict(subset, x, false);
      Bits one = restrict(subset, x, true);
      if (ldim(zero) >= need && ldim(one) >= need) {
        cert.nodes[node] = x;
        build(zero, depth - 1, 2 * node + 1, cert);
        build(one, depth - 1, 2 * node + 2, cert);
        return;
      }
    }
    throw std::logic_error("ldim memo inconsistent with certificate search");
  }

  ConceptClass class_;
  Bits full_;
  std::vector<Bits> ones_;
  mutable std::mutex mu_;
  mutable std::unordered_map<Bits, int, BitsHash> memo_;
  mutable std::unordered_map<Bits, Hypothesis, BitsHash> soa_memo_;
};

namespace detail {

inline std::string canonical_key(const ConceptClass& c) {
  std::string key = std::to_string(c.domain_size()) + ":";
  for (const auto& h : c.hypotheses()) {
    key += h.to_string();
    key += ',';
  }
  return key;
}

}  // namespace detail

// Littlestone dimension: -1 for the empty class, 0 for a singleton. Results
// are cached process-wide by the canonical hypothesis list.
inline int ldim(const ConceptClass& c) {
  if (c.size() <= 1) return c.empty() ? -1 : 0;
  static std::mutex mu;
  static std::unordered_map<std::string, int> cache;
  std::string key = detail::canonical_key(c);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const int value = LdimEngine(c).ldim();
  std::lock_guard lock(mu);
  cache.emplace(std::move(key), value);
  return value;
}

inline MistakeTreeCert ldim_certificate(const ConceptClass& c) {
  if (c.empty()) throw InvalidArgument("ldim_certificate: empty class");
  LdimEngine engine(c);
  return engine.certificate(engine.full(), static_cast<std::size_t>(engine.ldim()));
}

inline CertificateCheck verify_mistake_tree(const ConceptClass& c, const MistakeTreeCert& t) {
  if (t.depth >= 63) return CertificateCheck::fail("tree depth out of range");
  const std::size_t internal = (std::size_t{1} << t.depth) - 1;
  if (t.nodes.size() != internal) {
    return CertificateCheck::fail("expected " + std::to_string(internal) + " internal nodes, got " +
                                  std::to_string(t.nodes.size()));
  }
  if (t.leaves.size() != internal + 1) {
    return CertificateCheck::fail("expected " + std::to_string(internal + 1) + " leaves, got " +
                                  std::to_string(t.leaves.size()));
  }
  for (std::size_t i = 0; i < internal; ++i) {
    if (t.nodes[i] >= c.domain_size()) {
      return CertificateCheck::fail("node " + std::to_string(i) + " labels a point outside the domain");
    }
  }
  auto branch_name = [&](std::size_t leaf) {
    std::string s;
    for (std::size_t level = 0; level < t.depth; ++level) {
      s += ((leaf >> (t.depth - 1 - level)) & 1) ? '1' : '0';
    }
    return s.empty() ? std::string("(root)") : s;
  };
  for (std::size_t r = 0; r < t.leaves.size(); ++r) {
    const Hypothesis& h = t.leaves[r];
    if (h.size() != c.domain_size() || !c.contains(h)) {
      return CertificateCheck::fail("leaf on branch " + branch_name(r) + " is not a hypothesis of the class");
    }
    std::size_t node = 0;
    for (std::size_t level = 0; level < t.depth; ++level) {
      const bool dir = (r >> (t.depth - 1 - level)) & 1;
      if (h.test(t.nodes[node]) != dir) {
        return CertificateCheck::fail("branch " + branch_name(r) + ": leaf disagrees with point " +
                                      std::to_string(t.nodes[node]) + " at level " +
                                      std::to_string(level));
      }
      node = 2 * node + 1 + (dir ? 1 : 0);
    }
  }
  std::vector<Hypothesis> sorted = t.leaves;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return CertificateCheck::fail("leaf hypotheses are not pairwise distinct");
  }
  return {};
}

// Largest depth of a shattered tree whose node points are pairwise distinct
// across the whole tree (the strict convention). Exponential; small domains only.
inline int ldim_strict_distinct(const ConceptClass& c, std::size_t max_domain = 12) {
  if (c.empty()) return -1;
  if (c.domain_size() > max_domain) {
    throw ResourceLimit("strict-distinct tree search limited to " + std::to_string(max_domain) + " points");
  }
  LdimEngine engine(c);
  struct Key {
    Bits subset;
    std::uint64_t avail;
    int depth;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return k.subset.hash() ^ (k.avail * 0x9e3779b97f4a7c15ULL) ^ static_cast<std::size_t>(k.depth);
    }
  };
  std::unordered_map<Key, bool, KeyHash> memo;
  std::function<bool(const Bits&, std::uint64_t, int)> exists = [&](const Bits& v, std::uint64_t avail,
                                                                    int depth) -> bool {
    if (depth == 0) return v.any();
    if (engine.ldim(v) < depth) return false;
    Key key{v, avail, depth};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool found = false;
    for (std::size_t x = 0; x < c.domain_size() && !found; ++x) {
      if (!((avail >> x) & 1)) continue;
      const Bits zero = engine.restrict(v, x, false);
      const Bits one = engine.restrict(v, x, true);
      if (zero.none() || one.none()) continue;
      const std::uint64_t rest = avail & ~(std::uint64_t{1} << x);
      // Enumerate every split of the remaining points between the subtrees.
      for (std::uint64_t left = rest;; left = (left - 1) & rest) {
        if (exists(zero, left, depth - 1) && exists(one, rest & ~left, depth - 1)) {
          found = true;
          break;
        }
        if (left == 0) break;
      }
    }
    memo.emplace(std::move(key), found);
    return found;
  };
  const std::uint64_t all = (c.domain_size() == 64) ? ~std::uint64_t{0}
                                                    : ((std::uint64_t{1} << c.domain_size()) - 1);
  int best = 0;
  while (best < engine.ldim() && exists(engine.full(), all, best + 1)) ++best;
  return best;
}

// ---------------------------------------------------------------------------
// Patterns and VC dimension

inline std::size_t pattern_count(const ConceptClass& c, const std::vector<std::size_t>& points) {
  {
    std::vector<std::size_t> sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidArgument("pattern_count: points must be distinct");
    }
    if (!sorted.empty() && sorted.back() >= c.domain_size()) {
      throw InvalidArgument("pattern_count: point outside the domain");
    }
  }
  std::unordered_set<Bits, BitsHash> patterns;
  for (const auto& h : c.hypotheses()) {
    Bits p(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) p.set(i, h.test(points[i]));
    patterns.insert(std::move(p));
  }
  // The empty point list carries exactly one (empty) pattern.
  return points.empty() ? 1 : patterns.size();
}

namespace detail {

inline std::optional<ShatteredSetCert> shattered_witnesses(const ConceptClass& c,
                                                           const std::vector<std::size_t>& points) {
  if (points.size() >= 63) return std::nullopt;
  const std::size_t want = std::size_t{1} << points.size();
  if (c.size() < want) return std::nullopt;
  std::vector<std::optional<std::size_t>> witness(want);
  std::size_t found = 0;
  for (std::size_t j = 0; j < c.size() && found < want; ++j) {
    std::size_t pattern = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (c[j].test(points[i])) pattern |= std::size_t{1} << i;
    }
    if (!witness[pattern]) {
      witness[pattern] = j;
      ++found;
    }
  }
  if (found < want) return std::nullopt;
  ShatteredSetCert cert{points, {}};
  for (const auto& w : witness) cert.witnesses.push_back(c[*w]);
  return cert;
}

}  // namespace detail

// Largest shattered set with its witnesses. Requires a nonempty class.
inline ShatteredSetCert vc_certificate(const ConceptClass& c) {
  if (c.empty()) throw InvalidArgument("vc_certificate: empty class");
  ShatteredSetCert best = *detail::shattered_witnesses(c, {});
  const int bound = floor_log2(c.size());
  std::vector<std::size_t> current;
  // Shattered sets are closed under subsets, so extending in index order
  // reaches every one of them.
  std::function<void(std::size_t)> extend = [&](std::size_t start) {
    for (std::size_t x = start; x < c.domain_size(); ++x) {
      if (static_cast<int>(best.points.size()) >= bound) return;
      if (current.size() + (c.domain_size() - x) <= best.points.size()) return;
      current.push_back(x);
      if (auto cert = detail::shattered_witnesses(c, current)) {
        if (current.size() > best.points.size()) best = std::move(*cert);
        extend(x + 1);
      }
      current.pop_back();
    }
  };
  extend(0);
  return best;
}

// -1 for the empty class.
inline int vc_dim(const ConceptClass& c) {
  return c.empty() ? -1 : static_cast<int>(vc_certificate(c).points.size());
}

inline CertificateCheck verify_shattered_set(const ConceptClass& c, const ShatteredSetCert& s) {
  if (s.points.size() >= 63) return CertificateCheck::fail("too many points");
  std::vector<std::size_t> sorted = s.points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return CertificateCheck::fail("shattered points are not distinct");
  }
  if (!sorted.empty() && sorted.back() >= c.domain_size()) {
    return CertificateCheck::fail("shattered point outside the domain");
  }
  const std::size_t want = std::size_t{1} << s.points.size();
  if (s.witnesses.size() != want) {
    return CertificateCheck::fail("expected " + std::to_string(want) + " witnesses");
  }
  for (std::size_t p = 0; p < want; ++p) {
    const Hypothesis& h = s.witnesses[p];
    if (h.size() != c.domain_size() || !c.contains(h)) {
      return CertificateCheck::fail("witness " + std::to_string(p) + " is not a hypothesis of the class");
    }
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      if (h.test(s.points[i]) != (((p >> i) & 1) != 0)) {
        return CertificateCheck::fail("witness " + std::to_string(p) + " does not realize its pattern");
      }
    }
  }
  return {};
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// sum_{i <= d} C(n, i); 0 for d < 0.
inline std::uint64_t binomial_sum(std::uint64_t n, int d) {
  std::uint64_t total = 0;
  for (int i = 0; i <= d && static_cast<std::uint64_t>(i) <= n; ++i) total += binomial(n, i);
  return total;
}

struct SspRow {
  std::size_t n = 0;
  std::size_t subsets_checked = 0;
  bool exhaustive = true;
  std::size_t max_patterns = 0;
  std::uint64_t bound = 0;
  double max_ratio = 0.0;  // max pattern_count / bound
};

struct SspReport {
  int vc = -1;
  std::vector<SspRow> rows;
  bool holds = true;
};

// Checks pattern_count <= C(n, <= vc) on every n-subset, or on `sample_budget`
// random n-subsets when there are more than that.
inline SspReport ssp_check(const ConceptClass& c, const std::vector<std::size_t>& sample_sizes,
                           std::size_t sample_budget = 20000, std::uint64_t seed = 0) {
  SspReport report;
  report.vc = vc_dim(c);
  const std::size_t m = c.domain_size();
  for (std::size_t n : sample_sizes) {
    if (n > m) throw InvalidArgument("ssp_check: sample size exceeds the domain");
    SspRow row;
    row.n = n;
    row.bound = std::max<std::uint64_t>(binomial_sum(n, report.vc), 1);
    auto visit = [&](const std::vector<std::size_t>& pts) {
      const std::size_t count = c.empty() ? 0 : pattern_count(c, pts);
      row.max_patterns = std::max(row.max_patterns, count);
      row.max_ratio = std::max(row.max_ratio, static_cast<double>(count) / static_cast<double>(row.bound));
      ++row.subsets_checked;
    };
    if (binomial(m, n) <= sample_budget) {
      std::vector<std::size_t> pts(n);
      std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t idx, std::size_t start) {
        if (idx == n) {
          visit(pts);
          return;
        }
        for (std::size_t x = start; x + (n - idx) <= m; ++x) {
          pts[idx] = x;
          rec(idx + 1, x + 1);
        }
      };
      rec(0, 0);
    } else {
      row.exhaustive = false;
      Rng rng = derive_rng(seed, n);
      std::vector<std::size_t> all(m);
      for (std::size_t x = 0; x < m; ++x) all[x] = x;
      for (std::size_t t = 0; t < sample_budget; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
          std::swap(all[i], all[i + uniform_below(rng, m - i)]);
        }
        visit({all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n)});
      }
    }
    if (row.max_patterns > row.bound) report.holds = false;
    report.rows.push_back(row);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Threshold dimension

struct ThresholdDimOptions {
  // Chains of this length stop the search; the result is then a lower bound.
  std::size_t max_k = 12;
  std::size_t max_states = 2'000'000;
};

struct ThresholdDimResult {
  std::size_t k = 0;
  HalfGraphCert cert;
  bool exact = true;  // false: k is only a lower bound
};

inline CertificateCheck verify_half_graph(const ConceptClass& c, const HalfGraphCert& g) {
  const std::size_t k = g.points.size();
  if (g.hypotheses.size() != k) return CertificateCheck::fail("points and hypotheses differ in count");
  std::vector<std::size_t> pts = g.points;
  std::sort(pts.begin(), pts.end());
  if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) {
    return CertificateCheck::fail("half-graph points are not distinct");
  }
  if (!pts.empty() && pts.back() >= c.domain_size()) {
    return CertificateCheck::fail("half-graph point outside the domain");
  }
  std::vector<Hypothesis> hs = g.hypotheses;
  std::sort(hs.begin(), hs.end());
  if (std::adjacent_find(hs.begin(), hs.end()) != hs.end()) {
    return CertificateCheck::fail("half-graph hypotheses are not distinct");
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (g.hypotheses[j].size() != c.domain_size() || !c.contains(g.hypotheses[j])) {
      return CertificateCheck::fail("h_" + std::to_string(j + 1) + " is not a hypothesis of the class");
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (g.hypotheses[j].test(g.points[i]) != (i < j)) {
        return CertificateCheck::fail("x_" + std::to_string(i + 1) + " in h_" + std::to_string(j + 1) +
                                      " should be " + (i < j ? "true" : "false"));
      }
    }
  }
  return {};
}

// Largest k admitting x_1..x_k, h_1..h_k with x_i in h_j iff i < j.
//
// Builds the chain one pair at a time. After choosing (x_1,h_1)..(x_t,h_t),
// later points must avoid every chosen hypothesis and later hypotheses must
// contain every chosen point, so the remaining search depends only on the
// candidate sets (P, Q), which are memoized.
inline ThresholdDimResult threshold_dim(const ConceptClass& c, ThresholdDimOptions opts = {}) {
  ThresholdDimResult result;
  if (c.empty()) return result;
  const std::size_t m = c.domain_size();
  LdimEngine columns(c);  // only for the per-point hypothesis masks

  struct Entry {
    std::size_t value = 0;
    std::size_t point = 0;
    std::size_t hyp = 0;
  };
  struct Key {
    Bits points;
    Bits hyps;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return k.points.hash() * 31 + k.hyps.hash(); }
  };
  std::unordered_map<Key, Entry, KeyHash> memo;
  const std::size_t cap = opts.max_k;
  bool aborted = false;

  std::function<std::size_t(const Bits&, const Bits&)> solve = [&](const Bits& points,
                                                                   const Bits& hyps) -> std::size_t {
    const std::size_t limit = std::min({points.count(), hyps.count(), cap});
    if (limit == 0 || aborted) return 0;
    Key key{points, hyps};
    if (auto it = memo.find(key); it != memo.end()) return it->second.value;
    if (memo.size() >= opts.max_states) {
      aborted = true;
      return 0;
    }
    Entry best;
    points.for_each_set([&](std::size_t x) {
      if (best.value >= limit || aborted) return;
      // Candidates h_t: in Q and excluding x.
      Bits cands = hyps;
      cands.subtract(columns.ones(x));
      Bits next_hyps = hyps & columns.ones(x);
      cands.for_each_set([&](std::size_t j) {
        if (best.value >= limit || aborted) return;
        Bits next_points = points;
        next_points.reset(x);
        next_points.subtract(c[j]);
        const std::size_t v = std::min(cap, 1 + solve(next_points, next_hyps));
        if (v > best.value) best = {v, x, j};
      });
    });
    if (!aborted) memo.emplace(std::move(key), best);
    return best.value;
  };

  Bits all_points(m, true);
  Bits all_hyps(c.size(), true);
  solve(all_points, all_hyps);

  if (aborted) {
    // Greedy chain as a certified lower bound.
    Bits points = all_points, hyps = all_hyps;
    while (true) {
      bool moved = false;
      for (std::size_t x = points.find_first(); x < m && !moved; x = points.find_next(x)) {
        Bits cands = hyps;
        cands.subtract(columns.ones(x));
        const std::size_t j = cands.find_first();
        if (j < c.size()) {
          result.cert.points.push_back(x);
          result.cert.hypotheses.push_back(c[j]);
          hyps &= columns.ones(x);
          points.reset(x);
          points.subtract(c[j]);
          moved = true;
        }
      }
      if (!moved) break;
    }
    result.k = result.cert.points.size();
    result.exact = false;
    return result;
  }

  Bits points = all_points, hyps = all_hyps;
  while (true) {
    auto it = memo.find(Key{points, hyps});
    if (it == memo.end() || it->second.value == 0) break;
    const Entry e = it->second;
    result.cert.points.push_back(e.point);
    result.cert.hypotheses.push_back(c[e.hyp]);
    if (result.cert.points.size() >= cap) break;
    hyps &= columns.ones(e.point);
    points.reset(e.point);
    points.subtract(c[e.hyp]);
  }
  result.k = result.cert.points.size();
  result.exact = result.k < cap;
  return result;
}

// ---------------------------------------------------------------------------
// Duality

struct DualResult {
  ConceptClass dual;
  std::size_t merged = 0;  // input points whose dual rows duplicated another
};

// Points and hypotheses exchange roles: the dual domain is the hypothesis list
// and each original point x becomes the row (h_0(x), h_1(x), ...).
inline DualResult dualize(const ConceptClass& c) {
  if (c.empty()) throw InvalidArgument("dualize: empty class");
  std::vector<Hypothesis> rows;
  rows.reserve(c.domain_size());
  for (std::size_t x = 0; x < c.domain_size(); ++x) {
    Hypothesis row(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) row.set(j, c[j].test(x));
    rows.push_back(std::move(row));
  }
  std::vector<std::string> labels;
  for (const auto& h : c.hypotheses()) labels.push_back("h" + h.to_string());
  std::size_t merged = 0;
  ConceptClass dual = ConceptClass::merging_duplicates(Domain(std::move(labels)), std::move(rows), &merged);
  return {std::move(dual), merged};
}

}  // namespace littlestone
