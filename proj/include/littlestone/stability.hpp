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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "littlestone/core.hpp"
#include "littlestone/dims.hpp"
#include "littlestone/error.hpp"
#include "littlestone/learners.hpp"

namespace littlestone {

enum class InfoUnit { kNats, kBits };

inline double to_unit(double nats, InfoUnit unit) { return unit == InfoUnit::kBits ? nats / std::log(2.0) : nats; }

// Probability vector over an outcome list held elsewhere (a JointTable or the
// caller). Two distributions are comparable iff they have the same length.
class OutputDistribution {
 public:
  OutputDistribution() = default;
  explicit OutputDistribution(std::vector<double> p) : p_(std::move(p)) {
    if (p_.empty()) throw InvalidArgument("output distribution over an empty outcome space");
    double sum = 0.0;
    for (double v : p_) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("output distribution has a negative or non-finite entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw InvalidArgument("output distribution sums to " + std::to_string(sum) + ", expected 1");
    }
  }

  static OutputDistribution dirac(std::size_t size, std::size_t at) {
    if (at >= size) throw InvalidArgument("dirac outside the outcome space");
    std::vector<double> p(size, 0.0);
    p[at] = 1.0;
    return OutputDistribution(std::move(p));
  }
  static OutputDistribution uniform(std::size_t size) {
    if (size == 0) throw InvalidArgument("uniform over an empty outcome space");
    return OutputDistribution(std::vector<double>(size, 1.0 / static_cast<double>(size)));
  }

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& probabilities() const { return p_; }

 private:
  std::vector<double> p_;
};

namespace detail {
inline void require_same_space(const OutputDistribution& p, const OutputDistribution& q, const char* what) {
  if (p.size() != q.size()) {
    throw InvalidArgument(std::string(what) + ": outcome spaces differ (" + std::to_string(p.size()) + " vs " +
                          std::to_string(q.size()) + " outcomes)");
  }
}

inline double entropy_nats(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}
}  // namespace detail

// Least delta with p(E) <= e^eps q(E) + delta for every event E.
inline double hockey_stick(const OutputDistribution& p, const OutputDistribution& q, double eps) {
  detail::require_same_space(p, q, "hockey_stick");
  if (!(eps >= 0.0)) throw InvalidArgument("hockey_stick: eps must be >= 0");
  const double scale = std::exp(eps);
  double delta = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) delta += std::max(0.0, p[i] - scale * q[i]);
  return delta;
}

inline double hockey_stick_symmetric(const OutputDistribution& p, const OutputDistribution& q, double eps) {
  return std::max(hockey_stick(p, q, eps), hockey_stick(q, p, eps));
}

// KL(p || q); +inf when p is not absolutely continuous w.r.t. q.
inline double kl(const OutputDistribution& p, const OutputDistribution& q, InfoUnit unit = InfoUnit::kNats) {
  detail::require_same_space(p, q, "kl");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
    sum += p[i] * std::log(p[i] / q[i]);
  }
  // Rounding can leave a tiny negative value when p == q.
  return to_unit(std::max(0.0, sum), unit);
}

// ---------------------------------------------------------------------------
// Joint law of (S, A(S))

struct JointRow {
  LabeledSequence sample;
  double probability = 0.0;
  OutputDistribution posterior;
};

class JointTable {
 public:
  JointTable(std::vector<Hypothesis> outcomes, std::vector<JointRow> rows)
      : outcomes_(std::move(outcomes)), rows_(std::move(rows)) {
    if (rows_.empty()) throw InvalidArgument("joint table without rows");
    double sum = 0.0;
    for (const auto& r : rows_) {
      if (r.posterior.size() != outcomes_.size()) throw InvalidArgument("joint table row over a different outcome space");
      if (!(r.probability >= 0.0)) throw InvalidArgument("joint table row with negative probability");
      sum += r.probability;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw InvalidArgument("joint table sample probabilities sum to " + std::to_string(sum));
    }
  }

  const std::vector<Hypothesis>& outcomes() const { return outcomes_; }
  const std::vector<JointRow>& rows() const { return rows_; }

  // E_S[A(S)], renormalized against rounding.
  OutputDistribution mean_posterior() const {
    std::vector<double> m(outcomes_.size(), 0.0);
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += r.probability * r.posterior[i];
    }
    const double total = std::accumulate(m.begin(), m.end(), 0.0);
    for (double& v : m) v /= total;
    return OutputDistribution(std::move(m));
  }

  // Outcome distribution laid out on this table's outcome list.
  OutputDistribution distribution_of(const std::vector<std::pair<Hypothesis, double>>& atoms) const {
    std::vector<double> p(outcomes_.size(), 0.0);
    for (const auto& [h, w] : atoms) {
      auto it = std::lower_bound(outcomes_.begin(), outcomes_.end(), h);
      if (it == outcomes_.end() || !(*it == h)) throw InvalidArgument("hypothesis outside the joint table's outcomes");
      p[static_cast<std::size_t>(it - outcomes_.begin())] += w;
    }
    return OutputDistribution(std::move(p));
  }

 private:
  std::vector<Hypothesis> outcomes_;  // sorted, distinct
  std::vector<JointRow> rows_;
};

// I(S; A(S)) = H(E_S A(S)) - E_S H(A(S)).
inline double mutual_information(const JointTable& joint, InfoUnit unit = InfoUnit::kNats) {
  const OutputDistribution mean = joint.mean_posterior();
  double conditional = 0.0;
  for (const auto& r : joint.rows()) conditional += r.probability * detail::entropy_nats(r.posterior.probabilities());
  return to_unit(std::max(0.0, detail::entropy_nats(mean.probabilities()) - conditional), unit);
}

// E_S[kl(A(S) || prior)].
inline double pac_bayes_gap(const JointTable& joint, const OutputDistribution& prior, InfoUnit unit = InfoUnit::kNats) {
  double sum = 0.0;
  for (const auto& r : joint.rows()) {
    if (r.probability == 0.0) continue;
    const double d = kl(r.posterior, prior, InfoUnit::kNats);
    if (std::isinf(d)) return d;
    sum += r.probability * d;
  }
  return to_unit(sum, unit);
}

// Output law of a learner on a fixed sample, as (hypothesis, probability).
using PosteriorFn = std::function<std::vector<std::pair<Hypothesis, double>>(const LabeledSequence&)>;

// Deterministic learner: Dirac at its output after reading S.
inline PosteriorFn deterministic_posterior(LearnerFactory factory, std::uint64_t seed = 0) {
  return [factory = std::move(factory), seed](const LabeledSequence& s) {
    auto learner = factory(seed);
    for (const auto& z : s) learner->observe(z);
    return std::vector<std::pair<Hypothesis, double>>{{learner->current_hypothesis(), 1.0}};
  };
}

// Exact output law of GibbsLearner: a uniform draw from the version space,
// redrawn uniformly from the new version space whenever contradicted.
inline PosteriorFn gibbs_posterior(std::shared_ptr<const LdimEngine> engine) {
  return [engine = std::move(engine)](const LabeledSequence& s) {
    const std::size_t k = engine->class_size();
    Bits vs = engine->full();
    std::vector<double> mass(k, 1.0 / static_cast<double>(k));
    for (const auto& z : s) {
      Bits next = engine->restrict(vs, z.point, z.label);
      if (next.none()) throw UnrealizableInput("gibbs_posterior: sample is not realizable");
      double moved = 0.0;
      vs.for_each_set([&](std::size_t i) {
        if (!next.test(i)) {
          moved += mass[i];
          mass[i] = 0.0;
        }
      });
      const double share = moved / static_cast<double>(next.count());
      next.for_each_set([&](std::size_t i) { mass[i] += share; });
      vs = std::move(next);
    }
    std::vector<std::pair<Hypothesis, double>> out;
    for (std::size_t i = 0; i < k; ++i) {
      if (mass[i] > 0.0) out.emplace_back(engine->concept_class()[i], mass[i]);
    }
    return out;
  };
}

// w * a + (1 - w) * b: a learner that flips a w-coin once, then runs a or b.
inline PosteriorFn mixture_posterior(PosteriorFn a, PosteriorFn b, double w) {
  if (!(w >= 0.0 && w <= 1.0)) throw InvalidArgument("mixture weight must lie in [0, 1]");
  return [a = std::move(a), b = std::move(b), w](const LabeledSequence& s) {
    auto out = a(s);
    for (auto& atom : out) atom.second *= w;
    for (auto atom : b(s)) {
      atom.second *= 1.0 - w;
      out.push_back(std::move(atom));
    }
    return out;
  };
}

struct InformationResult {
  double mutual_information = 0.0;
  JointTable joint;
};

inline constexpr std::uint64_t kDefaultSampleBudget = 1'000'000;

// Enumerates all |supp(D)|^n samples in lexicographic atom order and builds
// the exact joint law of (S, A(S)).
inline JointTable enumerate_joint(const PosteriorFn& posterior, const FiniteDistribution& d, std::size_t n,
                                  std::uint64_t budget = kDefaultSampleBudget) {
  const std::size_t k = d.support_size();
  const double count = std::pow(static_cast<double>(k), static_cast<double>(n));
  if (count > static_cast<double>(budget)) {
    throw ResourceLimit("sample space of " + std::to_string(static_cast<std::uint64_t>(count)) +
                        " samples exceeds the budget of " + std::to_string(budget));
  }
  struct Sparse {
    LabeledSequence sample;
    double probability;
    std::vector<std::pair<Hypothesis, double>> atoms;
  };
  std::vector<Sparse> sparse;
  std::vector<Hypothesis> outcomes;
  std::vector<std::size_t> digits(n, 0);
  while (true) {
    LabeledSequence s;
    s.reserve(n);
    double p = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      s.push_back(d.example(digits[i]));
      p *= d.atoms()[digits[i]].weight;
    }
    auto atoms = posterior(s);
    for (const auto& a : atoms) outcomes.push_back(a.first);
    sparse.push_back({std::move(s), p, std::move(atoms)});
    std::size_t pos = n;
    while (pos > 0 && ++digits[pos - 1] == k) digits[--pos] = 0;
    if (pos == 0) break;
  }
  std::sort(outcomes.begin(), outcomes.end());
  outcomes.erase(std::unique(outcomes.begin(), outcomes.end()), outcomes.end());

  std::vector<JointRow> rows;
  rows.reserve(sparse.size());
  double total = 0.0;
  for (const auto& sp : sparse) total += sp.probability;
  for (auto& sp : sparse) {
    std::vector<double> dense(outcomes.size(), 0.0);
    for (const auto& [h, w] : sp.atoms) {
      dense[static_cast<std::size_t>(std::lower_bound(outcomes.begin(), outcomes.end(), h) - outcomes.begin())] += w;
    }
    rows.push_back({std::move(sp.sample), sp.probability / total, OutputDistribution(std::move(dense))});
  }
  return JointTable(std::move(outcomes), std::move(rows));
}

inline InformationResult learner_mutual_information(const PosteriorFn& posterior, const ConceptClass& c,
                                                    const FiniteDistribution& d, std::size_t n,
                                                    InfoUnit unit = InfoUnit::kNats,
                                                    std::uint64_t budget = kDefaultSampleBudget) {
  if (!is_realizable_dist(c, d)) throw InvalidArgument("learner_mutual_information: distribution is not realizable");
  JointTable joint = enumerate_joint(posterior, d, n, budget);
  const double mi = mutual_information(joint, unit);
  return {mi, std::move(joint)};
}

inline InformationResult learner_mutual_information(const LearnerFactory& factory, const ConceptClass& c,
                                                    const FiniteDistribution& d, std::size_t n,
                                                    InfoUnit unit = InfoUnit::kNats,
                                                    std::uint64_t budget = kDefaultSampleBudget) {
  return learner_mutual_information(deterministic_posterior(factory), c, d, n, unit, budget);
}

// ---------------------------------------------------------------------------
// eps-good point sets

struct GoodCheck {
  bool good = true;
  std::optional<Hypothesis> violating;
};

namespace detail {
inline void require_points(const ConceptClass& c, std::span<const std::size_t> a, bool nonempty) {
  if (nonempty && a.empty()) throw InvalidArgument("point set must be nonempty");
  std::vector<std::size_t> sorted(a.begin(), a.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("point set has repeated points");
  }
  if (!sorted.empty() && sorted.back() >= c.domain_size()) {
    throw InvalidArgument("point " + std::to_string(sorted.back()) + " outside the domain");
  }
}
}  // namespace detail

// Every h is nearly constant on A: one of its sides on A has size < eps|A|.
inline GoodCheck epsilon_good_check(std::span<const std::size_t> a, const ConceptClass& c, double eps) {
  detail::require_points(c, a, true);
  const double bound = eps * static_cast<double>(a.size());
  for (const auto& h : c.hypotheses()) {
    std::size_t ones = 0;
    for (std::size_t x : a) ones += h.test(x) ? 1 : 0;
    const std::size_t zeros = a.size() - ones;
    if (!(static_cast<double>(std::min(ones, zeros)) < bound)) return {false, h};
  }
  return {};
}

struct GoodSubsetResult {
  std::vector<std::size_t> subset;  // sorted
  bool exact = true;                // false when the greedy descent was used
  std::optional<double> exponent;   // log|A| / log|Y|, for |Y| >= 2
};

inline constexpr std::size_t kDefaultGoodSubsetBudget = 16;

// Largest eps-good A inside Y. Exact by size-descending enumeration for
// |Y| <= budget, otherwise greedy removal of the point that leaves the fewest
// violating hypotheses.
inline GoodSubsetResult largest_good_subset(std::span<const std::size_t> y, const ConceptClass& c, double eps,
                                            std::size_t budget = kDefaultGoodSubsetBudget) {
  detail::require_points(c, y, true);
  std::vector<std::size_t> ys(y.begin(), y.end());
  std::sort(ys.begin(), ys.end());
  const std::size_t k = ys.size();
  GoodSubsetResult r;
  auto finish = [&](std::vector<std::size_t> subset) {
    r.subset = std::move(subset);
    if (k >= 2) r.exponent = std::log(static_cast<double>(r.subset.size())) / std::log(static_cast<double>(k));
    return r;
  };

  if (k <= budget && k < 32) {
    // Positions of each hypothesis' ones within Y.
    std::vector<std::uint32_t> masks;
    masks.reserve(c.size());
    for (const auto& h : c.hypotheses()) {
      std::uint32_t m = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if (h.test(ys[i])) m |= std::uint32_t{1} << i;
      }
      masks.push_back(m);
    }
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    auto good = [&](std::uint32_t s, int size) {
      const double bound = eps * size;
      for (std::uint32_t m : masks) {
        const int ones = std::popcount(m & s);
        if (!(static_cast<double>(std::min(ones, size - ones)) < bound)) return false;
      }
      return true;
    };
    for (int size = static_cast<int>(k); size >= 1; --size) {
      // Gosper's hack over size-element masks, in increasing order.
      std::uint32_t s = (size == 32) ? ~0u : (std::uint32_t{1} << size) - 1;
      const std::uint32_t limit = std::uint32_t{1} << k;
      while (s < limit) {
        if (good(s, size)) {
          std::vector<std::size_t> out;
          for (std::size_t i = 0; i < k; ++i) {
            if (s >> i & 1u) out.push_back(ys[i]);
          }
          return finish(std::move(out));
        }
        const std::uint32_t low = s & (~s + 1);
        const std::uint32_t ripple = s + low;
        if (ripple == 0) break;
        s = (((ripple ^ s) >> 2) / low) | ripple;
      }
    }
    return finish({ys.front()});  // unreachable: singletons are good for eps > 0
  }

  r.exact = false;
  auto violations = [&](const std::vector<std::size_t>& a) {
    std::size_t v = 0;
    const double bound = eps * static_cast<double>(a.size());
    for (const auto& h : c.hypotheses()) {
      std::size_t ones = 0;
      for (std::size_t x : a) ones += h.test(x) ? 1 : 0;
      if (!(static_cast<double>(std::min(ones, a.size() - ones)) < bound)) ++v;
    }
    return v;
  };
  std::vector<std::size_t> current = ys;
  while (current.size() > 1 && violations(current) > 0) {
    std::size_t best = 0, best_v = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < current.size(); ++i) {
      std::vector<std::size_t> trial = current;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      const std::size_t v = violations(trial);
      if (v < best_v) {
        best_v = v;
        best = i;
      }
    }
    current.erase(current.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return finish(std::move(current));
}

// ---------------------------------------------------------------------------
// Graphs, majority opinions, eps-excellent sets

class Graph {
 public:
  explicit Graph(std::size_t n) : adj_(n, Bits(n)) {}

  // Rows of 0/1 entries; must be square and symmetric.
  static Graph from_matrix(const std::vector<std::vector<int>>& m) {
    Graph g(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i].size() != m.size()) throw InvalidArgument("adjacency row " + std::to_string(i) + " has wrong length");
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[i][j] != 0 && m[i][j] != 1) throw InvalidArgument("adjacency entries must be 0 or 1");
        if (m[i][j] != m[j][i]) {
          throw InvalidArgument("adjacency is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
        if (m[i][j]) g.adj_[i].set(j);
      }
    }
    return g;
  }

  void add_edge(std::size_t a, std::size_t b) {
    check(a);
    check(b);
    adj_[a].set(b);
    adj_[b].set(a);
  }

  std::size_t size() const { return adj_.size(); }
  bool adjacent(std::size_t a, std::size_t b) const { return adj_[a].test(b); }
  const Bits& neighbours(std::size_t v) const { return adj_[v]; }

  void check(std::size_t v) const {
    if (v >= adj_.size()) throw InvalidArgument("vertex " + std::to_string(v) + " outside the graph");
  }

 private:
  std::vector<Bits> adj_;
};

// Perfect matching between i and i + k, for i < k.
inline Graph make_perfect_matching(std::size_t k) {
  Graph g(2 * k);
  for (std::size_t i = 0; i < k; ++i) g.add_edge(i, i + k);
  return g;
}

// Half-graph on a_0..a_{k-1} (vertices 0..k-1) and b_0..b_{k-1} (k..2k-1):
// a_i ~ b_j iff i < j.
inline Graph make_half_graph(std::size_t k) {
  Graph g(2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) g.add_edge(i, k + j);
  }
  return g;
}

// t(x, A): 1 when x has few neighbours in A, 0 when it has few
// non-neighbours, nullopt when neither side is small.
inline std::optional<bool> majority_opinion(std::size_t x, std::span<const std::size_t> a, double eps,
                                            const Graph& g) {
  g.check(x);
  if (a.empty()) throw InvalidArgument("majority_opinion: A must be nonempty");
  std::size_t adjacent = 0;
  for (std::size_t v : a) {
    g.check(v);
    adjacent += g.adjacent(x, v) ? 1 : 0;
  }
  const double bound = eps * static_cast<double>(a.size());
  if (static_cast<double>(adjacent) < bound) return true;
  if (static_cast<double>(a.size() - adjacent) < bound) return false;
  return std::nullopt;
}

// Graph analogue of eps-good: every vertex has a defined opinion on A.
// Returns the first vertex without one.
inline std::optional<std::size_t> graph_good_violation(std::span<const std::size_t> a, double eps, const Graph& g) {
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (!majority_opinion(v, a, eps, g)) return v;
  }
  return std::nullopt;
}

inline bool graph_epsilon_good(std::span<const std::size_t> a, double eps, const Graph& g) {
  return !graph_good_violation(a, eps, g).has_value();
}

struct ExcellentCheck {
  bool excellent = true;
  std::optional<std::size_t> failing_set;  // index into the supplied good sets
  std::size_t exceptions = 0;              // for the failing set
};

// B is eps-excellent against `good_sets` if for each A some t agrees with
// t(b, A) for all but at most eps|B| of the b in B.
inline ExcellentCheck epsilon_excellent_check(std::span<const std::size_t> b, const Graph& g, double eps,
                                              const std::vector<std::vector<std::size_t>>& good_sets) {
  if (b.empty()) throw InvalidArgument("epsilon_excellent_check: B must be nonempty");
  for (std::size_t v : b) g.check(v);
  ExcellentCheck r;
  for (std::size_t i = 0; i < good_sets.size(); ++i) {
    const auto& a = good_sets[i];
    if (a.empty()) throw InvalidArgument("good set " + std::to_string(i) + " is empty");
    if (auto v = graph_good_violation(a, eps, g)) {
      throw InvalidArgument("set " + std::to_string(i) + " is not eps-good: vertex " + std::to_string(*v) +
                            " has no majority opinion");
    }
    std::size_t ones = 0;
    for (std::size_t v : b) ones += *majority_opinion(v, a, eps, g) ? 1 : 0;
    const std::size_t exceptions = std::min(ones, b.size() - ones);
    if (static_cast<double>(exceptions) > eps * static_cast<double>(b.size())) {
      r.excellent = false;
      r.failing_set = i;
      r.exceptions = exceptions;
      return r;
    }
  }
  return r;
}

// Every nonempty eps-good vertex set, in increasing mask order.
inline std::vector<std::vector<std::size_t>> all_good_sets(const Graph& g, double eps, std::size_t max_vertices = 16) {
  if (g.size() > max_vertices || g.size() >= 32) {
    throw ResourceLimit("all_good_sets: " + std::to_string(g.size()) + " vertices exceed the budget of " +
                        std::to_string(max_vertices));
  }
  std::vector<std::vector<std::size_t>> out;
  const std::uint32_t limit = std::uint32_t{1} << g.size();
  std::vector<std::size_t> a;
  for (std::uint32_t s = 1; s < limit; ++s) {
    a.clear();
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (s >> v & 1u) a.push_back(v);
    }
    if (graph_epsilon_good(a, eps, g)) out.push_back(a);
  }
  return out;
}

}  // namespace littlestone
