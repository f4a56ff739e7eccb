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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "littlestone/core.hpp"
#include "littlestone/dims.hpp"
#include "littlestone/error.hpp"
#include "littlestone/learners.hpp"
#include "littlestone/random.hpp"

namespace littlestone {

// ---------------------------------------------------------------------------
// PEC simulation

struct PecStep {
  std::size_t step = 0;  // 0 is the hypothesis on the empty sample
  std::size_t hypothesis_id = 0;
  double loss = 0.0;
  bool mind_change = false;
};

struct PecTrace {
  std::size_t horizon = 0;
  std::vector<Hypothesis> hypotheses;  // distinct outputs, indexed by hypothesis_id
  std::vector<PecStep> steps;          // empty unless recording was requested
  std::size_t mind_changes = 0;
  // Smallest n such that every h_k with n <= k <= horizon has zero loss.
  std::optional<std::size_t> first_zero_loss_step;
  double terminal_loss = 0.0;
};

// Draws `horizon` i.i.d. examples from d and feeds them to a freshly reset
// learner. Eventual correctness is only observed up to the horizon.
inline PecTrace simulate_pec(Learner& learner, const FiniteDistribution& d, const ConceptClass& c,
                             std::size_t horizon, std::uint64_t seed, bool record_steps = true) {
  if (!is_realizable_dist(c, d)) throw InvalidArgument("simulate_pec: distribution is not realizable by the class");
  learner.reset();
  Rng rng = derive_rng(seed, 0x9ec);
  PecTrace trace;
  trace.horizon = horizon;
  trace.hypotheses.push_back(learner.current_hypothesis());
  std::size_t id = 0;
  double current_loss = loss(trace.hypotheses[0], d);
  std::optional<std::size_t> last_positive;
  if (current_loss > 0.0) last_positive = 0;
  if (record_steps) trace.steps.push_back({0, 0, current_loss, false});
  for (std::size_t n = 1; n <= horizon; ++n) {
    learner.observe(d.sample(rng));
    const bool changed = learner.last_was_mind_change();
    if (changed) {
      const Hypothesis& h = learner.current_hypothesis();
      auto it = std::find(trace.hypotheses.begin(), trace.hypotheses.end(), h);
      id = static_cast<std::size_t>(it - trace.hypotheses.begin());
      if (it == trace.hypotheses.end()) trace.hypotheses.push_back(h);
      current_loss = loss(h, d);
    }
    if (current_loss > 0.0) last_positive = n;
    if (record_steps) trace.steps.push_back({n, id, current_loss, changed});
  }
  trace.mind_changes = learner.mind_changes();
  trace.terminal_loss = current_loss;
  if (current_loss == 0.0) trace.first_zero_loss_step = last_positive ? *last_positive + 1 : 0;
  return trace;
}

struct PecTrialSummary {
  std::size_t trial = 0;
  std::size_t mind_changes = 0;
  std::optional<std::size_t> first_zero_loss_step;
  double terminal_loss = 0.0;
};

// Independent trials with per-trial streams derived from (seed, trial).
inline std::vector<PecTrialSummary> run_pec_trials(const LearnerFactory& factory, const FiniteDistribution& d,
                                                   const ConceptClass& c, std::size_t horizon,
                                                   std::size_t trials, std::uint64_t seed) {
  std::vector<PecTrialSummary> out;
  out.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = splitmix64(seed ^ splitmix64(t));
    auto learner = factory(trial_seed);
    const PecTrace trace = simulate_pec(*learner, d, c, horizon, trial_seed, false);
    out.push_back({t, trace.mind_changes, trace.first_zero_loss_step, trace.terminal_loss});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Global stability

struct GlobalStabilityEstimate {
  Hypothesis modal;
  double frequency = 0.0;
  double half_width = 0.0;  // 95% Wilson score half-width
  std::size_t trials = 0;
  // Output hypotheses with their counts, most frequent first.
  std::vector<std::pair<Hypothesis, std::size_t>> table;
};

inline double wilson_half_width(std::size_t successes, std::size_t trials, double z = 1.959963984540054) {
  if (trials == 0) return 0.0;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  return z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
}

// Runs `trials` independent n-sample draws from d through fresh learners and
// tabulates the output hypotheses.
inline GlobalStabilityEstimate estimate_global_stability(const LearnerFactory& factory, const FiniteDistribution& d,
                                                         std::size_t n, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw InvalidArgument("estimate_global_stability: trials must be positive");
  std::map<Hypothesis, std::size_t> counts;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = splitmix64(seed ^ splitmix64(t));
    auto learner = factory(trial_seed);
    Rng rng = derive_rng(trial_seed, 0x6157);
    for (std::size_t i = 0; i < n; ++i) learner->observe(d.sample(rng));
    ++counts[learner->current_hypothesis()];
  }
  GlobalStabilityEstimate est;
  est.trials = trials;
  est.table.assign(counts.begin(), counts.end());
  std::stable_sort(est.table.begin(), est.table.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  est.modal = est.table.front().first;
  est.frequency = static_cast<double>(est.table.front().second) / static_cast<double>(trials);
  est.half_width = wilson_half_width(est.table.front().second, trials);
  return est;
}

// ---------------------------------------------------------------------------
// Mind-change forcing adversary

enum class VerdictKind { kExceededBudget, kPersistentError, kInconclusive, kSurvived };

inline std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::kExceededBudget: return "EXCEEDED_BUDGET";
    case VerdictKind::kPersistentError: return "PERSISTENT_ERROR";
    case VerdictKind::kInconclusive: return "INCONCLUSIVE";
    case VerdictKind::kSurvived: return "SURVIVED";
  }
  return "?";
}

struct AdversaryVerdict {
  VerdictKind kind = VerdictKind::kInconclusive;
  LabeledSequence sequence;
  // Uniform over the distinct examples of `sequence`; set for PERSISTENT_ERROR.
  std::optional<FiniteDistribution> distribution;
  std::vector<TraceRecord> transcript;
  std::size_t mind_changes = 0;
  std::size_t budget = 0;
  MistakeTreeCert tree;
  std::vector<std::size_t> branch;  // heap indices of the tree nodes visited
};

struct AdversaryOptions {
  std::size_t repetition_cap = 10'000;
  // When the class has no tree of depth budget+1: throw (true) or run on the
  // deepest tree available and report SURVIVED if the learner stays in budget.
  bool shallow_tree_is_error = true;
  std::uint64_t learner_seed = 0;
};

// Runs the inductive construction along `tree` against one learner.
//
// Level j starts with the learner having made j mind changes and holding a
// hypothesis that errs on the last example z. z is fed, then the examples of
// the level's sequence are repeated round-robin until the learner changes its
// mind. The next example sits at the child of z's node on z's label, with the
// label the learner's new hypothesis gets wrong.
inline AdversaryVerdict force_mind_changes_on_tree(const LearnerFactory& factory, const MistakeTreeCert& tree,
                                                   std::size_t budget, const AdversaryOptions& opts = {}) {
  if (tree.depth == 0) throw InvalidArgument("force_mind_changes: tree must have depth >= 1");
  AdversaryVerdict v;
  v.budget = budget;
  v.tree = tree;
  auto learner = factory(opts.learner_seed);

  auto feed = [&](const LabeledExample& z) {
    v.transcript.push_back(learner->observe_traced(z));
    v.sequence.push_back(z);
  };
  auto finish = [&](VerdictKind kind) {
    v.kind = kind;
    v.mind_changes = learner->mind_changes();
    if (kind == VerdictKind::kPersistentError) v.distribution = FiniteDistribution::uniform_over(v.sequence);
    return v;
  };

  std::size_t node = 0;
  std::size_t changes = 0;
  v.branch.push_back(node);
  LabeledExample z{tree.nodes[node], !learner->predict(tree.nodes[node])};
  while (true) {
    feed(z);
    const std::size_t level_len = v.sequence.size();
    std::size_t reps = 0;
    // A frozen learner never moves again; repeating would only pad the transcript.
    while (learner->mind_changes() == changes && reps < opts.repetition_cap && !learner->frozen()) {
      feed(v.sequence[reps % level_len]);
      ++reps;
    }
    if (learner->mind_changes() == changes) {
      return finish(learner->frozen() ? VerdictKind::kPersistentError : VerdictKind::kInconclusive);
    }
    changes = learner->mind_changes();
    if (changes > budget) return finish(VerdictKind::kExceededBudget);
    const std::size_t child = 2 * node + 1 + (z.label ? 1 : 0);
    if (child >= tree.nodes.size()) return finish(VerdictKind::kSurvived);
    node = child;
    v.branch.push_back(node);
    z = {tree.nodes[node], !learner->predict(tree.nodes[node])};
  }
}

// Defeats any learner whose mind changes stay within `budget` on a class with
// Ldim > budget: either the budget is exceeded on a realizable sequence or the
// learner freezes on a hypothesis with positive loss.
inline AdversaryVerdict force_mind_changes(const LearnerFactory& factory, const ConceptClass& c, std::size_t budget,
                                           const AdversaryOptions& opts = {}) {
  if (c.empty()) throw InvalidArgument("force_mind_changes: empty class");
  LdimEngine engine(c);
  const int d = engine.ldim();
  std::size_t depth = budget + 1;
  if (d < static_cast<int>(depth)) {
    if (opts.shallow_tree_is_error || d < 1) {
      throw InvalidArgument("force_mind_changes: Ldim " + std::to_string(d) + " admits no shattered tree of depth " +
                            std::to_string(depth));
    }
    depth = static_cast<std::size_t>(d);
  }
  return force_mind_changes_on_tree(factory, engine.certificate(engine.full(), depth), budget, opts);
}

}  // namespace littlestone
