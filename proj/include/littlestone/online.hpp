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
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "littlestone/core.hpp"
#include "littlestone/dims.hpp"
#include "littlestone/error.hpp"
#include "littlestone/learners.hpp"
#include "littlestone/random.hpp"

namespace littlestone {

struct OnlineResult {
  std::size_t mistakes = 0;
  bool realizable = true;
  // Step (1-based) at which the learner rejected the input, if it did. Later
  // steps are scored against the hypothesis it held at that point.
  std::optional<std::size_t> learner_rejected_at;
  std::vector<TraceRecord> trace;
};

// Predict-then-reveal loop over S, from a reset learner.
inline OnlineResult run_online(Learner& learner, const ConceptClass& c, const LabeledSequence& s) {
  OnlineResult r;
  r.realizable = is_realizable_seq(c, s);
  learner.reset();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const LabeledExample& z = s[i];
    if (r.learner_rejected_at) {
      const bool predicted = learner.predict(z.point);
      if (predicted != z.label) ++r.mistakes;
      r.trace.push_back({i + 1, z.point, z.label, predicted, predicted != z.label, false,
                         learner.current_hypothesis()});
      continue;
    }
    try {
      r.trace.push_back(learner.observe_traced(z));
      if (r.trace.back().mistake) ++r.mistakes;
    } catch (const UnrealizableInput&) {
      r.learner_rejected_at = i + 1;
      const bool predicted = learner.predict(z.point);
      if (predicted != z.label) ++r.mistakes;
      r.trace.push_back({i + 1, z.point, z.label, predicted, predicted != z.label, false,
                         learner.current_hypothesis()});
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Expert cover

// One label-oblivious online predictor of the cover. It runs the SOA on its
// own outputs and flips the SOA's prediction at the steps in its subset. The
// engine must outlive the expert.
class CoverExpert {
 public:
  // `flip_steps` holds 1-based step indices.
  CoverExpert(const LdimEngine& engine, const std::vector<std::size_t>& flip_steps, std::size_t horizon)
      : engine_(&engine), flips_(horizon + 1), state_(SoaState::initial(engine)) {
    for (std::size_t i : flip_steps) {
      if (i == 0 || i > horizon) throw InvalidArgument("expert subset index outside 1..n");
      flips_.set(i);
    }
  }

  // Output for the next point of the stream; depends only on the points seen.
  bool next(std::size_t point) {
    ++step_;
    const bool soa = state_.hypothesis.test(point);
    if (dead_) return soa;
    const bool out = (step_ < flips_.size() && flips_.test(step_)) ? !soa : soa;
    try {
      state_.update(*engine_, {point, out});
    } catch (const UnrealizableInput&) {
      // Flipped into an empty side: no realizable sequence follows this path.
      dead_ = true;
    }
    return out;
  }

  std::size_t step() const { return step_; }

 private:
  const LdimEngine* engine_;
  Bits flips_;
  SoaState state_;
  std::size_t step_ = 0;
  bool dead_ = false;
};

struct ExpertCover {
  std::size_t n = 0;
  int d = 0;
  std::vector<std::vector<std::size_t>> subsets;  // 1-based, sorted, distinct
  std::shared_ptr<const LdimEngine> engine;

  std::vector<CoverExpert> experts() const {
    std::vector<CoverExpert> out;
    out.reserve(subsets.size());
    for (const auto& s : subsets) out.emplace_back(*engine, s, n);
    return out;
  }
};

inline constexpr std::uint64_t kDefaultMaxExperts = 1'000'000;

// One expert for every I subset of {1..n} with |I| <= Ldim.
inline ExpertCover build_cover(std::shared_ptr<const LdimEngine> engine, std::size_t n,
                               std::uint64_t max_experts = kDefaultMaxExperts) {
  if (engine->class_size() == 0) throw InvalidArgument("build_cover: empty class");
  ExpertCover cover;
  cover.n = n;
  cover.d = engine->ldim();
  cover.engine = std::move(engine);
  const std::uint64_t count = binomial_sum(n, cover.d);
  if (count > max_experts) {
    throw ResourceLimit("cover of " + std::to_string(count) + " experts exceeds the budget of " +
                        std::to_string(max_experts));
  }
  std::vector<std::size_t> current;
  for (std::size_t size = 0; size <= static_cast<std::size_t>(cover.d) && size <= n; ++size) {
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
      if (current.size() == size) {
        cover.subsets.push_back(current);
        return;
      }
      for (std::size_t i = start; i + (size - current.size()) <= n + 1; ++i) {
        current.push_back(i);
        rec(i + 1);
        current.pop_back();
      }
    };
    rec(1);
  }
  return cover;
}

inline ExpertCover build_cover(const ConceptClass& c, std::size_t n, std::uint64_t max_experts = kDefaultMaxExperts) {
  return build_cover(LdimEngine::make(c), n, max_experts);
}

struct CoverVerification {
  bool covered = true;
  bool exhaustive = true;
  std::size_t sequences_checked = 0;
  std::optional<LabeledSequence> counterexample;
};

struct CoverVerifyOptions {
  // Exhaustive enumeration is used when m^n point sequences stay below this.
  std::uint64_t max_sequences = 20'000'000;
  std::size_t sampled_trials = 100'000;
  std::uint64_t seed = 0;
};

// Checks that every realizable length-n sequence is predicted perfectly by
// some expert. Exhaustive when affordable, otherwise on random realizable
// sequences (flagged).
inline CoverVerification verify_cover(const ExpertCover& cover, const CoverVerifyOptions& opts = {}) {
  const LdimEngine& engine = *cover.engine;
  const std::size_t m = engine.domain_size();
  const std::size_t n = cover.n;
  CoverVerification result;

  // Experts never see labels, so one pass per point sequence gives every
  // expert's labeling; the sequence is covered iff each labeling realized by
  // the class is among them.
  const double estimate = std::pow(static_cast<double>(m), static_cast<double>(n));
  if (n < 64 && estimate <= static_cast<double>(opts.max_sequences)) {
    const ConceptClass& c = engine.concept_class();
    std::vector<std::size_t> points;
    std::vector<std::uint64_t> realized, produced;
    std::function<bool(const std::vector<CoverExpert>&, const std::vector<std::uint64_t>&)> dfs =
        [&](const std::vector<CoverExpert>& experts, const std::vector<std::uint64_t>& outputs) {
          if (points.size() == n) {
            realized.clear();
            for (const auto& h : c.hypotheses()) {
              std::uint64_t y = 0;
              for (std::size_t i = 0; i < n; ++i) y |= std::uint64_t{h.test(points[i])} << i;
              realized.push_back(y);
            }
            std::sort(realized.begin(), realized.end());
            realized.erase(std::unique(realized.begin(), realized.end()), realized.end());
            produced = outputs;
            std::sort(produced.begin(), produced.end());
            for (std::uint64_t y : realized) {
              ++result.sequences_checked;
              if (!std::binary_search(produced.begin(), produced.end(), y)) {
                LabeledSequence cex;
                for (std::size_t i = 0; i < n; ++i) cex.push_back({points[i], ((y >> i) & 1) != 0});
                result.counterexample = std::move(cex);
                return false;
              }
            }
            return true;
          }
          const std::size_t step = points.size();
          for (std::size_t x = 0; x < m; ++x) {
            std::vector<CoverExpert> advanced = experts;
            std::vector<std::uint64_t> out = outputs;
            for (std::size_t e = 0; e < advanced.size(); ++e) {
              if (advanced[e].next(x)) out[e] |= std::uint64_t{1} << step;
            }
            points.push_back(x);
            const bool ok = dfs(advanced, out);
            points.pop_back();
            if (!ok) return false;
          }
          return true;
        };
    const std::vector<CoverExpert> experts = cover.experts();
    result.covered = dfs(experts, std::vector<std::uint64_t>(experts.size(), 0));
    return result;
  }

  result.exhaustive = false;
  const ConceptClass& c = engine.concept_class();
  const std::vector<CoverExpert> fresh = cover.experts();
  for (std::size_t t = 0; t < opts.sampled_trials; ++t) {
    Rng rng = derive_rng(opts.seed, t);
    const Hypothesis& target = c[uniform_below(rng, c.size())];
    LabeledSequence s;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t x = uniform_below(rng, m);
      s.push_back({x, target.test(x)});
    }
    bool hit = false;
    for (CoverExpert e : fresh) {
      bool ok = true;
      for (const auto& z : s) {
        if (e.next(z.point) != z.label) {
          ok = false;
          break;
        }
      }
      if (ok) {
        hit = true;
        break;
      }
    }
    ++result.sequences_checked;
    if (!hit) {
      result.covered = false;
      result.counterexample = std::move(s);
      return result;
    }
  }
  return result;
}

}  // namespace littlestone
