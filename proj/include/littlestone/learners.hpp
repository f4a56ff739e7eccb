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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "littlestone/core.hpp"
#include "littlestone/dims.hpp"
#include "littlestone/error.hpp"
#include "littlestone/random.hpp"

namespace littlestone {

struct TraceRecord {
  std::size_t step = 0;  // 1-based
  std::size_t point = 0;
  bool label = false;
  bool predicted = false;
  bool mistake = false;
  bool mind_change = false;
  Hypothesis hypothesis;  // after the update
};

// Online / statistical learner over a finite domain.
//
// observe() is the only mutator besides reset(). A mistake is an observation
// whose label disagrees with the hypothesis held before it; a mind change is
// an observation after which the hypothesis differs bitwise from before.
class Learner {
 public:
  virtual ~Learner() = default;

  void reset() {
    mistakes_ = mind_changes_ = steps_ = 0;
    last_mistake_ = last_mind_change_ = false;
    do_reset();
  }

  void observe(const LabeledExample& z) {
    last_mistake_ = predict(z.point) != z.label;
    last_mind_change_ = do_observe(z);
    ++steps_;
    if (last_mistake_) ++mistakes_;
    if (last_mind_change_) ++mind_changes_;
  }

  TraceRecord observe_traced(const LabeledExample& z) {
    const bool predicted = predict(z.point);
    observe(z);
    return {steps_, z.point, z.label, predicted, last_mistake_, last_mind_change_, current_hypothesis()};
  }

  bool predict(std::size_t point) const { return current_hypothesis().test(point); }

  virtual const Hypothesis& current_hypothesis() const = 0;

  // True when the hypothesis can no longer change, whatever is observed.
  virtual bool frozen() const { return false; }

  virtual std::unique_ptr<Learner> clone() const = 0;
  virtual std::string name() const = 0;

  std::size_t mistakes() const { return mistakes_; }
  std::size_t mind_changes() const { return mind_changes_; }
  std::size_t steps() const { return steps_; }
  bool last_was_mistake() const { return last_mistake_; }
  bool last_was_mind_change() const { return last_mind_change_; }

 protected:
  Learner() = default;
  Learner(const Learner&) = default;
  Learner& operator=(const Learner&) = default;

  virtual void do_reset() = 0;
  // Applies the observation; returns true iff the hypothesis changed bitwise.
  virtual bool do_observe(const LabeledExample& z) = 0;

 private:
  std::size_t mistakes_ = 0;
  std::size_t mind_changes_ = 0;
  std::size_t steps_ = 0;
  bool last_mistake_ = false;
  bool last_mind_change_ = false;
};

// Builds a fresh learner; randomized learners draw their randomness from the
// seed, deterministic ones ignore it.
using LearnerFactory = std::function<std::unique_ptr<Learner>(std::uint64_t seed)>;

// ---------------------------------------------------------------------------

// Version space and current output of the standard optimal algorithm, as a
// plain value so callers can copy it cheaply while branching.
struct SoaState {
  Bits version_space;
  Hypothesis hypothesis;

  static SoaState initial(const LdimEngine& engine) {
    return {engine.full(), engine.soa_labels(engine.full())};
  }

  // Restricts the version space to z. The hypothesis is recomputed after a
  // mistake, or after every observation when `eager`. Returns true iff the
  // hypothesis changed. Throws UnrealizableInput, leaving the state intact,
  // when z empties the version space.
  bool update(const LdimEngine& engine, const LabeledExample& z, bool eager = false) {
    Bits next = engine.restrict(version_space, z.point, z.label);
    if (next.none()) throw UnrealizableInput("SOA: observation empties the version space");
    version_space = std::move(next);
    if (!eager && hypothesis.test(z.point) == z.label) return false;
    Hypothesis updated = engine.soa_labels(version_space);
    if (updated == hypothesis) return false;
    hypothesis = std::move(updated);
    return true;
  }
};

// Standard optimal algorithm. Keeps the version space H_S and labels every
// point x with the y maximizing Ldim(H_{S + (x,y)}), ties to 1.
//
// In lazy mode (the default) the hypothesis is recomputed only after a
// mistake. Eager mode recomputes after every observation, exactly as the
// rule reads, and counts the mind changes that happened without a mistake.
class Soa final : public Learner {
 public:
  enum class Mode { kLazy, kEager };

  explicit Soa(std::shared_ptr<const LdimEngine> engine, Mode mode = Mode::kLazy)
      : engine_(std::move(engine)), mode_(mode) {
    if (engine_->class_size() == 0) throw InvalidArgument("SOA needs a nonempty class");
    do_reset();
  }
  explicit Soa(const ConceptClass& c, Mode mode = Mode::kLazy) : Soa(LdimEngine::make(c), mode) {}

  const Hypothesis& current_hypothesis() const override { return state_.hypothesis; }
  std::unique_ptr<Learner> clone() const override { return std::make_unique<Soa>(*this); }
  std::string name() const override { return mode_ == Mode::kLazy ? "soa" : "soa-eager"; }

  const LdimEngine& engine() const { return *engine_; }
  const SoaState& state() const { return state_; }
  const Bits& version_space() const { return state_.version_space; }
  std::vector<Hypothesis> version_space_hypotheses() const {
    std::vector<Hypothesis> out;
    state_.version_space.for_each_set([&](std::size_t j) { out.push_back(engine_->concept_class()[j]); });
    return out;
  }
  // Mind changes on observations that were not mistakes (eager mode only).
  std::size_t laziness_violations() const { return laziness_violations_; }

 protected:
  void do_reset() override {
    state_ = SoaState::initial(*engine_);
    laziness_violations_ = 0;
  }

  bool do_observe(const LabeledExample& z) override {
    if (z.point >= engine_->domain_size()) throw InvalidArgument("SOA: point outside the domain");
    const bool mistake = state_.hypothesis.test(z.point) != z.label;
    const bool changed = state_.update(*engine_, z, mode_ == Mode::kEager);
    if (changed && !mistake) ++laziness_violations_;
    return changed;
  }

 private:
  std::shared_ptr<const LdimEngine> engine_;
  Mode mode_;
  SoaState state_;
  std::size_t laziness_violations_ = 0;
};

// Outputs h whatever it sees.
class ConstantLearner final : public Learner {
 public:
  explicit ConstantLearner(Hypothesis h) : hypothesis_(std::move(h)) {}

  const Hypothesis& current_hypothesis() const override { return hypothesis_; }
  bool frozen() const override { return true; }
  std::unique_ptr<Learner> clone() const override { return std::make_unique<ConstantLearner>(*this); }
  std::string name() const override { return "constant"; }

 protected:
  void do_reset() override {}
  bool do_observe(const LabeledExample&) override { return false; }

 private:
  Hypothesis hypothesis_;
};

// ERM foil: the lexicographically first hypothesis consistent with everything
// observed so far.
class FirstConsistentLearner final : public Learner {
 public:
  explicit FirstConsistentLearner(std::shared_ptr<const LdimEngine> engine) : engine_(std::move(engine)) {
    if (engine_->class_size() == 0) throw InvalidArgument("first-consistent learner needs a nonempty class");
    do_reset();
  }
  explicit FirstConsistentLearner(const ConceptClass& c) : FirstConsistentLearner(LdimEngine::make(c)) {}

  const Hypothesis& current_hypothesis() const override {
    return engine_->concept_class()[version_space_.find_first()];
  }
  std::unique_ptr<Learner> clone() const override {
    return std::make_unique<FirstConsistentLearner>(*this);
  }
  std::string name() const override { return "first-consistent"; }

 protected:
  void do_reset() override { version_space_ = engine_->full(); }

  bool do_observe(const LabeledExample& z) override {
    if (z.point >= engine_->domain_size()) throw InvalidArgument("point outside the domain");
    Bits next = engine_->restrict(version_space_, z.point, z.label);
    if (next.none()) throw UnrealizableInput("first-consistent: observation empties the version space");
    const std::size_t before = version_space_.find_first();
    version_space_ = std::move(next);
    return version_space_.find_first() != before;
  }

 private:
  std::shared_ptr<const LdimEngine> engine_;
  Bits version_space_;
};

// Randomized foil: a uniformly random consistent hypothesis, redrawn only when
// the current one is contradicted.
class GibbsLearner final : public Learner {
 public:
  GibbsLearner(std::shared_ptr<const LdimEngine> engine, std::uint64_t seed)
      : engine_(std::move(engine)), seed_(seed) {
    if (engine_->class_size() == 0) throw InvalidArgument("Gibbs learner needs a nonempty class");
    do_reset();
  }

  const Hypothesis& current_hypothesis() const override { return engine_->concept_class()[current_]; }
  std::unique_ptr<Learner> clone() const override { return std::make_unique<GibbsLearner>(*this); }
  std::string name() const override { return "gibbs"; }

 protected:
  void do_reset() override {
    rng_ = derive_rng(seed_, 0x61bb5);
    version_space_ = engine_->full();
    current_ = draw();
  }

  bool do_observe(const LabeledExample& z) override {
    Bits next = engine_->restrict(version_space_, z.point, z.label);
    if (next.none()) throw UnrealizableInput("Gibbs: observation empties the version space");
    version_space_ = std::move(next);
    if (version_space_.test(current_)) return false;
    const Hypothesis before = current_hypothesis();
    current_ = draw();
    return !(current_hypothesis() == before);
  }

 private:
  std::size_t draw() {
    std::size_t k = uniform_below(rng_, version_space_.count());
    std::size_t j = version_space_.find_first();
    while (k-- > 0) j = version_space_.find_next(j);
    return j;
  }

  std::shared_ptr<const LdimEngine> engine_;
  std::uint64_t seed_;
  Rng rng_;
  Bits version_space_;
  std::size_t current_ = 0;
};

// Forwards to `inner` until it has changed its hypothesis `budget` times, then
// holds that hypothesis forever. Observations keep being counted.
class BudgetWrapper final : public Learner {
 public:
  BudgetWrapper(std::unique_ptr<Learner> inner, std::size_t budget)
      : inner_(std::move(inner)), budget_(budget) {
    do_reset();
  }
  BudgetWrapper(const BudgetWrapper& o)
      : Learner(o), inner_(o.inner_->clone()), budget_(o.budget_), frozen_(o.frozen_), held_(o.held_) {}

  const Hypothesis& current_hypothesis() const override {
    return frozen_ ? held_ : inner_->current_hypothesis();
  }
  bool frozen() const override { return frozen_ || inner_->frozen(); }
  std::unique_ptr<Learner> clone() const override { return std::make_unique<BudgetWrapper>(*this); }
  std::string name() const override { return inner_->name() + "@budget" + std::to_string(budget_); }
  std::size_t budget() const { return budget_; }

 protected:
  void do_reset() override {
    inner_->reset();
    frozen_ = false;
    maybe_freeze();
  }

  bool do_observe(const LabeledExample& z) override {
    if (frozen_) return false;
    inner_->observe(z);
    maybe_freeze();
    return inner_->last_was_mind_change();
  }

 private:
  void maybe_freeze() {
    if (inner_->mind_changes() >= budget_) {
      frozen_ = true;
      held_ = inner_->current_hypothesis();
    }
  }

  std::unique_ptr<Learner> inner_;
  std::size_t budget_;
  bool frozen_ = false;
  Hypothesis held_;
};

// ---------------------------------------------------------------------------
// Factories

inline LearnerFactory soa_factory(std::shared_ptr<const LdimEngine> engine, Soa::Mode mode = Soa::Mode::kLazy) {
  return [engine = std::move(engine), mode](std::uint64_t) { return std::make_unique<Soa>(engine, mode); };
}

inline LearnerFactory first_consistent_factory(std::shared_ptr<const LdimEngine> engine) {
  return [engine = std::move(engine)](std::uint64_t) {
    return std::make_unique<FirstConsistentLearner>(engine);
  };
}

inline LearnerFactory constant_factory(Hypothesis h) {
  return [h = std::move(h)](std::uint64_t) { return std::make_unique<ConstantLearner>(h); };
}

inline LearnerFactory gibbs_factory(std::shared_ptr<const LdimEngine> engine) {
  return [engine = std::move(engine)](std::uint64_t seed) { return std::make_unique<GibbsLearner>(engine, seed); };
}

inline LearnerFactory budget_factory(LearnerFactory inner, std::size_t budget) {
  return [inner = std::move(inner), budget](std::uint64_t seed) {
    return std::make_unique<BudgetWrapper>(inner(seed), budget);
  };
}

}  // namespace littlestone
