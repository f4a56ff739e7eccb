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
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "littlestone/bits.hpp"
#include "littlestone/error.hpp"
#include "littlestone/random.hpp"

namespace littlestone {

// A hypothesis is a total 0/1 labeling of the domain.
using Hypothesis = Bits;

// Finite domain of points 0..size-1. Labels are for display only.
class Domain {
 public:
  explicit Domain(std::size_t size) : size_(size) {
    if (size == 0) throw InvalidArgument("domain size must be at least 1");
  }
  explicit Domain(std::vector<std::string> labels) : size_(labels.size()), labels_(std::move(labels)) {
    if (size_ == 0) throw InvalidArgument("domain size must be at least 1");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size()) throw InvalidArgument("domain labels must be distinct");
  }

  std::size_t size() const { return size_; }
  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::string label(std::size_t point) const {
    return has_labels() ? labels_[point] : std::to_string(point);
  }

 private:
  std::size_t size_;
  std::vector<std::string> labels_;
};

// A finite concept class (X, H). Hypotheses are kept sorted lexicographically
// and pairwise distinct, which makes the hypothesis list a canonical key.
class ConceptClass {
 public:
  ConceptClass(Domain domain, std::vector<Hypothesis> hypotheses)
      : domain_(std::move(domain)), hypotheses_(std::move(hypotheses)) {
    for (const auto& h : hypotheses_) {
      if (h.size() != domain_.size()) {
        throw InvalidArgument("hypothesis length " + std::to_string(h.size()) +
                              " does not match domain size " + std::to_string(domain_.size()));
      }
    }
    std::sort(hypotheses_.begin(), hypotheses_.end());
    if (std::adjacent_find(hypotheses_.begin(), hypotheses_.end()) != hypotheses_.end()) {
      throw InvalidArgument("duplicate hypothesis in concept class");
    }
  }

  // Builds a class from rows that may repeat; duplicates are merged.
  static ConceptClass merging_duplicates(Domain domain, std::vector<Hypothesis> rows,
                                         std::size_t* merged = nullptr) {
    std::sort(rows.begin(), rows.end());
    const auto last = std::unique(rows.begin(), rows.end());
    if (merged != nullptr) *merged = static_cast<std::size_t>(rows.end() - last);
    rows.erase(last, rows.end());
    return ConceptClass(std::move(domain), std::move(rows));
  }

  const Domain& domain() const { return domain_; }
  std::size_t domain_size() const { return domain_.size(); }
  const std::vector<Hypothesis>& hypotheses() const { return hypotheses_; }
  std::size_t size() const { return hypotheses_.size(); }
  bool empty() const { return hypotheses_.empty(); }
  const Hypothesis& operator[](std::size_t i) const { return hypotheses_[i]; }

  std::optional<std::size_t> index_of(const Hypothesis& h) const {
    auto it = std::lower_bound(hypotheses_.begin(), hypotheses_.end(), h);
    if (it == hypotheses_.end() || !(*it == h)) return std::nullopt;
    return static_cast<std::size_t>(it - hypotheses_.begin());
  }
  bool contains(const Hypothesis& h) const { return index_of(h).has_value(); }

  // Same points, same hypotheses; display labels are ignored.
  friend bool operator==(const ConceptClass& a, const ConceptClass& b) {
    return a.domain_size() == b.domain_size() && a.hypotheses_ == b.hypotheses_;
  }

 private:
  Domain domain_;
  std::vector<Hypothesis> hypotheses_;
};

struct LabeledExample {
  std::size_t point = 0;
  bool label = false;

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
  friend auto operator<=>(const LabeledExample&, const LabeledExample&) = default;
};

// Order matters and repeats are allowed.
using LabeledSequence = std::vector<LabeledExample>;

inline bool consistent(const Hypothesis& h, std::span<const LabeledExample> s) {
  return std::all_of(s.begin(), s.end(),
                     [&](const LabeledExample& z) { return h.test(z.point) == z.label; });
}

// Finitely supported distribution over X x {0,1}.
class FiniteDistribution {
 public:
  struct Atom {
    std::size_t point = 0;
    bool label = false;
    double weight = 0.0;
  };

  static constexpr double kSumTolerance = 1e-12;

  FiniteDistribution() = default;
  explicit FiniteDistribution(std::vector<Atom> atoms) {
    double total = 0.0;
    for (const Atom& a : atoms) {
      if (!(a.weight >= 0.0) || !std::isfinite(a.weight)) {
        throw InvalidArgument("distribution weights must be finite and nonnegative");
      }
      total += a.weight;
      if (a.weight > 0.0) atoms_.push_back(a);
    }
    if (std::abs(total - 1.0) > kSumTolerance) {
      throw InvalidArgument("distribution weights sum to " + std::to_string(total) + ", not 1");
    }
    std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) {
      return std::pair(a.point, a.label) < std::pair(b.point, b.label);
    });
    for (std::size_t i = 1; i < atoms_.size(); ++i) {
      if (atoms_[i].point == atoms_[i - 1].point && atoms_[i].label == atoms_[i - 1].label) {
        throw InvalidArgument("distribution atoms must be distinct (point, label) pairs");
      }
    }
    cumulative_.reserve(atoms_.size());
    double run = 0.0;
    for (const Atom& a : atoms_) cumulative_.push_back(run += a.weight);
  }

  // Uniform over the distinct examples of a sequence.
  static FiniteDistribution uniform_over(std::span<const LabeledExample> examples) {
    std::set<LabeledExample> distinct(examples.begin(), examples.end());
    if (distinct.empty()) throw InvalidArgument("uniform distribution over an empty sequence");
    std::vector<Atom> atoms;
    const double w = 1.0 / static_cast<double>(distinct.size());
    for (const auto& z : distinct) atoms.push_back({z.point, z.label, w});
    return FiniteDistribution(normalized(std::move(atoms)));
  }

  // Uniform over the graph of h restricted to `points` (all points if empty).
  static FiniteDistribution uniform_on_graph(const Hypothesis& h,
                                             std::vector<std::size_t> points = {}) {
    if (points.empty()) {
      for (std::size_t x = 0; x < h.size(); ++x) points.push_back(x);
    }
    std::vector<LabeledExample> zs;
    for (std::size_t x : points) zs.push_back({x, h.test(x)});
    return uniform_over(zs);
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t support_size() const { return atoms_.size(); }
  LabeledExample example(std::size_t i) const { return {atoms_[i].point, atoms_[i].label}; }

  // Index of a sampled atom.
  std::size_t sample_index(Rng& rng) const {
    const double u = uniform01(rng) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<std::size_t>(it - cumulative_.begin());
  }
  LabeledExample sample(Rng& rng) const { return example(sample_index(rng)); }

 private:
  // Puts the rounding residue on the last atom so the sum check holds exactly.
  static std::vector<Atom> normalized(std::vector<Atom> atoms) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < atoms.size(); ++i) total += atoms[i].weight;
    atoms.back().weight = 1.0 - total;
    return atoms;
  }

  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
};

// ---------------------------------------------------------------------------
// Generators

// Points are read as 1..n; h_t = {x : x <= t} for t = 0..n.
inline ConceptClass make_thresholds(std::size_t n) {
  if (n == 0) throw InvalidArgument("thresholds needs n >= 1");
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  std::vector<Hypothesis> hs;
  for (std::size_t t = 0; t <= n; ++t) {
    Hypothesis h(n);
    for (std::size_t x = 0; x < t; ++x) h.set(x);
    hs.push_back(std::move(h));
  }
  return ConceptClass(Domain(std::move(labels)), std::move(hs));
}

inline ConceptClass make_singletons(std::size_t n) {
  if (n == 0) throw InvalidArgument("singletons needs n >= 1");
  std::vector<Hypothesis> hs;
  for (std::size_t x = 0; x < n; ++x) {
    Hypothesis h(n);
    h.set(x);
    hs.push_back(std::move(h));
  }
  return ConceptClass(Domain(n), std::move(hs));
}

inline constexpr std::size_t kMaxPowersetDomain = 20;

inline ConceptClass make_powerset(std::size_t m) {
  if (m == 0) throw InvalidArgument("powerset needs m >= 1");
  if (m > kMaxPowersetDomain) {
    throw ResourceLimit("powerset over " + std::to_string(m) + " points exceeds the limit of " +
                        std::to_string(kMaxPowersetDomain));
  }
  std::vector<Hypothesis> hs;
  hs.reserve(std::size_t{1} << m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Hypothesis h(m);
    for (std::size_t x = 0; x < m; ++x) {
      if ((mask >> x) & 1) h.set(x);
    }
    hs.push_back(std::move(h));
  }
  return ConceptClass(Domain(m), std::move(hs));
}

// `count` distinct uniformly random hypotheses over m points.
inline ConceptClass make_random_class(std::size_t m, std::size_t count, std::uint64_t seed) {
  if (m == 0) throw InvalidArgument("random class needs m >= 1");
  if (m < 63 && count > (std::size_t{1} << m)) {
    throw InvalidArgument("cannot draw " + std::to_string(count) + " distinct hypotheses over " +
                          std::to_string(m) + " points");
  }
  Rng rng = derive_rng(seed, 0x7261);
  std::set<Hypothesis> picked;
  while (picked.size() < count) {
    Hypothesis h(m);
    for (std::size_t x = 0; x < m; ++x) h.set(x, (rng() >> 63) != 0);
    picked.insert(std::move(h));
  }
  return ConceptClass(Domain(m), {picked.begin(), picked.end()});
}

// ---------------------------------------------------------------------------
// Basic operations

// {h in H : h(point) = label}
inline ConceptClass restrict(const ConceptClass& c, std::size_t point, bool label) {
  if (point >= c.domain_size()) throw InvalidArgument("restrict: point outside the domain");
  std::vector<Hypothesis> kept;
  for (const auto& h : c.hypotheses()) {
    if (h.test(point) == label) kept.push_back(h);
  }
  return ConceptClass(c.domain(), std::move(kept));
}

// Population loss: mass of atoms (x, y) with h(x) != y.
inline double loss(const Hypothesis& h, const FiniteDistribution& d) {
  double total = 0.0;
  for (const auto& a : d.atoms()) {
    if (a.point >= h.size()) throw InvalidArgument("loss: distribution point outside the domain");
    if (h.test(a.point) != a.label) total += a.weight;
  }
  return total;
}

inline bool is_realizable_seq(const ConceptClass& c, std::span<const LabeledExample> s) {
  for (const auto& z : s) {
    if (z.point >= c.domain_size()) throw InvalidArgument("sequence point outside the domain");
  }
  return std::any_of(c.hypotheses().begin(), c.hypotheses().end(),
                     [&](const Hypothesis& h) { return consistent(h, s); });
}

// False for the empty class.
inline bool is_realizable_dist(const ConceptClass& c, const FiniteDistribution& d) {
  return std::any_of(c.hypotheses().begin(), c.hypotheses().end(),
                     [&](const Hypothesis& h) { return loss(h, d) == 0.0; });
}

}  // namespace littlestone
