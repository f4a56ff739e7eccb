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
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "littlestone/core.hpp"
#include "littlestone/dims.hpp"
#include "littlestone/error.hpp"
#include "littlestone/random.hpp"

namespace littlestone {

// Sequential uniform subsequence sampler: with r picks left and N - i items
// left, item i is retained with probability r / (N - i). Every n-subset of
// positions comes out with probability 1 / C(N, n).
class UniformSubsequenceSampler {
 public:
  UniformSubsequenceSampler(std::size_t total, std::size_t picks, std::uint64_t seed)
      : total_(total), remaining_picks_(picks), rng_(derive_rng(seed, 0x5a3)) {
    if (picks == 0 || picks > total) {
      throw InvalidArgument("sampler needs 1 <= n <= N (got n=" + std::to_string(picks) +
                            ", N=" + std::to_string(total) + ")");
    }
  }

  // Decision for the next item.
  bool next() {
    if (step_ >= total_) throw ProtocolError("sampler asked for more than N decisions");
    const std::size_t items_left = total_ - step_;
    ++step_;
    if (remaining_picks_ == 0) return false;
    const bool keep = uniform_below(rng_, items_left) < remaining_picks_;
    if (keep) --remaining_picks_;
    return keep;
  }

  std::size_t step() const { return step_; }

 private:
  std::size_t total_;
  std::size_t remaining_picks_;
  std::size_t step_ = 0;
  Rng rng_;
};

// Exact law of the retained position set, by summing path probabilities of
// the sequential rule. Keys are bitmasks over positions. N <= 20.
inline std::map<std::uint32_t, double> exact_subset_probabilities(std::size_t total, std::size_t picks) {
  if (picks == 0 || picks > total) throw InvalidArgument("need 1 <= n <= N");
  if (total > 20) throw ResourceLimit("exact sampler enumeration limited to N <= 20");
  std::map<std::uint32_t, double> law;
  std::function<void(std::size_t, std::size_t, std::uint32_t, double)> walk =
      [&](std::size_t i, std::size_t r, std::uint32_t mask, double p) {
        if (i == total) {
          law[mask] += p;
          return;
        }
        const double keep = static_cast<double>(r) / static_cast<double>(total - i);
        if (keep > 0.0) walk(i + 1, r - 1, mask | (std::uint32_t{1} << i), p * keep);
        if (keep < 1.0) walk(i + 1, r, mask, p * (1.0 - keep));
      };
  walk(0, picks, 0, 1.0);
  return law;
}

// ---------------------------------------------------------------------------
// Adversaries

// Produces the stream. At step i it sees only the retain/discard bits of
// steps 0..i-1.
class StreamAdversary {
 public:
  virtual ~StreamAdversary() = default;
  virtual std::size_t next_point(std::size_t step, std::span<const bool> feedback) = 0;
  virtual std::string name() const = 0;
};

class ObliviousIidAdversary final : public StreamAdversary {
 public:
  ObliviousIidAdversary(std::size_t domain_size, std::uint64_t seed)
      : m_(domain_size), rng_(derive_rng(seed, 0x11d)) {}
  std::size_t next_point(std::size_t, std::span<const bool>) override { return uniform_below(rng_, m_); }
  std::string name() const override { return "iid"; }

 private:
  std::size_t m_;
  Rng rng_;
};

class RoundRobinAdversary final : public StreamAdversary {
 public:
  explicit RoundRobinAdversary(std::size_t domain_size) : m_(domain_size) {}
  std::size_t next_point(std::size_t step, std::span<const bool>) override { return step % m_; }
  std::string name() const override { return "round-robin"; }

 private:
  std::size_t m_;
};

// Adaptive, for threshold-like classes over points 0..m-1. Tracks the running
// stream and retained frequencies of every prefix {0..t}, finds the prefix
// where they disagree most and presents a point that pushes the stream
// frequency further away from the retained one.
class ThresholdChaserAdversary final : public StreamAdversary {
 public:
  ThresholdChaserAdversary(std::size_t domain_size, std::uint64_t seed)
      : m_(domain_size), stream_(domain_size, 0), kept_(domain_size, 0), rng_(derive_rng(seed, 0xc4a)) {}

  std::size_t next_point(std::size_t step, std::span<const bool> feedback) override {
    if (step > 0 && feedback[step - 1]) {
      ++kept_[last_];
      ++kept_total_;
    }
    std::size_t x;
    if (kept_total_ == 0) {
      x = uniform_below(rng_, m_);
    } else {
      double best = -1.0;
      std::size_t best_t = 0;
      bool sample_heavy = false;
      std::size_t s = 0, k = 0;
      for (std::size_t t = 0; t + 1 < m_; ++t) {
        s += stream_[t];
        k += kept_[t];
        const double mu = static_cast<double>(s) / static_cast<double>(step);
        const double mu_hat = static_cast<double>(k) / static_cast<double>(kept_total_);
        if (std::abs(mu - mu_hat) > best) {
          best = std::abs(mu - mu_hat);
          best_t = t;
          sample_heavy = mu_hat > mu;
        }
      }
      // Over-sampled prefix: feed points above it; under-sampled: feed inside.
      x = sample_heavy ? best_t + 1 + uniform_below(rng_, m_ - best_t - 1) : uniform_below(rng_, best_t + 1);
    }
    ++stream_[x];
    last_ = x;
    return x;
  }
  std::string name() const override { return "chaser"; }

 private:
  std::size_t m_;
  std::vector<std::size_t> stream_;
  std::vector<std::size_t> kept_;
  std::size_t kept_total_ = 0;
  std::size_t last_ = 0;
  Rng rng_;
};

using AdversaryFactory = std::function<std::unique_ptr<StreamAdversary>(std::uint64_t seed)>;

inline AdversaryFactory make_adversary_factory(const std::string& kind, std::size_t domain_size) {
  if (kind == "iid") {
    return [domain_size](std::uint64_t s) { return std::make_unique<ObliviousIidAdversary>(domain_size, s); };
  }
  if (kind == "round-robin") {
    return [domain_size](std::uint64_t) { return std::make_unique<RoundRobinAdversary>(domain_size); };
  }
  if (kind == "chaser") {
    return [domain_size](std::uint64_t s) { return std::make_unique<ThresholdChaserAdversary>(domain_size, s); };
  }
  throw InvalidArgument("unknown adversary '" + kind + "' (expected iid, round-robin or chaser)");
}

// ---------------------------------------------------------------------------

struct AllnResult {
  std::size_t total = 0;   // N
  std::size_t picks = 0;   // n
  double discrepancy = 0.0;
  std::vector<std::size_t> retained;  // positions, increasing
  std::vector<std::size_t> stream;
};

// sup over h of |mu_S(h) - mu_S^(h)| given per-point counts.
inline double max_discrepancy(const ConceptClass& c, std::span<const std::size_t> stream_counts,
                              std::size_t total, std::span<const std::size_t> kept_counts, std::size_t picks) {
  double worst = 0.0;
  for (const auto& h : c.hypotheses()) {
    std::size_t in_stream = 0, in_kept = 0;
    h.for_each_set([&](std::size_t x) {
      in_stream += stream_counts[x];
      in_kept += kept_counts[x];
    });
    const double gap = std::abs(static_cast<double>(in_stream) / static_cast<double>(total) -
                                static_cast<double>(in_kept) / static_cast<double>(picks));
    worst = std::max(worst, gap);
  }
  return worst;
}

// Runs the adversary against the sampler for N steps. The adversary is handed
// the feedback of past steps only.
inline AllnResult run_alln(const ConceptClass& c, StreamAdversary& adversary, std::size_t total, std::size_t picks,
                           std::uint64_t seed) {
  UniformSubsequenceSampler sampler(total, picks, seed);
  AllnResult r;
  r.total = total;
  r.picks = picks;
  r.stream.reserve(total);
  std::vector<std::size_t> stream_counts(c.domain_size(), 0), kept_counts(c.domain_size(), 0);
  std::unique_ptr<bool[]> feedback(new bool[total]);
  for (std::size_t i = 0; i < total; ++i) {
    const std::size_t x = adversary.next_point(i, std::span<const bool>(feedback.get(), i));
    if (x >= c.domain_size()) {
      throw ProtocolError("adversary '" + adversary.name() + "' produced point " + std::to_string(x) +
                          " outside the domain");
    }
    const bool keep = sampler.next();
    feedback[i] = keep;
    r.stream.push_back(x);
    ++stream_counts[x];
    if (keep) {
      r.retained.push_back(i);
      ++kept_counts[x];
    }
  }
  r.discrepancy = max_discrepancy(c, stream_counts, total, kept_counts, picks);
  return r;
}

// Smallest observed value v with at least a (1 - delta) fraction of the
// samples <= v; delta = 1 gives the minimum.
inline double empirical_quantile(std::vector<double> values, double level) {
  if (values.empty()) throw InvalidArgument("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = std::ceil(level * static_cast<double>(values.size()) - 1e-12);
  const std::size_t idx = pos <= 1.0 ? 0 : static_cast<std::size_t>(pos) - 1;
  return values[std::min(idx, values.size() - 1)];
}

inline double median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t k = values.size();
  return k % 2 == 1 ? values[k / 2] : 0.5 * (values[k / 2 - 1] + values[k / 2]);
}

struct QuantileReport {
  double quantile = 0.0;        // empirical (1 - delta)-quantile of the discrepancy
  double reference = 0.0;       // C * sqrt((d + ln(1/delta)) / n)
  double ratio = 0.0;           // quantile / reference (0 when reference is 0)
  int ldim = 0;
  std::vector<double> discrepancies;  // by trial
};

// Per-trial seeds are derived from (seed, trial); the adversary for trial t is
// built from the same derived seed.
inline std::vector<double> discrepancy_trials(const ConceptClass& c, const AdversaryFactory& adversaries,
                                              std::size_t total, std::size_t picks, std::size_t trials,
                                              std::uint64_t seed) {
  std::vector<double> out;
  out.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = splitmix64(seed ^ splitmix64(t));
    auto adversary = adversaries(trial_seed);
    out.push_back(run_alln(c, *adversary, total, picks, trial_seed).discrepancy);
  }
  return out;
}

inline QuantileReport quantile_discrepancy(const ConceptClass& c, const AdversaryFactory& adversaries,
                                           std::size_t total, std::size_t picks, std::size_t trials, double delta,
                                           std::uint64_t seed, double display_constant = 1.0) {
  if (!(delta > 0.0 && delta <= 1.0)) throw InvalidArgument("delta must lie in (0, 1]");
  if (trials == 0) throw InvalidArgument("quantile_discrepancy: trials must be positive");
  QuantileReport r;
  r.discrepancies = discrepancy_trials(c, adversaries, total, picks, trials, seed);
  r.quantile = empirical_quantile(r.discrepancies, 1.0 - delta);
  r.ldim = std::max(0, ldim(c));
  r.reference = display_constant *
                std::sqrt((static_cast<double>(r.ldim) + std::log(1.0 / delta)) / static_cast<double>(picks));
  r.ratio = r.reference > 0.0 ? r.quantile / r.reference : 0.0;
  return r;
}

}  // namespace littlestone
