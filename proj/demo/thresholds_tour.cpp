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

// A short walk through the library on threshold classes: dimensions, one SOA
// run, the mind-change adversary and an expert cover.

#include <iostream>

#include "littlestone/littlestone.hpp"

using namespace littlestone;

int main() {
  const ConceptClass c = make_thresholds(7);
  auto engine = LdimEngine::make(c);
  std::cout << "thresholds(7): vc " << vc_dim(c) << ", ldim " << engine->ldim() << ", threshold "
            << threshold_dim(c).k << "\n";

  Soa soa(engine);
  const LabeledSequence s{{3, true}, {5, false}, {4, true}, {0, true}};
  const OnlineResult run = run_online(soa, c, s);
  for (const auto& t : run.trace) {
    std::cout << "  step " << t.step << ": x=" << t.point << " y=" << t.label << " predicted " << t.predicted
              << (t.mistake ? " (mistake)" : "") << "\n";
  }
  std::cout << "SOA mistakes: " << run.mistakes << ", final hypothesis " << soa.current_hypothesis().to_string()
            << "\n";

  const AdversaryVerdict v = force_mind_changes(budget_factory(soa_factory(engine), 2), c, 2);
  std::cout << "adversary vs SOA frozen after 2 changes: " << to_string(v.kind) << " after " << v.sequence.size()
            << " examples\n";

  const ExpertCover cover = build_cover(engine, 5);
  const CoverVerification check = verify_cover(cover);
  std::cout << "cover for n=5: " << cover.subsets.size() << " experts, " << (check.covered ? "covers" : "misses")
            << " all " << check.sequences_checked << " realizable sequences of length 5\n";
  return 0;
}
