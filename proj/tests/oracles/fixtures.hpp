// Copyright 2026  lrcal authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "lrcal/score_domain.hpp"

namespace fixtures {

// Speakers A:{a1..a4}, B:{b1..b3}, C:{c1..c3}; every unordered pair scored.
// Scores are distinct so set comparisons cannot pass by coincidence.
inline std::vector<lrcal::UtteranceRecord> toy_meta() {
  return {
      {"a1", "A", "studio"}, {"a2", "A", "phone"}, {"a3", "A", "studio"}, {"a4", "A", "phone"},
      {"b1", "B", "studio"}, {"b2", "B", "phone"}, {"b3", "B", "studio"},
      {"c1", "C", "phone"},  {"c2", "C", "studio"}, {"c3", "C", "phone"},
  };
}

inline double toy_score(std::size_t i, std::size_t j, bool same_speaker) {
  const double base = same_speaker ? 3.0 : -3.0;
  return base + 0.01 * static_cast<double>(i * 17 + j * 5) + 0.001 * static_cast<double>(i + j);
}

inline lrcal::ScoreMatrix toy_matrix(const std::vector<lrcal::UtteranceRecord>& meta = toy_meta()) {
  lrcal::ScoreMatrix m(meta);
  for (lrcal::UttIndex i = 0; i < meta.size(); ++i) {
    for (lrcal::UttIndex j = i + 1; j < meta.size(); ++j) {
      // Score depends on ids, not positions, so permuted metadata gives the
      // same matrix.
      std::size_t a = static_cast<std::size_t>(meta[i].utt_id[0] - 'a') * 10 + (meta[i].utt_id[1] - '0');
      std::size_t b = static_cast<std::size_t>(meta[j].utt_id[0] - 'a') * 10 + (meta[j].utt_id[1] - '0');
      if (a > b) std::swap(a, b);
      m.insert(i, j, toy_score(a, b, meta[i].speaker_id == meta[j].speaker_id));
    }
  }
  return m;
}

}  // namespace fixtures
