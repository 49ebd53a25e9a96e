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

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lrcal/score_domain.hpp"

namespace lrcal {

struct ConditionWeight {
  std::string tag;
  double probability = 0.0;

  bool operator==(const ConditionWeight&) const = default;
};

/// Synthetic population. Defaults are the desk-scale reference experiment.
struct SynthConfig {
  std::size_t n_speakers = 50;
  std::size_t utts_per_speaker = 12;
  // Empty list: no condition tags are written.
  std::vector<ConditionWeight> conditions = {{"c1", 0.5}, {"c2", 0.5}};
  double mu_tar = 4.0;
  double sigma_tar = 1.0;
  double mu_non = -4.0;
  double sigma_non = 1.0;
  // Per-speaker offset on same-speaker scores only.
  double speaker_shift_sigma = 1.0;
  // Subtracted from any comparison whose two condition tags differ.
  double mismatch_shift = 2.0;
  // 0: Gaussian noise; otherwise Student's t noise with this many degrees of freedom.
  int noise_dof = 0;
  std::uint64_t seed = 1;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  bool operator==(const SynthConfig&) const = default;
};

struct SynthData {
  std::vector<UtteranceRecord> meta;
  ScoreMatrix matrix;
};

/// Scores every unordered utterance pair exactly once.
SynthData generate(const SynthConfig& c);

struct DrawnCase {
  CaseSpec spec;
  bool same_origin = false;
};

/// Draws cases uniformly over suspects with more than min_suspect_utts
/// utterances: r from the suspect, q from the suspect (probability
/// same_origin_fraction) or from any other speaker.
std::vector<DrawnCase> make_cases(const std::vector<UtteranceRecord>& meta, std::size_t n_cases,
                                  double same_origin_fraction, std::uint64_t seed,
                                  std::size_t min_suspect_utts = 1);

}  // namespace lrcal
