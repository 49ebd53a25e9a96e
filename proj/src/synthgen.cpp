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

#include "lrcal/synthgen.hpp"

#include <cmath>
#include <algorithm>
#include <map>

#include "lrcal/anchoring.hpp"
#include "lrcal/error.hpp"
#include "lrcal/rng.hpp"

namespace lrcal {

namespace {
constexpr const char* kModule = "synthgen";

std::string padded(const char* prefix, std::size_t i, std::size_t width) {
  std::string digits = std::to_string(i);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return prefix + digits;
}
}  // namespace

void SynthConfig::validate() const {
  if (n_speakers < 2) throw ConfigError(kModule, "n_speakers must be at least 2");
  if (utts_per_speaker < 2) throw ConfigError(kModule, "utts_per_speaker must be at least 2");
  if (!(sigma_tar > 0.0) || !std::isfinite(sigma_tar)) throw ConfigError(kModule, "sigma_tar must be positive");
  if (!(sigma_non > 0.0) || !std::isfinite(sigma_non)) throw ConfigError(kModule, "sigma_non must be positive");
  if (!(speaker_shift_sigma >= 0.0) || !std::isfinite(speaker_shift_sigma))
    throw ConfigError(kModule, "speaker_shift_sigma must be non-negative");
  if (!std::isfinite(mu_tar) || !std::isfinite(mu_non) || !(mu_tar > mu_non))
    throw ConfigError(kModule, "mu_tar must exceed mu_non");
  if (!std::isfinite(mismatch_shift)) throw ConfigError(kModule, "mismatch_shift must be finite");
  if (noise_dof < 0) throw ConfigError(kModule, "noise_dof must be 0 (Gaussian) or positive");
  if (!conditions.empty()) {
    double total = 0.0;
    for (const auto& c : conditions) {
      if (c.tag.empty()) throw ConfigError(kModule, "conditions: empty tag");
      if (!(c.probability >= 0.0)) throw ConfigError(kModule, "conditions: negative probability for " + c.tag);
      total += c.probability;
    }
    if (std::fabs(total - 1.0) > 1e-9) throw ConfigError(kModule, "conditions: probabilities must sum to 1");
  }
}

SynthData generate(const SynthConfig& c) {
  c.validate();
  Rng rng(c.seed);
  auto noise = [&]() { return c.noise_dof > 0 ? rng.student_t(c.noise_dof) : rng.normal(); };

  std::vector<double> offsets(c.n_speakers);
  for (auto& o : offsets) o = c.speaker_shift_sigma * rng.normal();

  const std::size_t spk_width = std::to_string(c.n_speakers - 1).size();
  const std::size_t utt_width = std::to_string(c.utts_per_speaker - 1).size();
  std::vector<UtteranceRecord> meta;
  std::vector<std::size_t> speaker_of;
  meta.reserve(c.n_speakers * c.utts_per_speaker);
  for (std::size_t s = 0; s < c.n_speakers; ++s) {
    const std::string spk = padded("spk", s, spk_width);
    for (std::size_t u = 0; u < c.utts_per_speaker; ++u) {
      std::string cond;
      if (!c.conditions.empty()) {
        const double x = rng.uniform();
        double acc = 0.0;
        cond = c.conditions.back().tag;
        for (const auto& w : c.conditions) {
          acc += w.probability;
          if (x < acc) {
            cond = w.tag;
            break;
          }
        }
      }
      meta.push_back({spk + padded("_u", u, utt_width), spk, cond});
      speaker_of.push_back(s);
    }
  }

  ScoreMatrix m(meta);
  const auto n = static_cast<UttIndex>(meta.size());
  for (UttIndex i = 0; i < n; ++i) {
    for (UttIndex j = i + 1; j < n; ++j) {
      const double mismatch = meta[i].condition != meta[j].condition ? -c.mismatch_shift : 0.0;
      double s;
      if (speaker_of[i] == speaker_of[j])
        s = c.mu_tar + offsets[speaker_of[i]] + mismatch + c.sigma_tar * noise();
      else
        s = c.mu_non + mismatch + c.sigma_non * noise();
      m.insert(i, j, s);
    }
  }
  return {std::move(meta), std::move(m)};
}

std::vector<DrawnCase> make_cases(const std::vector<UtteranceRecord>& meta, std::size_t n_cases,
                                  double same_origin_fraction, std::uint64_t seed, std::size_t min_suspect_utts) {
  if (!(same_origin_fraction >= 0.0 && same_origin_fraction <= 1.0))
    throw ConfigError(kModule, "same_origin_fraction must lie in [0, 1]");
  const auto suspects = eligible_suspects(meta, std::max<std::size_t>(min_suspect_utts, 1));
  if (n_cases == 0) return {};
  if (suspects.empty()) throw ConfigError(kModule, "no eligible suspects");

  std::map<std::string, std::vector<std::size_t>> by_speaker;
  for (std::size_t i = 0; i < meta.size(); ++i) by_speaker[meta[i].speaker_id].push_back(i);
  if (same_origin_fraction < 1.0 && by_speaker.size() < 2)
    throw ConfigError(kModule, "different-origin cases need a second speaker");

  Rng rng(seed);
  std::vector<DrawnCase> out;
  out.reserve(n_cases);
  for (std::size_t k = 0; k < n_cases; ++k) {
    const auto& suspect = suspects[rng.below(suspects.size())];
    const auto& own = by_speaker.at(suspect);
    const std::size_t r = own[rng.below(own.size())];
    DrawnCase dc;
    dc.same_origin = rng.bernoulli(same_origin_fraction);
    std::size_t q;
    if (dc.same_origin) {
      do {
        q = own[rng.below(own.size())];
      } while (q == r);
    } else {
      // Uniform over every utterance of the other speakers.
      do {
        q = rng.below(meta.size());
      } while (meta[q].speaker_id == suspect);
    }
    dc.spec = {meta[q].utt_id, meta[r].utt_id, suspect};
    out.push_back(std::move(dc));
  }
  return out;
}

}  // namespace lrcal
