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

#include "lrcal/anchoring.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "lrcal/error.hpp"
#include "lrcal/numfmt.hpp"
#include "lrcal/rng.hpp"

namespace lrcal {

namespace {
constexpr const char* kModule = "anchoring";

struct PoolBuilder {
  const ScoreMatrix& m;
  Pool pool;
  std::vector<LabeledScore> sp, sd;

  void add(UttIndex a, UttIndex b, Label label) {
    auto s = m.lookup(a, b);
    if (!s) {
      ++pool.skipped_missing;
      return;
    }
    if (label == Label::Hp) {
      sp.push_back({*s, Label::Hp});
      pool.sp_pairs.push_back(UttPair::of(a, b));
    } else {
      sd.push_back({*s, Label::Hd});
      pool.sd_pairs.push_back(UttPair::of(a, b));
    }
  }

  Pool finish(std::string_view scheme) && {
    if (sp.empty()) throw InsufficientDataError(kModule, "Hp", "empty S_p pool under " + std::string(scheme));
    if (sd.empty()) throw InsufficientDataError(kModule, "Hd", "empty S_d pool under " + std::string(scheme));
    pool.scores = ScoreSet(std::move(sp), std::move(sd));
    return std::move(pool);
  }
};
}  // namespace

std::string_view to_string(Scheme scheme) { return scheme == Scheme::SA ? "SA" : "RA"; }

std::optional<Scheme> parse_scheme(std::string_view token) {
  if (token == "SA") return Scheme::SA;
  if (token == "RA") return Scheme::RA;
  return std::nullopt;
}

std::vector<std::string> eligible_suspects(const std::vector<UtteranceRecord>& meta, std::size_t min_utts) {
  std::map<std::string, std::size_t> counts;
  for (const auto& u : meta) ++counts[u.speaker_id];
  std::vector<std::string> out;
  for (const auto& [spk, n] : counts)
    if (n > min_utts) out.push_back(spk);
  return out;
}

Pool build_pool(const ScoreMatrix& m, Scheme scheme, const ResolvedCase& c,
                const std::optional<std::string>& condition_filter) {
  auto trace_ok = [&](UttIndex u) { return !condition_filter || m.utterance(u).condition == *condition_filter; };

  // Suspect-side utterances never include q or r; the population side never
  // includes q. r cannot be on the population side since it is the suspect's.
  std::vector<UttIndex> suspect_utts;
  for (UttIndex u : m.utterances_of(c.suspect))
    if (u != c.q && u != c.r) suspect_utts.push_back(u);
  std::vector<UttIndex> population;
  for (UttIndex u = 0; u < m.num_utterances(); ++u)
    if (m.speaker_of(u) != c.suspect && u != c.q) population.push_back(u);

  PoolBuilder b{m, {}, {}, {}};
  if (scheme == Scheme::SA) {
    for (std::size_t i = 0; i < suspect_utts.size(); ++i) {
      for (std::size_t j = i + 1; j < suspect_utts.size(); ++j) {
        // Either member of an unordered suspect pair can act as the trace.
        if (trace_ok(suspect_utts[i]) || trace_ok(suspect_utts[j]))
          b.add(suspect_utts[i], suspect_utts[j], Label::Hp);
      }
    }
    for (UttIndex u : suspect_utts)
      for (UttIndex x : population)
        if (trace_ok(x)) b.add(u, x, Label::Hd);
  } else {
    for (UttIndex u : suspect_utts)
      if (trace_ok(u)) b.add(u, c.r, Label::Hp);
    for (UttIndex x : population)
      if (trace_ok(x)) b.add(x, c.r, Label::Hd);
  }
  return std::move(b).finish(to_string(scheme));
}

Pool build_pool(const ScoreMatrix& m, const PoolSpec& spec) {
  return build_pool(m, spec.scheme, resolve_case(m, spec.case_spec), spec.condition_filter);
}

Pool build_pool_sa(const ScoreMatrix& m, const CaseSpec& c, const std::optional<std::string>& condition_filter) {
  return build_pool(m, PoolSpec{Scheme::SA, c, condition_filter});
}

Pool build_pool_ra(const ScoreMatrix& m, const CaseSpec& c, const std::optional<std::string>& condition_filter) {
  return build_pool(m, PoolSpec{Scheme::RA, c, condition_filter});
}

namespace {
std::vector<std::size_t> draw_sp(std::size_t available, std::size_t np, std::uint64_t seed) {
  if (np < kMinNp) throw ConfigError(kModule, "np must be at least " + std::to_string(kMinNp) + ", got " + std::to_string(np));
  if (np > available) {
    throw InsufficientDataError(kModule, "Hp", "np = " + std::to_string(np) + " exceeds S_p pool size " + std::to_string(available));
  }
  Rng rng(seed);
  return sample_without_replacement(available, np, rng);
}
}  // namespace

ScoreSet subsample_sp(const ScoreSet& s, std::size_t np, std::uint64_t seed) {
  std::vector<LabeledScore> sp;
  sp.reserve(np);
  for (auto i : draw_sp(s.np(), np, seed)) sp.push_back(s.sp()[i]);
  return ScoreSet(std::move(sp), s.sd());
}

Pool subsample_sp(const Pool& p, std::size_t np, std::uint64_t seed) {
  Pool out;
  std::vector<LabeledScore> sp;
  sp.reserve(np);
  for (auto i : draw_sp(p.scores.np(), np, seed)) {
    sp.push_back(p.scores.sp()[i]);
    out.sp_pairs.push_back(p.sp_pairs[i]);
  }
  out.scores = ScoreSet(std::move(sp), p.scores.sd());
  out.sd_pairs = p.sd_pairs;
  out.skipped_missing = p.skipped_missing;
  return out;
}

void write_pool(std::ostream& out, const ScoreMatrix& m, const Pool& p) {
  auto emit = [&](const UttPair& pr, const LabeledScore& s) {
    out << m.utterance(pr.first).utt_id << ' ' << m.utterance(pr.second).utt_id << ' ' << format_double(s.value)
        << ' ' << to_string(s.label) << '\n';
  };
  for (std::size_t i = 0; i < p.sp_pairs.size(); ++i) emit(p.sp_pairs[i], p.scores.sp()[i]);
  for (std::size_t i = 0; i < p.sd_pairs.size(); ++i) emit(p.sd_pairs[i], p.scores.sd()[i]);
}

}  // namespace lrcal
