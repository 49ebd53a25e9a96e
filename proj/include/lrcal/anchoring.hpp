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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lrcal/score_domain.hpp"

namespace lrcal {

/// Suspect-anchored pools compare suspect utterances among themselves and
/// against the population; reference-anchored pools always include r.
enum class Scheme { SA, RA };

std::string_view to_string(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view token);

struct PoolSpec {
  Scheme scheme = Scheme::SA;
  CaseSpec case_spec;
  // When set, the trace-side utterance of every comparison must carry this
  // condition tag exactly.
  std::optional<std::string> condition_filter;
};

/// Training scores for one case together with the comparisons that produced
/// them. sp_pairs[i] generated scores.sp()[i], likewise for sd.
struct Pool {
  ScoreSet scores;
  std::vector<UttPair> sp_pairs;
  std::vector<UttPair> sd_pairs;
  // Comparisons the protocol asked for that the matrix does not contain.
  std::size_t skipped_missing = 0;
};

/// Speakers with strictly more than min_utts utterances, sorted.
std::vector<std::string> eligible_suspects(const std::vector<UtteranceRecord>& meta, std::size_t min_utts);

Pool build_pool(const ScoreMatrix& m, const PoolSpec& spec);
Pool build_pool(const ScoreMatrix& m, Scheme scheme, const ResolvedCase& c,
                const std::optional<std::string>& condition_filter = std::nullopt);

Pool build_pool_sa(const ScoreMatrix& m, const CaseSpec& c,
                   const std::optional<std::string>& condition_filter = std::nullopt);
Pool build_pool_ra(const ScoreMatrix& m, const CaseSpec& c,
                   const std::optional<std::string>& condition_filter = std::nullopt);

/// Minimum allowed N_p: both calibration models need two points for a spread.
inline constexpr std::size_t kMinNp = 2;

/// Draws np elements of S_p uniformly without replacement; S_d is untouched.
ScoreSet subsample_sp(const ScoreSet& s, std::size_t np, std::uint64_t seed);
/// Same draw as the ScoreSet overload, keeping sp_pairs aligned.
Pool subsample_sp(const Pool& p, std::size_t np, std::uint64_t seed);

/// Score-file lines with a trailing `Hp|Hd` label column.
void write_pool(std::ostream& out, const ScoreMatrix& m, const Pool& p);

}  // namespace lrcal
