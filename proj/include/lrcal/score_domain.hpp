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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lrcal {

/// Proposition a training or evaluation score is conditioned on.
enum class Label { Hp, Hd };

std::string_view to_string(Label label);
std::optional<Label> parse_label(std::string_view token);

/// One recording attributable to a speaker. An empty condition means the
/// utterance carries no explicit tag and shares the implicit condition.
struct UtteranceRecord {
  std::string utt_id;
  std::string speaker_id;
  std::string condition;

  bool operator==(const UtteranceRecord&) const = default;
};

using UttIndex = std::uint32_t;
using SpeakerIndex = std::uint32_t;

/// Unordered pair of utterance indices, always stored with first <= second.
struct UttPair {
  UttIndex first = 0;
  UttIndex second = 0;

  static UttPair of(UttIndex a, UttIndex b) { return a <= b ? UttPair{a, b} : UttPair{b, a}; }
  bool contains(UttIndex u) const { return first == u || second == u; }
  auto operator<=>(const UttPair&) const = default;
};

inline constexpr double kAsymmetryTolerance = 1e-9;

/// Symmetric pairwise scores over a fixed utterance list.
///
/// Scores live under unordered pair keys, so lookup(q, r) == lookup(r, q) by
/// construction. The utterance list and the speaker index are fixed at
/// construction; only scores may be added afterwards.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  explicit ScoreMatrix(std::vector<UtteranceRecord> utterances);

  const std::vector<UtteranceRecord>& utterances() const { return utts_; }
  const UtteranceRecord& utterance(UttIndex u) const { return utts_.at(u); }
  std::size_t num_utterances() const { return utts_.size(); }
  std::size_t num_scores() const { return scores_.size(); }

  std::optional<UttIndex> find(std::string_view utt_id) const;
  /// Throws ReferenceError for unknown ids.
  UttIndex index_of(std::string_view utt_id) const;

  const std::vector<std::string>& speakers() const { return speakers_; }
  SpeakerIndex speaker_of(UttIndex u) const { return speaker_of_.at(u); }
  std::optional<SpeakerIndex> find_speaker(std::string_view speaker_id) const;
  const std::vector<UttIndex>& utterances_of(SpeakerIndex s) const { return by_speaker_.at(s); }

  /// Inserts a score. A pair already present keeps its first value if the new
  /// one agrees within kAsymmetryTolerance; otherwise throws SymmetryError.
  void insert(UttIndex a, UttIndex b, double score);

  std::optional<double> lookup(UttIndex a, UttIndex b) const;
  /// Throws NotFoundError (missing pair) or ReferenceError (unknown id).
  double get(std::string_view q, std::string_view r) const;

  /// All stored pairs in ascending key order.
  std::vector<std::pair<UttPair, double>> sorted_scores() const;

 private:
  static std::uint64_t key(UttPair p) {
    return (static_cast<std::uint64_t>(p.first) << 32) | p.second;
  }

  std::vector<UtteranceRecord> utts_;
  std::unordered_map<std::string, UttIndex> index_;
  std::vector<std::string> speakers_;
  std::unordered_map<std::string, SpeakerIndex> speaker_index_;
  std::vector<SpeakerIndex> speaker_of_;
  std::vector<std::vector<UttIndex>> by_speaker_;
  std::unordered_map<std::uint64_t, double> scores_;
};

/// Metadata file: `<utt_id> <speaker_id> [<condition>]` per line; blank lines
/// and lines starting with '#' are skipped.
std::vector<UtteranceRecord> load_metadata(std::istream& in);
void save_metadata(std::ostream& out, const std::vector<UtteranceRecord>& utts);

/// Score file: `<utt_id_1> <utt_id_2> <score>` per line.
ScoreMatrix load_scores(std::istream& in, std::vector<UtteranceRecord> meta);
/// Writes every stored pair at 17 significant digits, in ascending key order.
void save_scores(std::ostream& out, const ScoreMatrix& m);

double get_score(const ScoreMatrix& m, std::string_view q, std::string_view r);

/// Case under evaluation: questioned recording q, reference recording r and
/// the suspect who produced r.
struct CaseSpec {
  std::string q;
  std::string r;
  std::string suspect;

  bool operator==(const CaseSpec&) const = default;
};

/// Resolved indices of a validated case. Throws ReferenceError for unknown
/// ids or speakers and ConfigError if q == r or r is not the suspect's.
struct ResolvedCase {
  UttIndex q = 0;
  UttIndex r = 0;
  SpeakerIndex suspect = 0;
};
ResolvedCase resolve_case(const ScoreMatrix& m, const CaseSpec& c);

struct LabeledScore {
  double value = 0.0;
  Label label = Label::Hp;

  bool operator==(const LabeledScore&) const = default;
};

/// Labeled training scores {S_p, S_d}. Construction rejects mislabeled or
/// non-finite elements.
class ScoreSet {
 public:
  ScoreSet() = default;
  ScoreSet(std::vector<LabeledScore> sp, std::vector<LabeledScore> sd);
  static ScoreSet from_values(const std::vector<double>& sp, const std::vector<double>& sd);

  const std::vector<LabeledScore>& sp() const { return sp_; }
  const std::vector<LabeledScore>& sd() const { return sd_; }
  std::size_t np() const { return sp_.size(); }
  std::size_t nd() const { return sd_.size(); }

  std::vector<double> sp_values() const;
  std::vector<double> sd_values() const;

 private:
  std::vector<LabeledScore> sp_;
  std::vector<LabeledScore> sd_;
};

}  // namespace lrcal
