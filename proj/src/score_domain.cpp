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

#include "lrcal/score_domain.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "lrcal/error.hpp"
#include "lrcal/numfmt.hpp"

namespace lrcal {

namespace {
constexpr const char* kModule = "score_domain";

bool skip_line(std::string_view line) {
  auto t = trim(line);
  return t.empty() || t.front() == '#';
}
}  // namespace

std::string_view to_string(Label label) { return label == Label::Hp ? "Hp" : "Hd"; }

std::optional<Label> parse_label(std::string_view token) {
  if (token == "Hp") return Label::Hp;
  if (token == "Hd") return Label::Hd;
  return std::nullopt;
}

ScoreMatrix::ScoreMatrix(std::vector<UtteranceRecord> utterances) : utts_(std::move(utterances)) {
  index_.reserve(utts_.size());
  speaker_of_.reserve(utts_.size());
  for (std::size_t i = 0; i < utts_.size(); ++i) {
    const auto& u = utts_[i];
    if (u.utt_id.empty()) throw ConfigError(kModule, "empty utt_id at position " + std::to_string(i));
    if (u.speaker_id.empty()) throw ConfigError(kModule, "empty speaker_id for " + u.utt_id);
    if (!index_.emplace(u.utt_id, static_cast<UttIndex>(i)).second)
      throw ConfigError(kModule, "duplicate utt_id " + u.utt_id);
    auto [it, added] = speaker_index_.emplace(u.speaker_id, static_cast<SpeakerIndex>(speakers_.size()));
    if (added) {
      speakers_.push_back(u.speaker_id);
      by_speaker_.emplace_back();
    }
    speaker_of_.push_back(it->second);
    by_speaker_[it->second].push_back(static_cast<UttIndex>(i));
  }
}

std::optional<UttIndex> ScoreMatrix::find(std::string_view utt_id) const {
  auto it = index_.find(std::string(utt_id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

UttIndex ScoreMatrix::index_of(std::string_view utt_id) const {
  auto u = find(utt_id);
  if (!u) throw ReferenceError(kModule, "unknown utt_id " + std::string(utt_id));
  return *u;
}

std::optional<SpeakerIndex> ScoreMatrix::find_speaker(std::string_view speaker_id) const {
  auto it = speaker_index_.find(std::string(speaker_id));
  if (it == speaker_index_.end()) return std::nullopt;
  return it->second;
}

void ScoreMatrix::insert(UttIndex a, UttIndex b, double score) {
  if (a >= utts_.size() || b >= utts_.size())
    throw ReferenceError(kModule, "utterance index out of range");
  if (!std::isfinite(score)) throw ConfigError(kModule, "non-finite score");
  auto [it, added] = scores_.emplace(key(UttPair::of(a, b)), score);
  if (!added && std::fabs(it->second - score) > kAsymmetryTolerance) {
    throw SymmetryError(kModule, "symmetry violation for pair (" + utts_[a].utt_id + ", " +
                                     utts_[b].utt_id + "): " + format_double(it->second) +
                                     " vs " + format_double(score));
  }
}

std::optional<double> ScoreMatrix::lookup(UttIndex a, UttIndex b) const {
  auto it = scores_.find(key(UttPair::of(a, b)));
  if (it == scores_.end()) return std::nullopt;
  return it->second;
}

double ScoreMatrix::get(std::string_view q, std::string_view r) const {
  auto s = lookup(index_of(q), index_of(r));
  if (!s) throw NotFoundError(kModule, "no score for pair (" + std::string(q) + ", " + std::string(r) + ")");
  return *s;
}

std::vector<std::pair<UttPair, double>> ScoreMatrix::sorted_scores() const {
  std::vector<std::pair<UttPair, double>> out;
  out.reserve(scores_.size());
  for (const auto& [k, v] : scores_) {
    out.push_back({UttPair{static_cast<UttIndex>(k >> 32), static_cast<UttIndex>(k & 0xffffffffu)}, v});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

std::vector<UtteranceRecord> load_metadata(std::istream& in) {
  std::vector<UtteranceRecord> out;
  std::unordered_map<std::string, std::size_t> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip_line(line)) continue;
    auto f = split_ws(line);
    if (f.size() < 2 || f.size() > 3)
      throw ParseError(kModule, lineno, "expected '<utt_id> <speaker_id> [<condition>]'");
    UtteranceRecord rec{std::string(f[0]), std::string(f[1]), f.size() == 3 ? std::string(f[2]) : ""};
    auto [it, added] = seen.emplace(rec.utt_id, lineno);
    if (!added) {
      throw ParseError(kModule, lineno,
                       "duplicate utt_id " + rec.utt_id + " (first seen on line " + std::to_string(it->second) + ")");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

void save_metadata(std::ostream& out, const std::vector<UtteranceRecord>& utts) {
  for (const auto& u : utts) {
    out << u.utt_id << ' ' << u.speaker_id;
    if (!u.condition.empty()) out << ' ' << u.condition;
    out << '\n';
  }
}

ScoreMatrix load_scores(std::istream& in, std::vector<UtteranceRecord> meta) {
  ScoreMatrix m(std::move(meta));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip_line(line)) continue;
    auto f = split_ws(line);
    if (f.size() != 3) throw ParseError(kModule, lineno, "expected '<utt_id_1> <utt_id_2> <score>'");
    auto a = m.find(f[0]);
    auto b = m.find(f[1]);
    if (!a || !b) {
      throw ReferenceError(kModule, "line " + std::to_string(lineno) + ": unknown utt_id " +
                                        std::string(a ? f[1] : f[0]));
    }
    auto v = parse_finite_double(f[2]);
    if (!v) throw ParseError(kModule, lineno, "bad score '" + std::string(f[2]) + "'");
    m.insert(*a, *b, *v);
  }
  return m;
}

void save_scores(std::ostream& out, const ScoreMatrix& m) {
  for (const auto& [p, v] : m.sorted_scores()) {
    out << m.utterance(p.first).utt_id << ' ' << m.utterance(p.second).utt_id << ' ' << format_double(v) << '\n';
  }
}

double get_score(const ScoreMatrix& m, std::string_view q, std::string_view r) { return m.get(q, r); }

ResolvedCase resolve_case(const ScoreMatrix& m, const CaseSpec& c) {
  ResolvedCase out;
  out.q = m.index_of(c.q);
  out.r = m.index_of(c.r);
  auto s = m.find_speaker(c.suspect);
  if (!s) throw ReferenceError(kModule, "unknown suspect " + c.suspect);
  out.suspect = *s;
  if (out.q == out.r) throw ConfigError(kModule, "case has q == r (" + c.q + ")");
  if (m.speaker_of(out.r) != out.suspect) {
    throw ConfigError(kModule, "reference " + c.r + " belongs to " + m.speakers()[m.speaker_of(out.r)] +
                                   ", not suspect " + c.suspect);
  }
  return out;
}

ScoreSet::ScoreSet(std::vector<LabeledScore> sp, std::vector<LabeledScore> sd)
    : sp_(std::move(sp)), sd_(std::move(sd)) {
  for (const auto& s : sp_) {
    if (s.label != Label::Hp) throw ConfigError(kModule, "Hd-labeled score in S_p");
    if (!std::isfinite(s.value)) throw ConfigError(kModule, "non-finite score in S_p");
  }
  for (const auto& s : sd_) {
    if (s.label != Label::Hd) throw ConfigError(kModule, "Hp-labeled score in S_d");
    if (!std::isfinite(s.value)) throw ConfigError(kModule, "non-finite score in S_d");
  }
}

ScoreSet ScoreSet::from_values(const std::vector<double>& sp, const std::vector<double>& sd) {
  std::vector<LabeledScore> p, d;
  p.reserve(sp.size());
  d.reserve(sd.size());
  for (double v : sp) p.push_back({v, Label::Hp});
  for (double v : sd) d.push_back({v, Label::Hd});
  return ScoreSet(std::move(p), std::move(d));
}

std::vector<double> ScoreSet::sp_values() const {
  std::vector<double> out;
  out.reserve(sp_.size());
  for (const auto& s : sp_) out.push_back(s.value);
  return out;
}

std::vector<double> ScoreSet::sd_values() const {
  std::vector<double> out;
  out.reserve(sd_.size());
  for (const auto& s : sd_) out.push_back(s.value);
  return out;
}

}  // namespace lrcal
