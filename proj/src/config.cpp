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

#include "lrcal/config.hpp"

#include <charconv>
#include <filesystem>
#include <functional>
#include <istream>
#include <set>

#include "lrcal/error.hpp"
#include "lrcal/numfmt.hpp"

namespace lrcal {

namespace {
constexpr const char* kModule = "config";

const std::set<std::string> kSections = {"synth", "sweep", "data"};

using Handler = std::function<void(const std::string& value, std::size_t line)>;

// Applies handlers to a section, rejecting keys that have none.
void apply(const IniDocument& doc, const std::string& name, const std::map<std::string, Handler>& handlers) {
  const auto* sec = doc.section(name);
  if (!sec) return;
  for (const auto& [key, entry] : *sec) {
    auto h = handlers.find(key);
    if (h == handlers.end())
      throw ParseError(kModule, entry.line, "unknown key '" + key + "' in section [" + name + "]");
    h->second(entry.value, entry.line);
  }
}

void check_sections(const IniDocument& doc) {
  for (const auto& name : doc.section_names()) {
    if (!kSections.count(name)) {
      const auto* sec = doc.section(name);
      const std::size_t line = sec->empty() ? 0 : sec->begin()->second.line;
      throw ParseError(kModule, line, name.empty() ? "key outside any section" : "unknown section [" + name + "]");
    }
  }
}

double as_double(const std::string& key, const std::string& v, std::size_t line) {
  auto d = parse_finite_double(v);
  if (!d) throw ParseError(kModule, line, "key '" + key + "' needs a number, got '" + v + "'");
  return *d;
}

std::size_t as_count(const std::string& key, const std::string& v, std::size_t line) {
  auto i = parse_integer(v);
  if (!i || *i < 0) throw ParseError(kModule, line, "key '" + key + "' needs a non-negative integer, got '" + v + "'");
  return static_cast<std::size_t>(*i);
}

std::uint64_t as_u64(const std::string& key, const std::string& v, std::size_t line) {
  std::uint64_t out = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ParseError(kModule, line, "key '" + key + "' needs an unsigned 64-bit integer, got '" + v + "'");
  return out;
}

bool as_bool(const std::string& key, const std::string& v, std::size_t line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError(kModule, line, "key '" + key + "' needs true or false, got '" + v + "'");
}

template <class F>
void with_key(std::map<std::string, Handler>& h, const std::string& key, F f) {
  h[key] = [key, f](const std::string& v, std::size_t line) { f(key, v, line); };
}
}  // namespace

IniDocument IniDocument::parse(std::istream& in) {
  IniDocument doc;
  std::string current;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = trim(line);
    if (t.empty() || t.front() == '#' || t.front() == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ParseError(kModule, lineno, "malformed section header");
      current = std::string(trim(t.substr(1, t.size() - 2)));
      if (current.empty()) throw ParseError(kModule, lineno, "empty section name");
      doc.sections_[current];
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string_view::npos) throw ParseError(kModule, lineno, "expected 'key = value'");
    std::string key(trim(t.substr(0, eq)));
    std::string value(trim(t.substr(eq + 1)));
    if (key.empty()) throw ParseError(kModule, lineno, "empty key");
    auto& sec = doc.sections_[current];
    if (!sec.emplace(key, Entry{value, lineno}).second)
      throw ParseError(kModule, lineno, "duplicate key '" + key + "'");
  }
  return doc;
}

const IniDocument::Section* IniDocument::section(const std::string& name) const {
  auto it = sections_.find(name);
  return it == sections_.end() ? nullptr : &it->second;
}

std::vector<std::string> IniDocument::section_names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : sections_) out.push_back(k);
  return out;
}

std::vector<ConditionWeight> parse_conditions(const std::string& text) {
  if (trim(text) == "none") return {};
  std::vector<ConditionWeight> out;
  for (auto tok : split_ws(text)) {
    auto colon = tok.rfind(':');
    if (colon == std::string_view::npos)
      throw ConfigError(kModule, "conditions: expected tag:probability, got '" + std::string(tok) + "'");
    auto p = parse_finite_double(tok.substr(colon + 1));
    if (!p) throw ConfigError(kModule, "conditions: bad probability in '" + std::string(tok) + "'");
    out.push_back({std::string(tok.substr(0, colon)), *p});
  }
  if (out.empty()) throw ConfigError(kModule, "conditions: empty list (use 'none')");
  return out;
}

SynthConfig synth_config_from(const IniDocument& doc) {
  check_sections(doc);
  if (!doc.has_section("synth")) throw ConfigError(kModule, "missing [synth] section");
  SynthConfig c;
  std::map<std::string, Handler> h;
  with_key(h, "n_speakers", [&](auto& k, auto& v, auto l) { c.n_speakers = as_count(k, v, l); });
  with_key(h, "utts_per_speaker", [&](auto& k, auto& v, auto l) { c.utts_per_speaker = as_count(k, v, l); });
  with_key(h, "conditions", [&](auto&, auto& v, auto) { c.conditions = parse_conditions(v); });
  with_key(h, "mu_tar", [&](auto& k, auto& v, auto l) { c.mu_tar = as_double(k, v, l); });
  with_key(h, "sigma_tar", [&](auto& k, auto& v, auto l) { c.sigma_tar = as_double(k, v, l); });
  with_key(h, "mu_non", [&](auto& k, auto& v, auto l) { c.mu_non = as_double(k, v, l); });
  with_key(h, "sigma_non", [&](auto& k, auto& v, auto l) { c.sigma_non = as_double(k, v, l); });
  with_key(h, "speaker_shift_sigma", [&](auto& k, auto& v, auto l) { c.speaker_shift_sigma = as_double(k, v, l); });
  with_key(h, "mismatch_shift", [&](auto& k, auto& v, auto l) { c.mismatch_shift = as_double(k, v, l); });
  with_key(h, "noise_dof", [&](auto& k, auto& v, auto l) { c.noise_dof = static_cast<int>(as_count(k, v, l)); });
  with_key(h, "seed", [&](auto& k, auto& v, auto l) { c.seed = as_u64(k, v, l); });
  apply(doc, "synth", h);
  c.validate();
  return c;
}

SweepConfig sweep_config_from(const IniDocument& doc, const std::string& base_dir) {
  check_sections(doc);
  if (doc.has_section("synth") == doc.has_section("data"))
    throw ConfigError(kModule, "exactly one of [synth] or [data] is required");
  SweepConfig c;
  if (doc.has_section("synth")) {
    c.synth = synth_config_from(doc);
  } else {
    c.synth.reset();
    auto resolve = [&](const std::string& p) {
      std::filesystem::path path(p);
      if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
      return path.string();
    };
    std::map<std::string, Handler> h;
    with_key(h, "metadata", [&](auto&, auto& v, auto) { c.metadata_path = resolve(v); });
    with_key(h, "scores", [&](auto&, auto& v, auto) { c.scores_path = resolve(v); });
    apply(doc, "data", h);
    if (c.metadata_path.empty() || c.scores_path.empty())
      throw ConfigError(kModule, "[data] needs both 'metadata' and 'scores'");
  }

  bool proper = false;
  double mu0 = 0.0, kappa0 = 0.0, alpha0 = 0.0, beta0 = 0.0;
  std::map<std::string, Handler> h;
  with_key(h, "schemes", [&](auto& k, auto& v, auto l) {
    c.schemes.clear();
    for (auto tok : split_ws(v)) {
      auto s = parse_scheme(tok);
      if (!s) throw ParseError(kModule, l, "key '" + k + "': unknown scheme '" + std::string(tok) + "'");
      c.schemes.push_back(*s);
    }
  });
  with_key(h, "methods", [&](auto& k, auto& v, auto l) {
    c.methods.clear();
    for (auto tok : split_ws(v)) {
      auto m = parse_method(tok);
      if (!m) throw ParseError(kModule, l, "key '" + k + "': unknown method '" + std::string(tok) + "'");
      c.methods.push_back(*m);
    }
  });
  with_key(h, "np_grid", [&](auto& k, auto& v, auto l) {
    c.np_grid.clear();
    for (auto tok : split_ws(v)) c.np_grid.push_back(as_count(k, std::string(tok), l));
  });
  with_key(h, "n_replicates", [&](auto& k, auto& v, auto l) { c.n_replicates = as_count(k, v, l); });
  with_key(h, "base_seed", [&](auto& k, auto& v, auto l) { c.base_seed = as_u64(k, v, l); });
  with_key(h, "min_suspect_utts", [&](auto& k, auto& v, auto l) { c.min_suspect_utts = as_count(k, v, l); });
  with_key(h, "nd_cap", [&](auto& k, auto& v, auto l) {
    if (v == "none")
      c.nd_cap.reset();
    else
      c.nd_cap = as_count(k, v, l);
  });
  with_key(h, "n_cases", [&](auto& k, auto& v, auto l) { c.n_cases = as_count(k, v, l); });
  with_key(h, "same_origin_fraction", [&](auto& k, auto& v, auto l) { c.same_origin_fraction = as_double(k, v, l); });
  with_key(h, "condition_matching", [&](auto& k, auto& v, auto l) { c.condition_matching = as_bool(k, v, l); });
  with_key(h, "prior", [&](auto& k, auto& v, auto l) {
    if (v == "jeffreys")
      proper = false;
    else if (v == "proper")
      proper = true;
    else
      throw ParseError(kModule, l, "key '" + k + "' must be jeffreys or proper");
  });
  with_key(h, "mu0", [&](auto& k, auto& v, auto l) { mu0 = as_double(k, v, l); });
  with_key(h, "kappa0", [&](auto& k, auto& v, auto l) { kappa0 = as_double(k, v, l); });
  with_key(h, "alpha0", [&](auto& k, auto& v, auto l) { alpha0 = as_double(k, v, l); });
  with_key(h, "beta0", [&](auto& k, auto& v, auto l) { beta0 = as_double(k, v, l); });
  with_key(h, "output", [&](auto&, auto& v, auto) { c.output = v; });
  apply(doc, "sweep", h);
  if (proper) c.prior = NormalGammaHyper::proper(mu0, kappa0, alpha0, beta0);
  c.validate();
  return c;
}

}  // namespace lrcal
