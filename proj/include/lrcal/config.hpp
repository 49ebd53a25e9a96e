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
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lrcal/synthgen.hpp"
#include "lrcal/sweep.hpp"

namespace lrcal {

/// Flat `key = value` text grouped under `[section]` headers. '#' starts a
/// comment line.
class IniDocument {
 public:
  struct Entry {
    std::string value;
    std::size_t line = 0;
  };
  using Section = std::map<std::string, Entry>;

  static IniDocument parse(std::istream& in);

  bool has_section(const std::string& name) const { return sections_.count(name) > 0; }
  const Section* section(const std::string& name) const;
  std::vector<std::string> section_names() const;

 private:
  std::map<std::string, Section> sections_;
};

/// Reads the [synth] section. Unknown sections or keys are errors naming them.
SynthConfig synth_config_from(const IniDocument& doc);

/// Reads [sweep] plus exactly one of [synth] or [data]. Relative data paths
/// are resolved against base_dir.
SweepConfig sweep_config_from(const IniDocument& doc, const std::string& base_dir = "");

/// Parses `c1:0.5 c2:0.5`; `none` gives an empty list.
std::vector<ConditionWeight> parse_conditions(const std::string& text);

}  // namespace lrcal
