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

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lrcal/score_domain.hpp"

namespace lrcal {

struct LlrTrial {
  double llr = 0.0;  // natural log
  Label label = Label::Hp;
  std::string case_id;
};

struct CllrReport {
  double cllr = 0.0;  // bits
  std::size_t n_p = 0;
  std::size_t n_d = 0;
  bool informative = false;
};

/// log2(1 + e^x) without overflow for large |x|.
double softplus_bits(double x);

/// Cost of log-likelihood-ratio, in bits, with each proposition's average
/// weighted 1/2. Throws if either label is absent or an llr is not finite.
CllrReport cllr(std::span<const LlrTrial> trials);

/// Trial file: `<case_id> <Hp|Hd> <llr>` per line.
std::vector<LlrTrial> read_trials(std::istream& in);
void write_trials(std::ostream& out, std::span<const LlrTrial> trials);

inline constexpr const char* kCllrCsvHeader = "n_p,n_d,cllr,informative";
std::string cllr_csv_row(const CllrReport& r);

}  // namespace lrcal
