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

#include "lrcal/evaluation.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>

#include "lrcal/error.hpp"
#include "lrcal/numfmt.hpp"

namespace lrcal {

namespace {
constexpr const char* kModule = "evaluation";
}

double softplus_bits(double x) {
  if (x > 0.0) return x / std::numbers::ln2 + std::log1p(std::exp(-x)) / std::numbers::ln2;
  return std::log1p(std::exp(x)) / std::numbers::ln2;
}

CllrReport cllr(std::span<const LlrTrial> trials) {
  // Neumaier sums in index order keep the result independent of batching.
  double sum_p = 0.0, comp_p = 0.0, sum_d = 0.0, comp_d = 0.0;
  auto add = [](double& sum, double& comp, double x) {
    const double t = sum + x;
    comp += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  };
  CllrReport r;
  for (const auto& t : trials) {
    if (!std::isfinite(t.llr)) throw ConfigError(kModule, "non-finite llr in trial '" + t.case_id + "'");
    if (t.label == Label::Hp) {
      add(sum_p, comp_p, softplus_bits(-t.llr));
      ++r.n_p;
    } else {
      add(sum_d, comp_d, softplus_bits(t.llr));
      ++r.n_d;
    }
  }
  if (r.n_p == 0) throw InsufficientDataError(kModule, "Hp", "no Hp trials");
  if (r.n_d == 0) throw InsufficientDataError(kModule, "Hd", "no Hd trials");
  r.cllr = 0.5 * (sum_p + comp_p) / static_cast<double>(r.n_p) + 0.5 * (sum_d + comp_d) / static_cast<double>(r.n_d);
  r.informative = r.cllr < 1.0;
  return r;
}

std::vector<LlrTrial> read_trials(std::istream& in) {
  std::vector<LlrTrial> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto f = split_ws(t);
    if (f.size() != 3) throw ParseError(kModule, lineno, "expected '<case_id> <Hp|Hd> <llr>'");
    auto label = parse_label(f[1]);
    if (!label) throw ParseError(kModule, lineno, "label must be Hp or Hd, got '" + std::string(f[1]) + "'");
    auto v = parse_finite_double(f[2]);
    if (!v) throw ParseError(kModule, lineno, "bad llr '" + std::string(f[2]) + "'");
    out.push_back({*v, *label, std::string(f[0])});
  }
  return out;
}

void write_trials(std::ostream& out, std::span<const LlrTrial> trials) {
  for (const auto& t : trials) out << t.case_id << ' ' << to_string(t.label) << ' ' << format_double(t.llr) << '\n';
}

std::string cllr_csv_row(const CllrReport& r) {
  return std::to_string(r.n_p) + "," + std::to_string(r.n_d) + "," + format_double(r.cllr) + "," +
         (r.informative ? "true" : "false");
}

}  // namespace lrcal
