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

#include "lrcal/calibration.hpp"
#include "lrcal/sweep.hpp"

// Subcommand bodies of the lrcal tool, callable in-process.
namespace lrcal::cli {

struct SynthOptions {
  std::string config;
  std::string output_dir;
  std::optional<std::uint64_t> seed;
};
/// Writes <output_dir>/metadata.txt and <output_dir>/scores.txt.
void cmd_synth(const SynthOptions& o, std::ostream& log);

struct FitOptions {
  std::string scores;
  std::string metadata;
  std::string q;
  std::string r;
  std::string suspect;  // defaults to the speaker of r
  std::string scheme = "RA";
  std::string method = "BAYES";
  std::optional<std::size_t> np;  // whole pool when absent
  std::uint64_t seed = 0;
  std::optional<std::string> condition_filter;
  std::string prior = "jeffreys";
  double mu0 = 0.0, kappa0 = 1.0, alpha0 = 1.0, beta0 = 1.0;
  std::string output;  // stdout when empty
  std::string dump_pool;
};
LlrTransform cmd_fit(const FitOptions& o, std::ostream& out);

struct LlrOptions {
  std::string transform;
  std::optional<double> score;
  // Alternatively score a case from files.
  std::string scores;
  std::string metadata;
  std::string q;
  std::string r;
  // Or a grid, emitted as CSV.
  std::optional<double> from, to, step;
};
void cmd_llr(const LlrOptions& o, std::ostream& out);

struct SweepOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string output;   // falls back to [sweep] output, then stdout
  std::string summary;  // defaults to <output>.summary.csv
  bool serial = false;
  int threads = 0;
};
SweepResult cmd_sweep(const SweepOptions& o, std::ostream& out);

struct CurvesOptions {
  std::string ml;
  std::string bayes;
  double from = -10.0;
  double to = 10.0;
  double step = 0.1;
  std::string output;
};
void cmd_curves(const CurvesOptions& o, std::ostream& out);

struct CllrOptions {
  std::string trials;
};
void cmd_cllr(const CllrOptions& o, std::ostream& out);

/// Grid from..to inclusive; throws ConfigError for step <= 0 or from > to.
std::vector<double> make_grid(double from, double to, double step);

}  // namespace lrcal::cli
