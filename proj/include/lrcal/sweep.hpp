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
#include <vector>

#include "lrcal/anchoring.hpp"
#include "lrcal/calibration.hpp"
#include "lrcal/score_domain.hpp"
#include "lrcal/synthgen.hpp"

namespace lrcal {

/// N_p sparsity experiment over anchoring schemes and calibration methods.
struct SweepConfig {
  // Exactly one data source: a synthetic population regenerated per
  // replicate, or a fixed metadata/score file pair.
  std::optional<SynthConfig> synth = SynthConfig{};
  std::string metadata_path;
  std::string scores_path;

  std::vector<Scheme> schemes = {Scheme::SA, Scheme::RA};
  std::vector<Method> methods = {Method::ML, Method::BAYES};
  std::vector<std::size_t> np_grid = {2, 3, 5, 10, 20, 50, 100};
  std::size_t n_replicates = 20;
  std::uint64_t base_seed = 1;
  std::size_t min_suspect_utts = 10;
  std::optional<std::size_t> nd_cap;
  std::size_t n_cases = 200;
  double same_origin_fraction = 0.5;
  // Restrict trace-side pool utterances to the condition of q.
  bool condition_matching = false;
  NormalGammaHyper prior = NormalGammaHyper::jeffreys();
  std::string output;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

struct SweepRow {
  Scheme scheme = Scheme::SA;
  Method method = Method::ML;
  std::size_t np = 0;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  std::size_t n_cases_p = 0;
  std::size_t n_cases_d = 0;
  std::optional<double> cllr;
  // Short machine-readable marker, set when cllr is absent.
  std::string error;

  bool operator==(const SweepRow&) const = default;
};

struct CellSummary {
  Scheme scheme = Scheme::SA;
  Method method = Method::ML;
  std::size_t np = 0;
  std::size_t n_ok = 0;
  std::optional<double> mean_cllr;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // (scheme, method, np, replicate) order
  std::vector<CellSummary> summary;
};

/// Seed of the N_p subsampling stream for one cell. The method is left out
/// so that ML and BAYES are scored on identical draws.
std::uint64_t cell_seed(std::uint64_t base_seed, Scheme scheme, std::size_t np, std::size_t replicate);

/// Work units are (replicate, scheme) pairs run with OpenMP; `data` is used
/// when the config has no synthetic source.
SweepResult run_sweep(const SweepConfig& cfg, const ScoreMatrix* data = nullptr);
/// Serial reference with identical output.
SweepResult run_sweep_serial(const SweepConfig& cfg, const ScoreMatrix* data = nullptr);
/// Recomputes one row from scratch.
SweepRow run_cell(const SweepConfig& cfg, Scheme scheme, Method method, std::size_t np, std::size_t replicate,
                  const ScoreMatrix* data = nullptr);

std::vector<CellSummary> summarize(const SweepConfig& cfg, const std::vector<SweepRow>& rows);

inline constexpr const char* kSweepCsvHeader = "scheme,method,np,replicate,seed,n_cases_p,n_cases_d,cllr";
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::istream& in);
void write_summary_csv(std::ostream& out, const SweepConfig& cfg, const std::vector<CellSummary>& summary);

}  // namespace lrcal
