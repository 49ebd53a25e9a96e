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

#include "lrcal/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lrcal/anchoring.hpp"
#include "lrcal/config.hpp"
#include "lrcal/error.hpp"
#include "lrcal/evaluation.hpp"
#include "lrcal/numfmt.hpp"
#include "lrcal/rng.hpp"
#include "lrcal/synthgen.hpp"

namespace lrcal::cli {

namespace {
constexpr const char* kModule = "cli";

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("io", "cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("io", "cannot open '" + path + "' for writing");
  return out;
}

ScoreMatrix load_data(const std::string& metadata, const std::string& scores) {
  auto min = open_in(metadata);
  auto meta = load_metadata(min);
  auto sin = open_in(scores);
  return load_scores(sin, std::move(meta));
}

IniDocument load_ini(const std::string& path) {
  auto in = open_in(path);
  return IniDocument::parse(in);
}

LlrTransform load_transform(const std::string& path) {
  auto in = open_in(path);
  return read_transform(in);
}
}  // namespace

std::vector<double> make_grid(double from, double to, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError(kModule, "step must be positive");
  if (!std::isfinite(from) || !std::isfinite(to) || from > to) throw ConfigError(kModule, "need from <= to");
  const double count = std::floor((to - from) / step + 1e-9) + 1.0;
  if (count > 1e7) throw ConfigError(kModule, "grid too large");
  std::vector<double> out;
  for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) out.push_back(from + static_cast<double>(i) * step);
  return out;
}

void cmd_synth(const SynthOptions& o, std::ostream& log) {
  auto cfg = synth_config_from(load_ini(o.config));
  if (o.seed) cfg.seed = *o.seed;
  const auto data = generate(cfg);
  std::filesystem::create_directories(o.output_dir);
  const auto dir = std::filesystem::path(o.output_dir);
  {
    auto out = open_out((dir / "metadata.txt").string());
    save_metadata(out, data.meta);
  }
  {
    auto out = open_out((dir / "scores.txt").string());
    save_scores(out, data.matrix);
  }
  log << "wrote " << data.meta.size() << " utterances and " << data.matrix.num_scores() << " scores to "
      << o.output_dir << '\n';
}

LlrTransform cmd_fit(const FitOptions& o, std::ostream& out) {
  const auto m = load_data(o.metadata, o.scores);
  auto scheme = parse_scheme(o.scheme);
  if (!scheme) throw ConfigError(kModule, "unknown scheme '" + o.scheme + "' (SA or RA)");
  auto method = parse_method(o.method);
  if (!method) throw ConfigError(kModule, "unknown method '" + o.method + "' (ML or BAYES)");
  NormalGammaHyper prior;
  if (o.prior == "proper")
    prior = NormalGammaHyper::proper(o.mu0, o.kappa0, o.alpha0, o.beta0);
  else if (o.prior != "jeffreys")
    throw ConfigError(kModule, "unknown prior '" + o.prior + "' (jeffreys or proper)");

  CaseSpec c{o.q, o.r, o.suspect};
  if (c.suspect.empty()) c.suspect = m.speakers()[m.speaker_of(m.index_of(o.r))];
  Pool pool = build_pool(m, PoolSpec{*scheme, c, o.condition_filter});
  if (o.np) pool = subsample_sp(pool, *o.np, o.seed);
  if (!o.dump_pool.empty()) {
    auto dump = open_out(o.dump_pool);
    write_pool(dump, m, pool);
  }
  auto t = fit_transform(pool.scores, *method, prior, o.seed, std::string(to_string(*scheme)));
  if (o.output.empty()) {
    write_transform(out, t);
  } else {
    auto f = open_out(o.output);
    write_transform(f, t);
    out << "np=" << pool.scores.np() << " nd=" << pool.scores.nd() << " skipped_missing=" << pool.skipped_missing
        << '\n';
  }
  return t;
}

void cmd_llr(const LlrOptions& o, std::ostream& out) {
  const auto t = load_transform(o.transform);
  if (o.from || o.to || o.step) {
    if (!o.from || !o.to || !o.step) throw ConfigError(kModule, "grid needs --from, --to and --step");
    out << "s,llr,llr10\n";
    for (double s : make_grid(*o.from, *o.to, *o.step)) {
      const double v = t.llr(s);
      out << format_double(s, 9) << ',' << format_double(v, 9) << ',' << format_double(v / std::log(10.0), 9)
          << '\n';
    }
    return;
  }
  double s;
  if (o.score) {
    s = *o.score;
  } else if (!o.scores.empty()) {
    s = get_score(load_data(o.metadata, o.scores), o.q, o.r);
  } else {
    throw ConfigError(kModule, "llr needs --score, a case (--scores --metadata --q --r) or a grid");
  }
  const double v = t.llr(s);
  out << "llr=" << format_double(v, 9) << " llr10=" << format_double(v / std::log(10.0), 9) << '\n';
}

SweepResult cmd_sweep(const SweepOptions& o, std::ostream& out) {
  const auto base_dir = std::filesystem::path(o.config).parent_path().string();
  auto cfg = sweep_config_from(load_ini(o.config), base_dir);
  if (o.seed) cfg.base_seed = *o.seed;
#ifdef _OPENMP
  if (o.threads > 0) omp_set_num_threads(o.threads);
#endif
  std::optional<ScoreMatrix> data;
  if (!cfg.synth) data = load_data(cfg.metadata_path, cfg.scores_path);
  const ScoreMatrix* dp = data ? &*data : nullptr;
  auto result = o.serial ? run_sweep_serial(cfg, dp) : run_sweep(cfg, dp);

  const std::string output = o.output.empty() ? cfg.output : o.output;
  if (output.empty()) {
    write_sweep_csv(out, result.rows);
    write_summary_csv(out, cfg, result.summary);
    return result;
  }
  {
    auto f = open_out(output);
    write_sweep_csv(f, result.rows);
  }
  const std::string summary = o.summary.empty() ? output + ".summary.csv" : o.summary;
  {
    auto f = open_out(summary);
    write_summary_csv(f, cfg, result.summary);
  }
  write_summary_csv(out, cfg, result.summary);
  return result;
}

void cmd_curves(const CurvesOptions& o, std::ostream& out) {
  const auto ml = load_transform(o.ml);
  const auto bayes = load_transform(o.bayes);
  if (ml.method() != Method::ML) throw ConfigError(kModule, "'" + o.ml + "' is not an ML transform");
  if (bayes.method() != Method::BAYES) throw ConfigError(kModule, "'" + o.bayes + "' is not a BAYES transform");
  const auto grid = make_grid(o.from, o.to, o.step);

  std::ofstream file;
  std::ostream* os = &out;
  if (!o.output.empty()) {
    file = open_out(o.output);
    os = &file;
  }
  *os << "s,llr_ml,llr_bayes,logpdf_ml_hp,logpdf_ml_hd,logpdf_bayes_hp,logpdf_bayes_hd\n";
  for (double s : grid) {
    const double mp = ml.log_numerator(s), md = ml.log_denominator(s);
    const double bp = bayes.log_numerator(s), bd = bayes.log_denominator(s);
    *os << format_double(s, 9) << ',' << format_double(mp - md, 9) << ',' << format_double(bp - bd, 9) << ','
        << format_double(mp, 9) << ',' << format_double(md, 9) << ',' << format_double(bp, 9) << ','
        << format_double(bd, 9) << '\n';
  }
}

void cmd_cllr(const CllrOptions& o, std::ostream& out) {
  auto in = open_in(o.trials);
  const auto trials = read_trials(in);
  out << kCllrCsvHeader << '\n' << cllr_csv_row(cllr(trials)) << '\n';
}

}  // namespace lrcal::cli
