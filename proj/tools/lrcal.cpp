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

#include <iostream>

#include <CLI11.hpp>

#include "lrcal/commands.hpp"
#include "lrcal/error.hpp"

int main(int argc, char** argv) {
  using namespace lrcal::cli;
  CLI::App app{"Score-to-likelihood-ratio calibration for forensic speaker comparison"};
  app.require_subcommand(1);

  SynthOptions synth;
  auto* s = app.add_subcommand("synth", "Generate a synthetic population and its score matrix");
  s->add_option("--config", synth.config, "Config file with a [synth] section")->required();
  s->add_option("--output", synth.output_dir, "Output directory")->required();
  s->add_option("--seed", synth.seed, "Override the [synth] seed");

  FitOptions fit;
  auto* f = app.add_subcommand("fit", "Build training pools for a case and fit a score-to-LLR transform");
  f->add_option("--scores", fit.scores, "Score file")->required();
  f->add_option("--metadata", fit.metadata, "Metadata file")->required();
  f->add_option("--q", fit.q, "Questioned utterance id")->required();
  f->add_option("--r", fit.r, "Reference utterance id")->required();
  f->add_option("--suspect", fit.suspect, "Suspect speaker id (default: speaker of r)");
  f->add_option("--scheme", fit.scheme, "SA or RA")->capture_default_str();
  f->add_option("--method", fit.method, "ML or BAYES")->capture_default_str();
  f->add_option("--np", fit.np, "Subsample S_p to this many scores");
  f->add_option("--seed", fit.seed, "Subsampling seed")->capture_default_str();
  f->add_option("--condition-filter", fit.condition_filter, "Trace-side condition tag");
  f->add_option("--prior", fit.prior, "jeffreys or proper")->capture_default_str();
  f->add_option("--mu0", fit.mu0)->capture_default_str();
  f->add_option("--kappa0", fit.kappa0)->capture_default_str();
  f->add_option("--alpha0", fit.alpha0)->capture_default_str();
  f->add_option("--beta0", fit.beta0)->capture_default_str();
  f->add_option("--output", fit.output, "Transform file (default: stdout)");
  f->add_option("--dump-pool", fit.dump_pool, "Write the labeled training pool here");

  LlrOptions llr;
  auto* l = app.add_subcommand("llr", "Evaluate a fitted transform");
  l->add_option("--transform", llr.transform, "Transform file")->required();
  l->add_option("--score", llr.score, "Score to evaluate");
  l->add_option("--scores", llr.scores, "Score file (with --metadata, --q, --r)");
  l->add_option("--metadata", llr.metadata);
  l->add_option("--q", llr.q);
  l->add_option("--r", llr.r);
  l->add_option("--from", llr.from, "Grid start (CSV output)");
  l->add_option("--to", llr.to, "Grid end");
  l->add_option("--step", llr.step, "Grid step");

  SweepOptions sweep;
  auto* w = app.add_subcommand("sweep", "Run the N_p sparsity sweep and write per-cell Cllr");
  w->add_option("--config", sweep.config, "Config file with [sweep] and [synth] or [data]")->required();
  w->add_option("--seed", sweep.seed, "Override base_seed");
  w->add_option("--output", sweep.output, "Row CSV (default: [sweep] output, else stdout)");
  w->add_option("--summary", sweep.summary, "Summary CSV (default: <output>.summary.csv)");
  w->add_flag("--serial", sweep.serial, "Use the serial reference runner");
  w->add_option("--threads", sweep.threads, "OpenMP threads (0: runtime default)");

  CurvesOptions curves;
  auto* c = app.add_subcommand("curves", "Emit density and LLR curves for an ML/BAYES transform pair");
  c->add_option("--ml", curves.ml, "ML transform file")->required();
  c->add_option("--bayes", curves.bayes, "BAYES transform file")->required();
  c->add_option("--from", curves.from)->capture_default_str();
  c->add_option("--to", curves.to)->capture_default_str();
  c->add_option("--step", curves.step)->capture_default_str();
  c->add_option("--output", curves.output, "CSV file (default: stdout)");

  CllrOptions cl;
  auto* e = app.add_subcommand("cllr", "Cllr of a trial file");
  e->add_option("--trials", cl.trials, "Trial file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*s) cmd_synth(synth, std::cerr);
    if (*f) cmd_fit(fit, std::cout);
    if (*l) cmd_llr(llr, std::cout);
    if (*w) cmd_sweep(sweep, std::cout);
    if (*c) cmd_curves(curves, std::cout);
    if (*e) cmd_cllr(cl, std::cout);
  } catch (const lrcal::IoError& ex) {
    std::cerr << "lrcal: error: " << ex.what() << '\n';
    return 3;
  } catch (const lrcal::Error& ex) {
    std::cerr << "lrcal: error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "lrcal: error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
