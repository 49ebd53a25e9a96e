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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lrcal/anchoring.hpp"
#include "lrcal/calibration.hpp"
#include "lrcal/error.hpp"
#include "lrcal/evaluation.hpp"
#include "lrcal/rng.hpp"
#include "lrcal/sweep.hpp"
#include "lrcal/synthgen.hpp"
#include "oracles/fixtures.hpp"
#include "oracles/grid_posterior.hpp"
#include "oracles/pool_oracle.hpp"

using namespace lrcal;

namespace {

// Thresholds.
constexpr double kOracleRelTol = 1e-4;
constexpr double kOracleSeconds = 60.0;
constexpr std::size_t kConvergenceSamples = 100000;
constexpr double kConvergenceGap = 0.01;
constexpr double kConvergenceSeconds = 10.0;
constexpr double kSparsitySeconds = 300.0;
constexpr double kMlExcessAtTwo = 0.20;
constexpr std::size_t kTrendMaxNp = 10;
constexpr std::size_t kAnchoringNp = 10;
constexpr double kHalfBitTol = 1e-6;
constexpr double kLn3Cllr = 0.4150375;
constexpr int kAffineTriples = 100;
constexpr double kAffineTol = 1e-9;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<double> normal_sample(std::size_t n, double mu, double sigma, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = mu + sigma * rng.normal();
  return out;
}

StudentTParams jeffreys_predictive(const std::vector<double>& x) {
  return predictive(update_posterior(NormalGammaHyper::jeffreys(), suff_stats(x)));
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (std::size_t n : {2u, 5u, 20u}) {
    const auto data = normal_sample(n, 1.5, 2.0, 1000 + n);
    const auto t = jeffreys_predictive(data);
    oracle::GridPosterior grid(data, oracle::log_jeffreys_prior, oracle::jeffreys_grid(data));
    for (int k = -5; k <= 5; ++k) {
      const double s = t.loc + k * t.scale;
      const double closed = std::exp(student_t_logpdf(t, s));
      worst = std::max(worst, std::abs(grid.predictive(s) - closed) / closed);
    }
  }
  const double secs = seconds_since(t0);
  return {worst < kOracleRelTol && secs < kOracleSeconds,
          "max rel err " + fmt("%.3g", worst) + " over 33 points, " + fmt("%.1f", secs) + " s"};
}

Outcome convergence() {
  const auto t0 = Clock::now();
  const double mu = -0.7, sigma = 1.9;
  const auto x = normal_sample(kConvergenceSamples, mu, sigma, 77);
  const auto g = fit_ml(x);
  const auto t = jeffreys_predictive(x);
  double gap = 0.0;
  const double sd = std::sqrt(g.sigma2);
  const int steps = 20000;
  for (int i = 0; i <= steps; ++i) {
    const double s = g.mu - 5 * sd + 10 * sd * i / steps;
    gap = std::max(gap, std::abs(student_t_logpdf(t, s) - gaussian_logpdf(g, s)));
  }
  const double secs = seconds_since(t0);
  return {gap < kConvergenceGap && secs < kConvergenceSeconds,
          "sup gap " + fmt("%.3g", gap) + ", " + fmt("%.2f", secs) + " s"};
}

SweepConfig reference_config() {
  SweepConfig c;  // defaults are the reference experiment
  c.synth = SynthConfig{};
  return c;
}

struct SweepRun {
  SweepResult result;
  double seconds = 0.0;
};

const SweepRun& reference_sweep() {
  static const SweepRun run = [] {
    const auto t0 = Clock::now();
    SweepRun r;
    r.result = run_sweep(reference_config());
    r.seconds = seconds_since(t0);
    return r;
  }();
  return run;
}

std::optional<double> mean_of(const SweepResult& r, Scheme s, Method m, std::size_t np) {
  for (const auto& c : r.summary)
    if (c.scheme == s && c.method == m && c.np == np) return c.mean_cllr;
  return std::nullopt;
}

Outcome sparsity_trend() {
  const auto& run = reference_sweep();
  const auto cfg = reference_config();
  bool ok = run.seconds < kSparsitySeconds;
  std::vector<std::string> notes;
  for (auto s : cfg.schemes) {
    const std::string sn(to_string(s));
    for (auto np : cfg.np_grid) {
      const auto ml = mean_of(run.result, s, Method::ML, np);
      const auto by = mean_of(run.result, s, Method::BAYES, np);
      if (!by) {
        ok = false;
        notes.push_back(sn + " np=" + std::to_string(np) + ": BAYES not evaluable (np exceeds every S_p pool)");
        continue;
      }
      if (!(*by < 1.0)) {
        ok = false;
        notes.push_back(sn + " np=" + std::to_string(np) + ": BAYES Cllr " + fmt("%.4g", *by) + " >= 1");
      }
      if (np <= kTrendMaxNp) {
        if (!ml || !(*by < *ml)) {
          ok = false;
          notes.push_back(sn + " np=" + std::to_string(np) + ": BAYES " + fmt("%.4g", *by) + " vs ML " +
                          (ml ? fmt("%.4g", *ml) : std::string("NA")));
        }
      }
      if (np == 2 && ml && !(*ml >= (1.0 + kMlExcessAtTwo) * *by)) {
        ok = false;
        notes.push_back(sn + " np=2: ML " + fmt("%.4g", *ml) + " not 20% above BAYES " + fmt("%.4g", *by));
      }
    }
    const auto ml2 = mean_of(run.result, s, Method::ML, 2), by2 = mean_of(run.result, s, Method::BAYES, 2);
    if (ml2 && by2) notes.push_back(sn + " np=2: ML " + fmt("%.4g", *ml2) + " BAYES " + fmt("%.4g", *by2));
  }
  std::string detail = fmt("%.1f", run.seconds) + " s";
  for (const auto& n : notes) detail += "; " + n;
  return {ok, detail};
}

Outcome anchoring_trend() {
  const auto& run = reference_sweep();
  const auto cfg = reference_config();
  bool ok = cfg.synth->mismatch_shift == 2.0 && cfg.synth->conditions.size() == 2;
  std::string detail = "np=" + std::to_string(kAnchoringNp);
  for (auto m : {Method::ML, Method::BAYES}) {
    const auto sa = mean_of(run.result, Scheme::SA, m, kAnchoringNp);
    const auto ra = mean_of(run.result, Scheme::RA, m, kAnchoringNp);
    const bool good = sa && ra && *ra < *sa;
    ok = ok && good;
    detail += std::string("; ") + std::string(to_string(m)) + ": RA " + (ra ? fmt("%.5g", *ra) : "NA") + " vs SA " +
              (sa ? fmt("%.5g", *sa) : "NA");
  }
  return {ok, detail};
}

Outcome cllr_anchors() {
  auto two = [](double hp, double hd) {
    std::vector<LlrTrial> t = {{hp, Label::Hp, "p"}, {hd, Label::Hd, "d"}};
    return cllr(t).cllr;
  };
  const double zero = two(0, 0);
  const double ln3 = two(std::log(3.0), -std::log(3.0));
  const double big_good = two(7000, -7000), big_bad = two(-7000, 7000);
  const bool ok = zero == 1.0 && std::abs(ln3 - kLn3Cllr) < kHalfBitTol && std::isfinite(big_good) &&
                  std::isfinite(big_bad);
  return {ok, "zero " + fmt("%.17g", zero) + ", ln3 " + fmt("%.9f", ln3) + ", |7000| " + fmt("%.4g", big_good) +
                  " / " + fmt("%.6g", big_bad)};
}

Outcome affine_invariance() {
  Rng rng(4242);
  double worst = 0.0;
  for (int k = 0; k < kAffineTriples; ++k) {
    const std::size_t np = 2 + rng.below(30), nd = 2 + rng.below(200);
    const double mp = 6 * (rng.uniform() - 0.5) + 2, md = 6 * (rng.uniform() - 0.5) - 2;
    const double sp_sd = 0.2 + 2 * rng.uniform(), sd_sd = 0.2 + 2 * rng.uniform();
    const auto sp = normal_sample(np, mp, sp_sd, rng.next());
    const auto sd = normal_sample(nd, md, sd_sd, rng.next());
    double a = 0.01 + 20 * rng.uniform();
    if (rng.bernoulli(0.5)) a = -a;
    const double b = 200 * (rng.uniform() - 0.5);
    auto map = [&](std::vector<double> v) {
      for (auto& x : v) x = a * x + b;
      return v;
    };
    for (auto m : {Method::ML, Method::BAYES}) {
      const auto t0 = fit_transform(ScoreSet::from_values(sp, sd), m);
      const auto t1 = fit_transform(ScoreSet::from_values(map(sp), map(sd)), m);
      for (int i = 0; i <= 20; ++i) {
        const double s = md - 2 * sd_sd + (mp + 2 * sp_sd - md + 2 * sd_sd) * i / 20.0;
        worst = std::max(worst, std::abs(llr(t0, s) - llr(t1, a * s + b)));
      }
    }
  }
  return {worst < kAffineTol, std::to_string(kAffineTriples) + " triples, max |dLLR| " + fmt("%.3g", worst)};
}

struct FixtureGroup {
  std::string name;
  std::vector<ScoreSet> sets;
};

// Hand-written sets, toy-dataset pools, and pools from the reference population
// (full and with S_p subsampled to the sparse end of the grid).
std::vector<FixtureGroup> fixture_groups() {
  std::vector<FixtureGroup> out(3);
  out[0].name = "hand";
  out[0].sets.push_back(ScoreSet::from_values({2, 4}, {-4, -2}));
  out[0].sets.push_back(ScoreSet::from_values({2, 4, 6}, {-1, 1}));
  out[0].sets.push_back(ScoreSet::from_values({1, 3.5}, {-4, -3, -2, -1, 0}));
  out[1].name = "toy";
  const auto m = fixtures::toy_matrix();
  for (const auto& c : std::vector<CaseSpec>{{"b1", "a1", "A"}, {"a2", "a1", "A"}, {"c2", "b3", "B"}, {"a1", "c1", "C"}})
    for (auto s : {Scheme::SA, Scheme::RA}) {
      auto pool = build_pool(m, PoolSpec{s, c, {}});
      if (pool.scores.np() >= kMinNp) out[1].sets.push_back(std::move(pool.scores));
    }
  out[2].name = "reference";
  SynthConfig sc;
  const auto pop = generate(sc);
  std::uint64_t k = 0;
  for (const auto& dc : make_cases(pop.meta, 20, 0.5, 5, 10)) {
    for (auto s : {Scheme::SA, Scheme::RA}) {
      const auto pool = build_pool(pop.matrix, PoolSpec{s, dc.spec, {}});
      out[2].sets.push_back(pool.scores);
      for (std::size_t np : {2u, 3u, 5u, 10u}) out[2].sets.push_back(subsample_sp(pool.scores, np, np * 31 + ++k));
    }
  }
  return out;
}

Outcome tail_moderation() {
  std::size_t total_checked = 0, total_violations = 0;
  std::string detail;
  for (const auto& group : fixture_groups()) {
    std::size_t checked = 0, violations = 0;
    double worst = 0;  // largest |LLR_BAYES| - |LLR_ML| among violations
    for (const auto& set : group.sets) {
      const auto ml = fit_transform(set, Method::ML);
      const auto by = fit_transform(set, Method::BAYES);
      const auto num = std::get<GaussianParams>(ml.numerator());
      if (!(num.mu > std::get<GaussianParams>(ml.denominator()).mu)) continue;
      const double s = num.mu + 10 * std::sqrt(num.sigma2);
      ++checked;
      const double excess = std::abs(llr(by, s)) - std::abs(llr(ml, s));
      if (!(excess < 0)) {
        ++violations;
        worst = std::max(worst, excess);
      }
    }
    total_checked += checked;
    total_violations += violations;
    std::ostringstream part;
    part << (detail.empty() ? "" : "; ") << group.name << ": " << violations << " of " << checked << " violate";
    if (violations > 0) part << " (worst excess " << std::setprecision(4) << worst << " nats)";
    detail += part.str();
  }
  return {total_checked > 0 && total_violations == 0, detail};
}

Outcome determinism() {
  const auto cfg = reference_config();
  auto csv = [](const SweepResult& r) {
    std::ostringstream out;
    write_sweep_csv(out, r.rows);
    return out.str();
  };
  const std::string first = csv(reference_sweep().result);
  const std::string second = csv(run_sweep(cfg));
  const std::string serial = csv(run_sweep_serial(cfg));
  const bool ok = first == second && first == serial && reference_sweep().result.rows.size() == 560;
  return {ok, std::to_string(first.size()) + " bytes; rerun " + (first == second ? "identical" : "differs") +
                  "; serial " + (first == serial ? "identical" : "differs")};
}

Outcome pool_correctness() {
  const auto meta = fixtures::toy_meta();
  const auto m = fixtures::toy_matrix(meta);
  std::size_t compared = 0, mismatched = 0, thrown_ok = 0;
  std::set<std::string> conditions;
  for (const auto& u : meta) conditions.insert(u.condition);
  std::vector<std::optional<std::string>> filters = {std::nullopt};
  for (const auto& c : conditions) filters.push_back(c);
  for (const auto& r : meta) {
    for (const auto& q : meta) {
      if (q.utt_id == r.utt_id) continue;
      const CaseSpec c{q.utt_id, r.utt_id, r.speaker_id};
      for (auto scheme : {Scheme::SA, Scheme::RA}) {
        for (const auto& f : filters) {
          const auto expected = oracle::enumerate_pool(m, scheme, c, f);
          const bool hp = std::any_of(expected.begin(), expected.end(), [](auto& e) { return std::get<3>(e) == Label::Hp; });
          const bool hd = std::any_of(expected.begin(), expected.end(), [](auto& e) { return std::get<3>(e) == Label::Hd; });
          try {
            const auto pool = build_pool(m, PoolSpec{scheme, c, f});
            ++compared;
            if (!hp || !hd || oracle::pool_entries(m, pool) != expected) ++mismatched;
          } catch (const InsufficientDataError&) {
            if (hp && hd) ++mismatched;
            else ++thrown_ok;
          }
        }
      }
    }
  }
  return {mismatched == 0 && compared > 0, std::to_string(compared) + " pools equal to enumeration, " +
                                               std::to_string(thrown_ok) + " correctly empty, " +
                                               std::to_string(mismatched) + " mismatches"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 oracle equivalence of the Jeffreys predictive", oracle_equivalence},
      {"2 convergence of BAYES to ML at 1e5 samples", convergence},
      {"3 sparsity trend on the reference sweep", sparsity_trend},
      {"4 RA outperforms SA at np=10", anchoring_trend},
      {"5 Cllr unit anchors", cllr_anchors},
      {"6 affine invariance of the LLR", affine_invariance},
      {"7 tail moderation of BAYES LLRs", tail_moderation},
      {"8 byte-identical reference sweep rerun", determinism},
      {"9 anchoring pools equal brute-force enumeration", pool_correctness},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
