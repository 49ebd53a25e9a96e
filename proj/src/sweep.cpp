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

#include "lrcal/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include "lrcal/error.hpp"
#include "lrcal/evaluation.hpp"
#include "lrcal/numfmt.hpp"
#include "lrcal/rng.hpp"

namespace lrcal {

namespace {
constexpr const char* kModule = "sweep";

// Stream tags keep the per-purpose seeds apart.
constexpr std::uint64_t kTagData = 0x64617461;     // "data"
constexpr std::uint64_t kTagCases = 0x63617365;    // "case"
constexpr std::uint64_t kTagNp = 0x6e705f73;       // "np_s"
constexpr std::uint64_t kTagNdCap = 0x6e645f63;    // "nd_c"

std::uint64_t scheme_word(Scheme s) { return s == Scheme::SA ? 1 : 2; }

struct CellFilter {
  std::optional<Method> method;
  std::optional<std::size_t> np;
};

// Everything a case contributes that does not depend on N_p or the method.
struct PreparedCase {
  bool usable = false;
  Label truth = Label::Hp;
  double score = 0.0;
  std::vector<LabeledScore> sp;
  // Indexed like cfg.methods; empty when the S_d fit failed for that method.
  std::vector<std::optional<Density>> denominators;
};

std::vector<SweepRow> run_unit(const SweepConfig& cfg, std::size_t replicate, Scheme scheme,
                               const ScoreMatrix* data, const CellFilter& filter) {
  std::vector<Method> methods;
  for (auto m : cfg.methods)
    if (!filter.method || *filter.method == m) methods.push_back(m);
  std::vector<std::size_t> nps;
  for (auto np : cfg.np_grid)
    if (!filter.np || *filter.np == np) nps.push_back(np);

  std::vector<SweepRow> rows;
  for (auto m : methods) {
    for (auto np : nps) {
      SweepRow row;
      row.scheme = scheme;
      row.method = m;
      row.np = np;
      row.replicate = replicate;
      row.seed = cell_seed(cfg.base_seed, scheme, np, replicate);
      rows.push_back(row);
    }
  }

  try {
    std::optional<SynthData> synth;
    const ScoreMatrix* matrix = data;
    if (cfg.synth) {
      SynthConfig sc = *cfg.synth;
      sc.seed = derive_seed({cfg.synth->seed, cfg.base_seed, kTagData, replicate});
      synth = generate(sc);
      matrix = &synth->matrix;
    }
    if (!matrix) throw ConfigError(kModule, "no score data supplied");

    const auto cases = make_cases(matrix->utterances(), cfg.n_cases, cfg.same_origin_fraction,
                                  derive_seed({cfg.base_seed, kTagCases, replicate}), cfg.min_suspect_utts);

    std::vector<PreparedCase> prepared(cases.size());
    for (std::size_t k = 0; k < cases.size(); ++k) {
      auto& pc = prepared[k];
      try {
        const auto rc = resolve_case(*matrix, cases[k].spec);
        auto sc = matrix->lookup(rc.q, rc.r);
        if (!sc) continue;
        std::optional<std::string> cond;
        if (cfg.condition_matching) cond = matrix->utterance(rc.q).condition;
        Pool pool = build_pool(*matrix, scheme, rc, cond);
        std::vector<double> sd = pool.scores.sd_values();
        if (cfg.nd_cap && sd.size() > *cfg.nd_cap) {
          Rng rng(derive_seed({cfg.base_seed, kTagNdCap, scheme_word(scheme), replicate, k}));
          std::vector<double> capped;
          capped.reserve(*cfg.nd_cap);
          for (auto i : sample_without_replacement(sd.size(), *cfg.nd_cap, rng)) capped.push_back(sd[i]);
          sd = std::move(capped);
        }
        pc.denominators.resize(methods.size());
        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
          try {
            pc.denominators[mi] = fit_density(sd, methods[mi], cfg.prior, Label::Hd);
          } catch (const Error&) {
          }
        }
        pc.sp = pool.scores.sp();
        pc.score = *sc;
        pc.truth = cases[k].same_origin ? Label::Hp : Label::Hd;
        pc.usable = true;
      } catch (const Error&) {
        // Cases the protocol cannot serve are left out of every cell.
      }
    }

    for (std::size_t ni = 0; ni < nps.size(); ++ni) {
      const std::size_t np = nps[ni];
      const std::uint64_t seed = cell_seed(cfg.base_seed, scheme, np, replicate);
      std::vector<std::vector<LlrTrial>> trials(methods.size());
      for (std::size_t k = 0; k < prepared.size(); ++k) {
        const auto& pc = prepared[k];
        if (!pc.usable || pc.sp.size() < np) continue;
        const ScoreSet drawn = subsample_sp(ScoreSet(pc.sp, {}), np, derive_seed({seed, k}));
        const auto sp = drawn.sp_values();
        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
          if (!pc.denominators[mi]) continue;
          try {
            const Density num = fit_density(sp, methods[mi], cfg.prior, Label::Hp);
            Provenance prov{np, 0, cfg.prior, seed, std::string(to_string(scheme))};
            const auto t = methods[mi] == Method::ML
                               ? LlrTransform::ml(std::get<GaussianParams>(num),
                                                  std::get<GaussianParams>(*pc.denominators[mi]), prov)
                               : LlrTransform::bayes(std::get<StudentTParams>(num),
                                                     std::get<StudentTParams>(*pc.denominators[mi]), prov);
            trials[mi].push_back({t.llr(pc.score), pc.truth, std::to_string(k)});
          } catch (const Error&) {
          }
        }
      }
      for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        auto& row = rows[mi * nps.size() + ni];
        for (const auto& t : trials[mi]) ++(t.label == Label::Hp ? row.n_cases_p : row.n_cases_d);
        if (row.n_cases_p == 0) {
          row.error = "no_Hp_trials";
        } else if (row.n_cases_d == 0) {
          row.error = "no_Hd_trials";
        } else {
          row.cllr = cllr(trials[mi]).cllr;
        }
      }
    }
  } catch (const std::exception&) {
    for (auto& row : rows) {
      row.cllr.reset();
      row.n_cases_p = row.n_cases_d = 0;
      row.error = "unit_failed";
    }
  }
  return rows;
}

std::vector<SweepRow> assemble(const SweepConfig& cfg, const std::vector<std::vector<SweepRow>>& units) {
  // units are laid out as [replicate * schemes + scheme_index], each holding
  // rows in (method, np) order.
  std::vector<SweepRow> rows;
  const std::size_t ns = cfg.schemes.size();
  const std::size_t nn = cfg.np_grid.size();
  rows.reserve(units.size() * cfg.methods.size() * nn);
  for (std::size_t si = 0; si < ns; ++si)
    for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi)
      for (std::size_t ni = 0; ni < nn; ++ni)
        for (std::size_t r = 0; r < cfg.n_replicates; ++r) rows.push_back(units[r * ns + si][mi * nn + ni]);
  return rows;
}

SweepResult finish(const SweepConfig& cfg, const std::vector<std::vector<SweepRow>>& units) {
  SweepResult out;
  out.rows = assemble(cfg, units);
  out.summary = summarize(cfg, out.rows);
  return out;
}
}  // namespace

void SweepConfig::validate() const {
  if (synth && (!metadata_path.empty() || !scores_path.empty()))
    throw ConfigError(kModule, "choose either a synthetic source or data files, not both");
  if (synth) synth->validate();
  if (schemes.empty()) throw ConfigError(kModule, "schemes must not be empty");
  if (methods.empty()) throw ConfigError(kModule, "methods must not be empty");
  if (np_grid.empty()) throw ConfigError(kModule, "np_grid must not be empty");
  if (np_grid.front() < kMinNp) throw ConfigError(kModule, "np_grid values must be at least 2");
  for (std::size_t i = 1; i < np_grid.size(); ++i)
    if (!(np_grid[i] > np_grid[i - 1])) throw ConfigError(kModule, "np_grid must be strictly ascending");
  if (n_replicates < 1) throw ConfigError(kModule, "n_replicates must be at least 1");
  if (nd_cap && *nd_cap < 2) throw ConfigError(kModule, "nd_cap must be at least 2");
  if (!(same_origin_fraction >= 0.0 && same_origin_fraction <= 1.0))
    throw ConfigError(kModule, "same_origin_fraction must lie in [0, 1]");
}

std::uint64_t cell_seed(std::uint64_t base_seed, Scheme scheme, std::size_t np, std::size_t replicate) {
  return derive_seed({base_seed, kTagNp, scheme_word(scheme), np, replicate});
}

SweepResult run_sweep(const SweepConfig& cfg, const ScoreMatrix* data) {
  cfg.validate();
  const std::size_t ns = cfg.schemes.size();
  std::vector<std::vector<SweepRow>> units(cfg.n_replicates * ns);
  const auto n_units = static_cast<std::ptrdiff_t>(units.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t u = 0; u < n_units; ++u) {
    const auto uu = static_cast<std::size_t>(u);
    units[uu] = run_unit(cfg, uu / ns, cfg.schemes[uu % ns], data, {});
  }
  return finish(cfg, units);
}

SweepResult run_sweep_serial(const SweepConfig& cfg, const ScoreMatrix* data) {
  cfg.validate();
  const std::size_t ns = cfg.schemes.size();
  std::vector<std::vector<SweepRow>> units(cfg.n_replicates * ns);
  for (std::size_t u = 0; u < units.size(); ++u) units[u] = run_unit(cfg, u / ns, cfg.schemes[u % ns], data, {});
  return finish(cfg, units);
}

SweepRow run_cell(const SweepConfig& cfg, Scheme scheme, Method method, std::size_t np, std::size_t replicate,
                  const ScoreMatrix* data) {
  cfg.validate();
  auto rows = run_unit(cfg, replicate, scheme, data, {method, np});
  if (rows.size() != 1) throw ConfigError(kModule, "cell is not part of the configured grid");
  return rows.front();
}

std::vector<CellSummary> summarize(const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
  std::vector<CellSummary> out;
  for (auto s : cfg.schemes) {
    for (auto m : cfg.methods) {
      for (auto np : cfg.np_grid) {
        CellSummary c{s, m, np, 0, std::nullopt};
        double sum = 0.0;
        for (const auto& r : rows) {
          if (r.scheme == s && r.method == m && r.np == np && r.cllr) {
            sum += *r.cllr;
            ++c.n_ok;
          }
        }
        if (c.n_ok > 0) c.mean_cllr = sum / static_cast<double>(c.n_ok);
        out.push_back(c);
      }
    }
  }
  return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    out << to_string(r.scheme) << ',' << to_string(r.method) << ',' << r.np << ',' << r.replicate << ',' << r.seed
        << ',' << r.n_cases_p << ',' << r.n_cases_d << ',';
    if (r.cllr)
      out << format_double(*r.cllr);
    else
      out << "error:" << r.error;
    out << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line) || trim(line) != kSweepCsvHeader)
    throw ParseError(kModule, lineno, "missing sweep CSV header");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (;;) {
      auto comma = line.find(',', start);
      f.emplace_back(trim(std::string_view(line).substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (f.size() != 8) throw ParseError(kModule, lineno, "expected 8 fields");
    SweepRow r;
    auto scheme = parse_scheme(f[0]);
    auto method = parse_method(f[1]);
    auto np = parse_integer(f[2]);
    auto rep = parse_integer(f[3]);
    auto ncp = parse_integer(f[5]);
    auto ncd = parse_integer(f[6]);
    std::uint64_t seed = 0;
    auto res = std::from_chars(f[4].data(), f[4].data() + f[4].size(), seed);
    if (!scheme || !method || !np || !rep || !ncp || !ncd || res.ec != std::errc())
      throw ParseError(kModule, lineno, "malformed sweep row");
    r.scheme = *scheme;
    r.method = *method;
    r.np = static_cast<std::size_t>(*np);
    r.replicate = static_cast<std::size_t>(*rep);
    r.seed = seed;
    r.n_cases_p = static_cast<std::size_t>(*ncp);
    r.n_cases_d = static_cast<std::size_t>(*ncd);
    if (f[7].rfind("error:", 0) == 0) {
      r.error = f[7].substr(6);
    } else {
      auto v = parse_finite_double(f[7]);
      if (!v) throw ParseError(kModule, lineno, "bad cllr '" + f[7] + "'");
      r.cllr = *v;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_summary_csv(std::ostream& out, const SweepConfig& cfg, const std::vector<CellSummary>& summary) {
  out << "# rng=" << kRngAlgorithm << " base_seed=" << cfg.base_seed << " n_replicates=" << cfg.n_replicates << '\n';
  out << "scheme,method,np,n_ok,mean_cllr\n";
  for (const auto& c : summary) {
    out << to_string(c.scheme) << ',' << to_string(c.method) << ',' << c.np << ',' << c.n_ok << ',';
    if (c.mean_cllr)
      out << format_double(*c.mean_cllr);
    else
      out << "NA";
    out << '\n';
  }
}

}  // namespace lrcal
