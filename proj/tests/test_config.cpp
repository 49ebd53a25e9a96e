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

#include <doctest.h>

#include <sstream>

#include "lrcal/config.hpp"
#include "lrcal/error.hpp"

using namespace lrcal;

namespace {
IniDocument ini(const std::string& text) {
  std::istringstream in(text);
  return IniDocument::parse(in);
}
}  // namespace

TEST_CASE("empty [synth] section gives the reference defaults") {
  CHECK(synth_config_from(ini("[synth]\n")) == SynthConfig{});
}

TEST_CASE("synth keys are read") {
  auto c = synth_config_from(ini(R"(# population
[synth]
n_speakers = 7
utts_per_speaker = 3
conditions = a:0.25 b:0.75
mu_tar = 1.5
sigma_tar = 0.5
mu_non = -2
sigma_non = 2
speaker_shift_sigma = 0
mismatch_shift = 1
noise_dof = 4
seed = 18446744073709551615
)"));
  CHECK(c.n_speakers == 7);
  CHECK(c.utts_per_speaker == 3);
  CHECK(c.conditions == std::vector<ConditionWeight>{{"a", 0.25}, {"b", 0.75}});
  CHECK(c.mu_tar == 1.5);
  CHECK(c.sigma_tar == 0.5);
  CHECK(c.mu_non == -2);
  CHECK(c.sigma_non == 2);
  CHECK(c.speaker_shift_sigma == 0);
  CHECK(c.mismatch_shift == 1);
  CHECK(c.noise_dof == 4);
  CHECK(c.seed == 18446744073709551615ULL);
}

TEST_CASE("conditions parsing") {
  CHECK(parse_conditions("none").empty());
  CHECK(parse_conditions("x:1") == std::vector<ConditionWeight>{{"x", 1.0}});
  CHECK_THROWS_AS(parse_conditions("x"), ConfigError);
  CHECK_THROWS_AS(parse_conditions("x:abc"), ConfigError);
  CHECK_THROWS_AS(parse_conditions(""), ConfigError);
}

TEST_CASE("unknown keys and sections are errors naming them") {
  try {
    synth_config_from(ini("[synth]\nn_speakerz = 3\n"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("n_speakerz") != std::string::npos);
    CHECK(e.line() == 2);
  }
  try {
    synth_config_from(ini("[synth]\n[bogus]\n"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
  }
  CHECK_THROWS_AS(synth_config_from(ini("n_speakers = 3\n")), ParseError);
  CHECK_THROWS_AS(ini("[synth]\nseed = 1\nseed = 2\n"), ParseError);
  CHECK_THROWS_AS(ini("[synth]\nno value here\n"), ParseError);
  CHECK_THROWS_AS(synth_config_from(ini("[synth]\nn_speakers = -3\n")), ParseError);
  CHECK_THROWS_AS(synth_config_from(ini("[synth]\nmu_tar = high\n")), ParseError);
}

TEST_CASE("sweep config defaults") {
  auto c = sweep_config_from(ini("[synth]\n[sweep]\n"));
  REQUIRE(c.synth);
  CHECK(c.np_grid == std::vector<std::size_t>{2, 3, 5, 10, 20, 50, 100});
  CHECK(c.n_replicates == 20);
  CHECK(c.min_suspect_utts == 10);
  CHECK_FALSE(c.nd_cap);
  CHECK(c.schemes == std::vector<Scheme>{Scheme::SA, Scheme::RA});
  CHECK(c.methods == std::vector<Method>{Method::ML, Method::BAYES});
  CHECK(c.prior == NormalGammaHyper::jeffreys());
}

TEST_CASE("sweep keys are read") {
  auto c = sweep_config_from(ini(R"([synth]
seed = 4
[sweep]
schemes = RA
methods = BAYES ML
np_grid = 2 4
n_replicates = 3
base_seed = 99
min_suspect_utts = 5
nd_cap = 40
n_cases = 10
same_origin_fraction = 0.25
condition_matching = true
prior = proper
mu0 = 1
kappa0 = 2
alpha0 = 3
beta0 = 4
output = out.csv
)"));
  CHECK(c.synth->seed == 4);
  CHECK(c.schemes == std::vector<Scheme>{Scheme::RA});
  CHECK(c.methods == std::vector<Method>{Method::BAYES, Method::ML});
  CHECK(c.np_grid == std::vector<std::size_t>{2, 4});
  CHECK(c.n_replicates == 3);
  CHECK(c.base_seed == 99);
  CHECK(c.min_suspect_utts == 5);
  CHECK(c.nd_cap == 40u);
  CHECK(c.n_cases == 10);
  CHECK(c.same_origin_fraction == 0.25);
  CHECK(c.condition_matching);
  CHECK(c.prior == NormalGammaHyper::proper(1, 2, 3, 4));
  CHECK(c.output == "out.csv");
}

TEST_CASE("[data] paths resolve against the config directory") {
  auto c = sweep_config_from(ini("[data]\nmetadata = m.txt\nscores = /abs/s.txt\n[sweep]\n"), "/cfg");
  CHECK_FALSE(c.synth);
  CHECK(c.metadata_path == "/cfg/m.txt");
  CHECK(c.scores_path == "/abs/s.txt");
}

TEST_CASE("sweep config errors") {
  CHECK_THROWS_AS(sweep_config_from(ini("[sweep]\n")), ConfigError);
  CHECK_THROWS_AS(sweep_config_from(ini("[synth]\n[data]\nmetadata = a\nscores = b\n[sweep]\n")), ConfigError);
  CHECK_THROWS_AS(sweep_config_from(ini("[data]\nmetadata = a\n[sweep]\n")), ConfigError);
  CHECK_THROWS_AS(sweep_config_from(ini("[synth]\n[sweep]\nschemes = XX\n")), ParseError);
  CHECK_THROWS_AS(sweep_config_from(ini("[synth]\n[sweep]\nmethods = ml\n")), ParseError);
  CHECK_THROWS_AS(sweep_config_from(ini("[synth]\n[sweep]\nprior = flat\n")), ParseError);
  CHECK_THROWS_AS(sweep_config_from(ini("[synth]\n[sweep]\nnp_grid = 1 2\n")), ConfigError);
  CHECK_THROWS_AS(sweep_config_from(ini("[synth]\n[sweep]\ncondition_matching = maybe\n")), ParseError);
  CHECK_THROWS_AS(sweep_config_from(ini("[synth]\n[sweep]\nsame_origin_fraction = 2\n")), ConfigError);
}
