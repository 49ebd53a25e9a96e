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
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "lrcal/score_domain.hpp"

namespace lrcal {

enum class Method { ML, BAYES };

std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view token);

/// Count, mean and sum of squared deviations of a sample.
struct SufficientStats {
  std::size_t n = 0;
  double mean = 0.0;
  double ss = 0.0;
};

/// Two-pass mean/deviation with a compensated second pass. Throws on empty
/// input or non-finite values.
SufficientStats suff_stats(std::span<const double> scores);

/// Lower bound on the ML variance, in squared score units. Only reached by
/// zero-spread training sets.
inline constexpr double kVarianceFloor = 1e-8;

struct GaussianParams {
  double mu = 0.0;
  double sigma2 = 1.0;
};

/// Sample mean and ss / (n - 1), clamped to kVarianceFloor. Needs n >= 2.
GaussianParams fit_ml(std::span<const double> scores);
GaussianParams fit_ml(const SufficientStats& st);

double gaussian_logpdf(const GaussianParams& p, double s);

/// Normal-gamma prior over (mean, precision). The improper Jeffreys prior
/// p(mu, lambda) ~ 1/lambda is the limit kappa0 -> 0, alpha0 -> -1/2,
/// beta0 -> 0 and is flagged rather than encoded by those values.
struct NormalGammaHyper {
  double mu0 = 0.0;
  double kappa0 = 0.0;
  double alpha0 = -0.5;
  double beta0 = 0.0;
  bool improper_jeffreys = true;

  static NormalGammaHyper jeffreys() { return {}; }
  static NormalGammaHyper proper(double mu0, double kappa0, double alpha0, double beta0);

  bool operator==(const NormalGammaHyper&) const = default;
};

struct NormalGammaPosterior {
  double mu_n = 0.0;
  double kappa_n = 0.0;
  double alpha_n = 0.0;
  double beta_n = 0.0;
};

/// Conjugate update of the prior with a sample summary.
/// Throws ImproperPosteriorError when the Jeffreys prior meets n < 2 or
/// ss == 0, and ConfigError for invalid proper hyperparameters.
NormalGammaPosterior update_posterior(const NormalGammaHyper& h, const SufficientStats& st);

/// Raw conjugate algebra treating `current` as the prior. No validity checks
/// beyond finiteness; used for sequential updates.
NormalGammaPosterior update_posterior(const NormalGammaPosterior& current, const SufficientStats& st);

struct StudentTParams {
  double nu = 1.0;
  double loc = 0.0;
  double scale = 1.0;
};

/// Posterior predictive of a Gaussian under a normal-gamma posterior:
/// t_{2 alpha}(mu_n, beta_n (kappa_n + 1) / (alpha_n kappa_n)).
StudentTParams predictive(const NormalGammaPosterior& post);

double student_t_logpdf(const StudentTParams& t, double s);

/// Everything needed to reproduce a fitted transform.
struct Provenance {
  std::size_t np = 0;
  std::size_t nd = 0;
  NormalGammaHyper prior;
  std::uint64_t seed = 0;
  std::string scheme = "none";

  bool operator==(const Provenance&) const = default;
};

using Density = std::variant<GaussianParams, StudentTParams>;

/// Fitted score-to-LLR function: log numerator density minus log denominator
/// density, natural log.
class LlrTransform {
 public:
  static LlrTransform ml(GaussianParams numerator, GaussianParams denominator, Provenance provenance);
  static LlrTransform bayes(StudentTParams numerator, StudentTParams denominator, Provenance provenance);

  Method method() const { return method_; }
  const Density& numerator() const { return numerator_; }
  const Density& denominator() const { return denominator_; }
  const Provenance& provenance() const { return provenance_; }

  double log_numerator(double s) const;
  double log_denominator(double s) const;
  double llr(double s) const { return log_numerator(s) - log_denominator(s); }

 private:
  LlrTransform(Method method, Density num, Density den, Provenance provenance);

  Method method_ = Method::ML;
  Density numerator_;
  Density denominator_;
  Provenance provenance_;
  double num_lognorm_ = 0.0;
  double den_lognorm_ = 0.0;
};

/// Fits one proposition's density. side names the proposition in errors.
Density fit_density(std::span<const double> scores, Method method, const NormalGammaHyper& h, Label side);

/// Fits the numerator from S_p and the denominator from S_d independently.
LlrTransform fit_transform(const ScoreSet& s, Method method,
                           const NormalGammaHyper& h = NormalGammaHyper::jeffreys(),
                           std::uint64_t seed = 0, std::string scheme = "none");

double llr(const LlrTransform& t, double s);

/// LLRs for a batch of scores, OpenMP-parallel over the batch.
std::vector<double> llr_batch(const LlrTransform& t, std::span<const double> scores);
/// Serial reference for llr_batch.
std::vector<double> llr_batch_serial(const LlrTransform& t, std::span<const double> scores);

/// `key = value` text block; every parameter written at 17 significant digits.
void write_transform(std::ostream& out, const LlrTransform& t);
LlrTransform read_transform(std::istream& in);

}  // namespace lrcal
