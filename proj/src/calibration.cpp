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

#include "lrcal/calibration.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>

#include <boost/math/special_functions/gamma.hpp>

#include "lrcal/error.hpp"
#include "lrcal/numfmt.hpp"

namespace lrcal {

namespace {
constexpr const char* kModule = "calibration";

// Neumaier summation in index order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double gaussian_lognorm(const GaussianParams& p) { return -0.5 * std::log(2.0 * std::numbers::pi * p.sigma2); }

double gaussian_kernel(const GaussianParams& p, double s) {
  const double d = s - p.mu;
  return d * d / (2.0 * p.sigma2);
}

double student_t_lognorm(const StudentTParams& t) {
  return boost::math::lgamma(0.5 * (t.nu + 1.0)) - boost::math::lgamma(0.5 * t.nu) -
         0.5 * std::log(t.nu * std::numbers::pi * t.scale * t.scale);
}

double student_t_kernel(const StudentTParams& t, double s) {
  const double z = (s - t.loc) / t.scale;
  const double az = std::fabs(z);
  // Beyond 1e100 z*z/nu would overflow; log1p(z^2/nu) = 2 log|z| - log(nu) there.
  const double log_term = az > 1e100 ? 2.0 * std::log(az) - std::log(t.nu) : std::log1p(z * z / t.nu);
  return 0.5 * (t.nu + 1.0) * log_term;
}

void check_gaussian(const GaussianParams& p) {
  if (!std::isfinite(p.mu) || !std::isfinite(p.sigma2) || !(p.sigma2 > 0.0))
    throw ConfigError(kModule, "invalid Gaussian parameters");
}

void check_student(const StudentTParams& t) {
  if (!std::isfinite(t.loc) || !std::isfinite(t.scale) || !std::isfinite(t.nu) || !(t.nu > 0.0) || !(t.scale > 0.0))
    throw ConfigError(kModule, "invalid Student's t parameters");
}
}  // namespace

std::string_view to_string(Method method) { return method == Method::ML ? "ML" : "BAYES"; }

std::optional<Method> parse_method(std::string_view token) {
  if (token == "ML") return Method::ML;
  if (token == "BAYES") return Method::BAYES;
  return std::nullopt;
}

SufficientStats suff_stats(std::span<const double> scores) {
  if (scores.empty()) throw InsufficientDataError(kModule, "", "empty score list");
  bool all_equal = true;
  CompensatedSum sum;
  for (double x : scores) {
    if (!std::isfinite(x)) throw ConfigError(kModule, "non-finite score");
    sum.add(x);
    all_equal = all_equal && x == scores.front();
  }
  SufficientStats st;
  st.n = scores.size();
  if (all_equal) {
    st.mean = scores.front();
    st.ss = 0.0;
    return st;
  }
  const double n = static_cast<double>(st.n);
  st.mean = sum.value() / n;
  // Corrected two-pass: subtract the residual of the first-pass mean.
  CompensatedSum dev, dev2;
  for (double x : scores) {
    const double d = x - st.mean;
    dev.add(d);
    dev2.add(d * d);
  }
  st.ss = std::max(0.0, dev2.value() - dev.value() * dev.value() / n);
  return st;
}

GaussianParams fit_ml(const SufficientStats& st) {
  if (st.n < 2) throw InsufficientDataError(kModule, "", "ML fit needs at least 2 scores, got " + std::to_string(st.n));
  const double var = st.ss / static_cast<double>(st.n - 1);
  return {st.mean, std::max(var, kVarianceFloor)};
}

GaussianParams fit_ml(std::span<const double> scores) {
  if (scores.size() < 2)
    throw InsufficientDataError(kModule, "", "ML fit needs at least 2 scores, got " + std::to_string(scores.size()));
  return fit_ml(suff_stats(scores));
}

double gaussian_logpdf(const GaussianParams& p, double s) {
  check_gaussian(p);
  return gaussian_lognorm(p) - gaussian_kernel(p, s);
}

NormalGammaHyper NormalGammaHyper::proper(double mu0, double kappa0, double alpha0, double beta0) {
  NormalGammaHyper h{mu0, kappa0, alpha0, beta0, false};
  if (!std::isfinite(mu0) || !(kappa0 > 0.0) || !(alpha0 > 0.0) || !(beta0 > 0.0) || !std::isfinite(kappa0) ||
      !std::isfinite(alpha0) || !std::isfinite(beta0)) {
    throw ConfigError(kModule, "proper normal-gamma prior needs finite mu0 and kappa0, alpha0, beta0 > 0");
  }
  return h;
}

NormalGammaPosterior update_posterior(const NormalGammaPosterior& current, const SufficientStats& st) {
  const double n = static_cast<double>(st.n);
  NormalGammaPosterior out;
  out.kappa_n = current.kappa_n + n;
  if (!(out.kappa_n > 0.0)) throw ImproperPosteriorError(kModule, "improper posterior: kappa_n <= 0");
  out.mu_n = (current.kappa_n * current.mu_n + n * st.mean) / out.kappa_n;
  out.alpha_n = current.alpha_n + 0.5 * n;
  const double dm = st.mean - current.mu_n;
  out.beta_n = current.beta_n + 0.5 * st.ss + current.kappa_n * n * dm * dm / (2.0 * out.kappa_n);
  return out;
}

NormalGammaPosterior update_posterior(const NormalGammaHyper& h, const SufficientStats& st) {
  if (h.improper_jeffreys) {
    if (st.n < 2)
      throw ImproperPosteriorError(kModule, "improper posterior: Jeffreys prior needs at least 2 scores, got " +
                                                std::to_string(st.n));
    if (!(st.ss > 0.0))
      throw ImproperPosteriorError(kModule, "improper posterior: Jeffreys prior with zero-spread scores");
    // Limit values (kappa0, alpha0, beta0) = (0, -1/2, 0) make the general
    // update reduce to kappa_n = n, mu_n = mean, alpha_n = (n-1)/2, beta_n = ss/2.
    return update_posterior(NormalGammaPosterior{0.0, 0.0, -0.5, 0.0}, st);
  }
  const auto checked = NormalGammaHyper::proper(h.mu0, h.kappa0, h.alpha0, h.beta0);
  return update_posterior(NormalGammaPosterior{checked.mu0, checked.kappa0, checked.alpha0, checked.beta0}, st);
}

StudentTParams predictive(const NormalGammaPosterior& post) {
  if (!(post.alpha_n > 0.0)) throw ImproperPosteriorError(kModule, "improper predictive: alpha_n <= 0");
  if (!(post.kappa_n > 0.0) || !(post.beta_n > 0.0))
    throw ImproperPosteriorError(kModule, "improper predictive: kappa_n and beta_n must be positive");
  StudentTParams t;
  t.nu = 2.0 * post.alpha_n;
  t.loc = post.mu_n;
  t.scale = std::sqrt(post.beta_n * (post.kappa_n + 1.0) / (post.alpha_n * post.kappa_n));
  return t;
}

double student_t_logpdf(const StudentTParams& t, double s) {
  check_student(t);
  return student_t_lognorm(t) - student_t_kernel(t, s);
}

LlrTransform LlrTransform::ml(GaussianParams numerator, GaussianParams denominator, Provenance provenance) {
  check_gaussian(numerator);
  check_gaussian(denominator);
  return LlrTransform(Method::ML, numerator, denominator, std::move(provenance));
}

LlrTransform LlrTransform::bayes(StudentTParams numerator, StudentTParams denominator, Provenance provenance) {
  check_student(numerator);
  check_student(denominator);
  return LlrTransform(Method::BAYES, numerator, denominator, std::move(provenance));
}

namespace {
double log_norm(const Density& d) {
  return std::visit(
      [](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GaussianParams>)
          return gaussian_lognorm(p);
        else
          return student_t_lognorm(p);
      },
      d);
}

double log_kernel(const Density& d, double s) {
  return std::visit(
      [s](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GaussianParams>)
          return gaussian_kernel(p, s);
        else
          return student_t_kernel(p, s);
      },
      d);
}
}  // namespace

// Parameters are validated by the factories, so the normalizers are cached once.
LlrTransform::LlrTransform(Method method, Density num, Density den, Provenance provenance)
    : method_(method),
      numerator_(num),
      denominator_(den),
      provenance_(std::move(provenance)),
      num_lognorm_(log_norm(numerator_)),
      den_lognorm_(log_norm(denominator_)) {}

double LlrTransform::log_numerator(double s) const { return num_lognorm_ - log_kernel(numerator_, s); }
double LlrTransform::log_denominator(double s) const { return den_lognorm_ - log_kernel(denominator_, s); }

Density fit_density(std::span<const double> scores, Method method, const NormalGammaHyper& h, Label side) {
  const std::string side_name(to_string(side));
  if (scores.size() < 2) {
    throw InsufficientDataError(kModule, side_name,
                                "need at least 2 training scores, got " + std::to_string(scores.size()));
  }
  const auto st = suff_stats(scores);
  if (method == Method::ML) return fit_ml(st);
  try {
    return predictive(update_posterior(h, st));
  } catch (const ImproperPosteriorError& e) {
    throw ImproperPosteriorError(kModule, e.detail() + " (" + side_name + " side)");
  }
}

LlrTransform fit_transform(const ScoreSet& s, Method method, const NormalGammaHyper& h, std::uint64_t seed,
                           std::string scheme) {
  const auto sp = s.sp_values();
  const auto sd = s.sd_values();
  auto num = fit_density(sp, method, h, Label::Hp);
  auto den = fit_density(sd, method, h, Label::Hd);
  Provenance prov{s.np(), s.nd(), h, seed, std::move(scheme)};
  if (method == Method::ML)
    return LlrTransform::ml(std::get<GaussianParams>(num), std::get<GaussianParams>(den), std::move(prov));
  return LlrTransform::bayes(std::get<StudentTParams>(num), std::get<StudentTParams>(den), std::move(prov));
}

double llr(const LlrTransform& t, double s) { return t.llr(s); }

std::vector<double> llr_batch(const LlrTransform& t, std::span<const double> scores) {
  std::vector<double> out(scores.size());
  const auto n = static_cast<std::ptrdiff_t>(scores.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = t.llr(scores[i]);
  return out;
}

std::vector<double> llr_batch_serial(const LlrTransform& t, std::span<const double> scores) {
  std::vector<double> out;
  out.reserve(scores.size());
  for (double s : scores) out.push_back(t.llr(s));
  return out;
}

// Serialization.

namespace {
void write_density(std::ostream& out, std::string_view prefix, const Density& d) {
  if (const auto* g = std::get_if<GaussianParams>(&d)) {
    out << prefix << ".mu = " << format_double(g->mu) << '\n';
    out << prefix << ".sigma2 = " << format_double(g->sigma2) << '\n';
  } else {
    const auto& t = std::get<StudentTParams>(d);
    out << prefix << ".nu = " << format_double(t.nu) << '\n';
    out << prefix << ".loc = " << format_double(t.loc) << '\n';
    out << prefix << ".scale = " << format_double(t.scale) << '\n';
  }
}

struct KeyValues {
  std::map<std::string, std::pair<std::string, std::size_t>> entries;
  std::map<std::string, bool> used;

  const std::string& raw(const std::string& key) {
    auto it = entries.find(key);
    if (it == entries.end()) throw ConfigError(kModule, "transform is missing key '" + key + "'");
    used[key] = true;
    return it->second.first;
  }
  double number(const std::string& key) {
    const auto& v = raw(key);
    auto d = parse_finite_double(v);
    if (!d) throw ParseError(kModule, entries[key].second, "key '" + key + "' has non-numeric value '" + v + "'");
    return *d;
  }
  std::uint64_t unsigned_int(const std::string& key) {
    const auto& v = raw(key);
    std::uint64_t out = 0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
      throw ParseError(kModule, entries[key].second, "key '" + key + "' needs a non-negative integer");
    return out;
  }
};
}  // namespace

void write_transform(std::ostream& out, const LlrTransform& t) {
  out << "method = " << to_string(t.method()) << '\n';
  write_density(out, "numerator", t.numerator());
  write_density(out, "denominator", t.denominator());
  const auto& p = t.provenance();
  out << "provenance.np = " << p.np << '\n';
  out << "provenance.nd = " << p.nd << '\n';
  out << "provenance.prior = " << (p.prior.improper_jeffreys ? "jeffreys" : "proper") << '\n';
  if (!p.prior.improper_jeffreys) {
    out << "provenance.mu0 = " << format_double(p.prior.mu0) << '\n';
    out << "provenance.kappa0 = " << format_double(p.prior.kappa0) << '\n';
    out << "provenance.alpha0 = " << format_double(p.prior.alpha0) << '\n';
    out << "provenance.beta0 = " << format_double(p.prior.beta0) << '\n';
  }
  out << "provenance.seed = " << p.seed << '\n';
  out << "provenance.scheme = " << p.scheme << '\n';
}

LlrTransform read_transform(std::istream& in) {
  KeyValues kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string_view::npos) throw ParseError(kModule, lineno, "expected 'key = value'");
    std::string key(trim(t.substr(0, eq)));
    std::string value(trim(t.substr(eq + 1)));
    if (key.empty()) throw ParseError(kModule, lineno, "empty key");
    if (!kv.entries.emplace(key, std::make_pair(value, lineno)).second)
      throw ParseError(kModule, lineno, "duplicate key '" + key + "'");
  }
  auto method = parse_method(kv.raw("method"));
  if (!method) throw ConfigError(kModule, "unknown method '" + kv.raw("method") + "'");

  Provenance prov;
  prov.np = kv.unsigned_int("provenance.np");
  prov.nd = kv.unsigned_int("provenance.nd");
  const auto& prior = kv.raw("provenance.prior");
  if (prior == "jeffreys") {
    prov.prior = NormalGammaHyper::jeffreys();
  } else if (prior == "proper") {
    prov.prior = NormalGammaHyper::proper(kv.number("provenance.mu0"), kv.number("provenance.kappa0"),
                                          kv.number("provenance.alpha0"), kv.number("provenance.beta0"));
  } else {
    throw ConfigError(kModule, "unknown prior '" + prior + "'");
  }
  prov.seed = kv.unsigned_int("provenance.seed");
  prov.scheme = kv.raw("provenance.scheme");

  auto result = [&]() {
    if (*method == Method::ML) {
      GaussianParams num{kv.number("numerator.mu"), kv.number("numerator.sigma2")};
      GaussianParams den{kv.number("denominator.mu"), kv.number("denominator.sigma2")};
      return LlrTransform::ml(num, den, prov);
    }
    StudentTParams num{kv.number("numerator.nu"), kv.number("numerator.loc"), kv.number("numerator.scale")};
    StudentTParams den{kv.number("denominator.nu"), kv.number("denominator.loc"), kv.number("denominator.scale")};
    return LlrTransform::bayes(num, den, prov);
  }();
  for (const auto& [key, entry] : kv.entries) {
    if (!kv.used.count(key)) throw ParseError(kModule, entry.second, "unknown key '" + key + "'");
  }
  return result;
}

}  // namespace lrcal
