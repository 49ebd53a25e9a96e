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

// Brute-force (mu, lambda) quadrature of a Gaussian model's posterior and
// predictive density. Nothing here calls into the library: the posterior is
// prior x likelihood evaluated from the raw samples and normalized on the
// grid, so it checks the closed-form conjugate algebra independently.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <vector>

namespace oracle {

struct GridSpec {
  // Integration domain. lambda is integrated in log space over
  // [log_lambda_peak + t_lo, log_lambda_peak + t_hi]; mu over
  // mu_center +/- half_width_sd / sqrt(precision_weight * lambda).
  double mu_center = 0.0;
  double precision_weight = 1.0;
  double log_lambda_peak = 0.0;
  double t_lo = -45.0;
  double t_hi = 7.0;
  double half_width_sd = 20.0;
  int lambda_nodes = 3000;
  int mu_nodes = 1201;
};

class GridPosterior {
 public:
  // log_prior(mu, lambda) up to a constant.
  GridPosterior(std::vector<double> data, std::function<double(double, double)> log_prior, GridSpec spec)
      : data_(std::move(data)), spec_(spec) {
    const double dt = (spec_.t_hi - spec_.t_lo) / (spec_.lambda_nodes - 1);
    double max_lp = -INFINITY;
    for (int i = 0; i < spec_.lambda_nodes; ++i) {
      const double t = spec_.log_lambda_peak + spec_.t_lo + i * dt;
      const double lambda = std::exp(t);
      const double hw = spec_.half_width_sd / std::sqrt(spec_.precision_weight * lambda);
      const double dmu = 2.0 * hw / (spec_.mu_nodes - 1);
      for (int j = 0; j < spec_.mu_nodes; ++j) {
        const double mu = spec_.mu_center - hw + j * dmu;
        double sq = 0.0;
        for (double x : data_) sq += (x - mu) * (x - mu);
        const double loglik = 0.5 * data_.size() * std::log(lambda) - 0.5 * lambda * sq;
        // Trapezoid end weights and the d(lambda) = lambda dt Jacobian.
        const double wt = (i == 0 || i == spec_.lambda_nodes - 1) ? 0.5 : 1.0;
        const double wm = (j == 0 || j == spec_.mu_nodes - 1) ? 0.5 : 1.0;
        const double lw = log_prior(mu, lambda) + loglik + std::log(lambda * dt * dmu * wt * wm);
        nodes_.push_back({mu, lambda, lw});
        max_lp = std::max(max_lp, lw);
      }
    }
    log_shift_ = max_lp;
    double z = 0.0;
    for (auto& n : nodes_) {
      n.w = std::exp(n.logw - max_lp);
      z += n.w;
    }
    z_ = z;
  }

  // Predictive density p(s | data) = E_post[N(s | mu, 1/lambda)].
  double predictive(double s) const {
    double acc = 0.0;
    for (const auto& n : nodes_) {
      const double d = s - n.mu;
      acc += n.w * std::sqrt(n.lambda / (2.0 * std::numbers::pi)) * std::exp(-0.5 * n.lambda * d * d);
    }
    return acc / z_;
  }

  // Log of the normalizing constant of prior x likelihood (with the same
  // unnormalized prior the caller supplied).
  double log_evidence() const { return log_shift_ + std::log(z_); }

  // Normalized posterior density at (mu, lambda).
  double posterior_density(double mu, double lambda, const std::function<double(double, double)>& log_prior) const {
    double sq = 0.0;
    for (double x : data_) sq += (x - mu) * (x - mu);
    const double lp = log_prior(mu, lambda) + 0.5 * data_.size() * std::log(lambda) - 0.5 * lambda * sq;
    return std::exp(lp - log_evidence());
  }

  double mean_mu() const { return moment([](const Node& n) { return n.mu; }); }
  double mean_lambda() const { return moment([](const Node& n) { return n.lambda; }); }

 private:
  struct Node {
    double mu, lambda, logw;
    double w = 0.0;
  };
  template <class F>
  double moment(F f) const {
    double acc = 0.0;
    for (const auto& n : nodes_) acc += n.w * f(n);
    return acc / z_;
  }

  std::vector<double> data_;
  GridSpec spec_;
  std::vector<Node> nodes_;
  double log_shift_ = 0.0;
  double z_ = 0.0;
};

// p(mu, lambda) ~ 1/lambda.
inline double log_jeffreys_prior(double, double lambda) { return -std::log(lambda); }

// Grid adapted to a Jeffreys posterior over `data`.
inline GridSpec jeffreys_grid(const std::vector<double>& data) {
  const double n = static_cast<double>(data.size());
  const double mean = std::accumulate(data.begin(), data.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : data) ss += (x - mean) * (x - mean);
  GridSpec g;
  g.mu_center = mean;
  g.precision_weight = n;
  g.log_lambda_peak = std::log(std::max(n - 1.0, 1.0) / ss);
  return g;
}

// Adaptive Simpson over [a, b].
template <class F>
double adaptive_simpson(F f, double a, double b, double tol, int depth = 50) {
  struct Impl {
    F& f;
    double rec(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
      return rec(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + rec(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  } impl{f};
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return impl.rec(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

}  // namespace oracle
