#include "seisdiff/diffusion.hpp"

#include "seisdiff/rng.hpp"

#include <cmath>

namespace seisdiff {

Patch q_sample(const Patch& x0, int t, const Patch& eps, const NoiseSchedule& s) {
  require_same_shape(x0, eps, "q_sample");
  double abar = s.alpha_bar(t);
  float a = float(std::sqrt(abar));
  float b = float(std::sqrt(1.0 - abar));
  return a * x0 + b * eps;
}

QPosterior q_posterior(const Patch& x0, const Patch& xt, int t, const NoiseSchedule& s) {
  require_same_shape(x0, xt, "q_posterior");
  PosteriorCoeffs c = posterior_coeffs(s, t);
  QPosterior out;
  out.mean = float(c.coef_x0) * x0 + float(c.coef_xt) * xt;
  out.variance = c.variance;
  return out;
}

double simple_loss(const Patch& eps_pred, const Patch& eps) {
  require_same_shape(eps_pred, eps, "simple_loss");
  return (eps_pred.cast<double>() - eps.cast<double>()).square().mean();
}

Patch reverse_mean(const Patch& xt, const Patch& eps_hat, int t, const NoiseSchedule& s) {
  require_same_shape(xt, eps_hat, "reverse_mean");
  double abar = s.alpha_bar(t);
  float inv_sqrt_alpha = float(1.0 / std::sqrt(s.alpha(t)));
  float eps_coef = float(s.beta(t) / std::sqrt(1.0 - abar));
  return inv_sqrt_alpha * (xt - eps_coef * eps_hat);
}

ElboTerms elbo_terms(const Patch& x0, const EpsFn& model, const NoiseSchedule& s, uint64_t seed) {
  require(s.T >= 2, "elbo_terms: schedule needs T >= 2");
  ElboTerms out;
  out.kl.resize(s.T - 1);

  const double n = double(x0.size());
  for (int t = 2; t <= s.T; ++t) {
    Rng rng(seed, 0x656c626full /* "elbo" */, uint64_t(t));
    Patch eps = rng.normal_patch(x0.rows(), x0.cols());
    Patch xt = q_sample(x0, t, eps, s);
    QPosterior q = q_posterior(x0, xt, t, s);
    Patch mu_theta = reverse_mean(xt, model(xt, t), t, s);
    double sq = (q.mean.cast<double>() - mu_theta.cast<double>()).square().sum();
    out.kl[t - 2] = sq / (2.0 * q.variance * n);
  }

  // Prior term: q(x_T | x_0) = N(sqrt(abar_T) x0, (1-abar_T) I) against N(0, I),
  // averaged per pixel.
  double abar_T = s.alpha_bar(s.T);
  double var = 1.0 - abar_T;
  double mu_sq_mean = abar_T * x0.cast<double>().square().mean();
  out.prior = 0.5 * (var + mu_sq_mean - 1.0 - std::log(var));
  return out;
}

}  // namespace seisdiff
