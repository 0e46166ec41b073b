#include "seisdiff/schedule.hpp"

#include <cmath>

namespace seisdiff {

NoiseSchedule linear_schedule(int T, double beta_start, double beta_end) {
  require(T >= 1, "linear_schedule: T must be >= 1");
  require(std::isfinite(beta_start) && std::isfinite(beta_end),
          "linear_schedule: non-finite beta bounds");
  require(beta_start > 0.0 && beta_start <= beta_end && beta_end < 1.0,
          "linear_schedule: need 0 < beta_start <= beta_end < 1");

  NoiseSchedule s;
  s.T = T;
  s.beta_start = beta_start;
  s.beta_end = beta_end;
  s.betas.resize(T);
  s.alphas.resize(T);
  s.alpha_bars.resize(T);
  s.posterior_variances.resize(T);

  double abar = 1.0;
  for (int i = 0; i < T; ++i) {
    double frac = T == 1 ? 0.0 : double(i) / double(T - 1);
    double beta = beta_start + (beta_end - beta_start) * frac;
    double abar_prev = abar;
    abar *= 1.0 - beta;
    s.betas[i] = beta;
    s.alphas[i] = 1.0 - beta;
    s.alpha_bars[i] = abar;
    // btilde_1 = 0: the reverse step at t=1 is deterministic.
    s.posterior_variances[i] = i == 0 ? 0.0 : beta * (1.0 - abar_prev) / (1.0 - abar);
  }
  return s;
}

PosteriorCoeffs posterior_coeffs(const NoiseSchedule& s, int t) {
  double abar_t = s.alpha_bar(t);
  double abar_prev = s.alpha_bar_prev(t);
  PosteriorCoeffs c;
  c.coef_x0 = std::sqrt(abar_prev) * s.beta(t) / (1.0 - abar_t);
  c.coef_xt = std::sqrt(s.alpha(t)) * (1.0 - abar_prev) / (1.0 - abar_t);
  c.variance = s.posterior_variance(t);
  return c;
}

}  // namespace seisdiff
