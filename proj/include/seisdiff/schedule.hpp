#pragma once

#include "seisdiff/types.hpp"

#include <cstdint>

namespace seisdiff {

// Fixed forward-process variance schedule and everything derived from it.
// Timesteps are 1-based (t in {1..T}) to match the usual diffusion
// convention; the stored arrays are 0-indexed, so entry t-1 belongs to
// timestep t. All entries are kept in double precision so the length-T
// cumulative product does not drift even when model tensors are float.
struct NoiseSchedule {
  int T = 0;
  double beta_start = 0.0;
  double beta_end = 0.0;
  Eigen::ArrayXd betas;                // beta_t, t = 1..T
  Eigen::ArrayXd alphas;               // alpha_t = 1 - beta_t
  Eigen::ArrayXd alpha_bars;           // abar_t = prod_{i<=t} alpha_i
  Eigen::ArrayXd posterior_variances;  // btilde_t = beta_t (1-abar_{t-1})/(1-abar_t), btilde_1 = 0

  double beta(int t) const { return betas[check(t)]; }
  double alpha(int t) const { return alphas[check(t)]; }
  double alpha_bar(int t) const { return alpha_bars[check(t)]; }
  double posterior_variance(int t) const { return posterior_variances[check(t)]; }

  // abar_{t-1} with the abar_0 = 1 convention used by the posterior at t=1.
  double alpha_bar_prev(int t) const {
    check(t);
    return t == 1 ? 1.0 : alpha_bars[t - 2];
  }

 private:
  int check(int t) const {
    if (t < 1 || t > T) throw std::out_of_range("timestep t=" + std::to_string(t) +
                                                " outside [1, " + std::to_string(T) + "]");
    return t - 1;
  }
};

// Coefficients of the forward posterior q(x_{t-1} | x_t, x_0):
//   mean = coef_x0 * x0 + coef_xt * x_t,  variance = btilde_t.
struct PosteriorCoeffs {
  double coef_x0 = 0.0;
  double coef_xt = 0.0;
  double variance = 0.0;
};

// betas interpolate linearly from beta_start (t=1) to beta_end (t=T).
// Defaults are the de-facto linear-schedule endpoints; the source paper for
// this schedule family fixes only "linear", not the endpoints.
NoiseSchedule linear_schedule(int T, double beta_start = 1e-4, double beta_end = 0.02);

PosteriorCoeffs posterior_coeffs(const NoiseSchedule& s, int t);

}  // namespace seisdiff
