#pragma once

#include "seisdiff/schedule.hpp"
#include "seisdiff/types.hpp"

#include <functional>

namespace seisdiff {

// Noise-prediction callable: (x_t, t) -> estimated eps. Conditioning is
// bound by the caller, which also lets tests inject closed-form oracles.
using EpsFn = std::function<Patch(const Patch& x_t, int t)>;

// x_t = sqrt(abar_t) x0 + sqrt(1 - abar_t) eps, the closed-form forward draw.
Patch q_sample(const Patch& x0, int t, const Patch& eps, const NoiseSchedule& s);

struct QPosterior {
  Patch mean;
  double variance = 0.0;
};

// Forward posterior q(x_{t-1} | x_t, x_0): two-coefficient affine mean plus
// the schedule's posterior variance (zero at t=1).
QPosterior q_posterior(const Patch& x0, const Patch& xt, int t, const NoiseSchedule& s);

// Mean squared error over all elements, accumulated in double. Uses the
// mean (not the sum over timesteps) because each training step draws a
// single uniform t per example; that is an unbiased scaled estimator of
// the summed objective.
double simple_loss(const Patch& eps_pred, const Patch& eps);

struct ElboTerms {
  // kl[i] is the per-pixel KL at timestep t = i + 2, for t in [2, T].
  Eigen::ArrayXd kl;
  // KL(q(x_T | x_0) || N(0, I)) per pixel.
  double prior = 0.0;
};

// One-sample Monte-Carlo estimate of the per-timestep KL diagnostics.
// Both Gaussians share variance btilde_t, so each term reduces to
// mean((mu_q - mu_theta)^2) / (2 btilde_t). Deterministic given seed.
ElboTerms elbo_terms(const Patch& x0, const EpsFn& model, const NoiseSchedule& s, uint64_t seed);

// Reverse-process mean mu_theta(x_t, t) for a given eps estimate:
//   (1/sqrt(alpha_t)) * (x_t - beta_t/sqrt(1-abar_t) * eps_hat).
Patch reverse_mean(const Patch& xt, const Patch& eps_hat, int t, const NoiseSchedule& s);

}  // namespace seisdiff
