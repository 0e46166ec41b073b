#pragma once

#include "seisdiff/conditioning.hpp"
#include "seisdiff/diffusion.hpp"
#include "seisdiff/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace seisdiff {

// Time-conditional U-Net predicting the noise component. Channel width at
// level L is base_channels * min(2^L, 4); each level runs
// res_blocks_per_level residual blocks (group norm, SiLU, 3x3 convs, a
// per-block projection of the timestep embedding added after the first
// conv). Downsampling is a stride-2 conv, upsampling nearest-neighbor plus
// conv, with channel-concatenated skip connections. A single-head global
// attention layer sits between the two bottom residual blocks. Convs use
// zero padding, which is the boundary-effect source near patch edges.
struct DenoiserConfig {
  int in_channels = 2;  // 1 (the noisy state) + conditioning channels
  int base_channels = 32;
  int depth = 3;  // number of downsamplings; patch sides must divide 2^depth
  int res_blocks_per_level = 2;
  int time_embed_dim = 128;
  bool attention_at_lowest = true;
};

enum class ParamInit { zeros, ones, normal };

struct ParamInfo {
  std::string name;
  std::vector<int> dims;
  int64_t offset = 0;
  int64_t size = 0;
  ParamInit init = ParamInit::normal;
  double init_sigma = 0.0;
};

// Stable, checkpoint-visible parameter naming and packing order.
struct ParamLayout {
  std::vector<ParamInfo> entries;
  int64_t total = 0;
  std::map<std::string, int> index;

  const ParamInfo& at(const std::string& name) const;
};

ParamLayout build_layout(const DenoiserConfig& cfg);

struct DenoiserParams {
  DenoiserConfig config;
  ParamLayout layout;
  Vector<float> values;
};

// Sinusoidal embedding: half sines then half cosines of t at geometric
// frequencies from 1 down to 1e-4 (periods spanning 1 to 10^4).
Vector<float> timestep_embedding(double t, int dim);

// Deterministic initialization given seed. Weights feeding residual sums
// (second res-block conv, attention out-projection, output conv) start at
// zero, so a fresh model predicts eps = 0.
DenoiserParams build_denoiser(const DenoiserConfig& cfg, uint64_t seed);

Patch predict_eps(const DenoiserParams& params, const Patch& x_t, const Conditioning& cond, int t);

// Binds (params, cond) into the callable used by sampling/diagnostics.
EpsFn make_eps_fn(const DenoiserParams& params, const Conditioning& cond);

}  // namespace seisdiff
