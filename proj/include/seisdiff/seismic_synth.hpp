#pragma once

#include "seisdiff/conditioning.hpp"
#include "seisdiff/types.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace seisdiff {

// One seismic arrival: a Ricker wavelet swept along a linear or hyperbolic
// moveout curve. `moveout` is the velocity in m/s for hyperbolic events and
// the slope in s/m for linear ones.
struct EventSpec {
  enum class Kind { linear, hyperbolic };
  Kind kind = Kind::hyperbolic;
  double t0 = 0.0;                // zero-offset time, seconds
  double moveout = 2000.0;
  double amplitude = 1.0;
  double wavelet_peak_freq = 30.0;  // Hz
  int polarity = 1;
};

struct Gather {
  Array2<float> data;  // n_samples x n_traces
  double dt = 0.004;   // seconds per sample
  double dx = 12.5;    // meters per trace
  std::vector<EventSpec> events;  // provenance

  Eigen::Index n_samples() const { return data.rows(); }
  Eigen::Index n_traces() const { return data.cols(); }
};

// Symmetric Ricker wavelet (1 - 2 pi^2 f^2 t^2) exp(-pi^2 f^2 t^2),
// sampled at dt over [-half_length, half_length] samples; peak 1 at center.
Vector<float> ricker(double peak_freq, double dt, int half_length);

double ricker_value(double t, double peak_freq);

// Linear superposition of analytically-evaluated wavelets along each
// event's moveout curve. The seed drives an optional per-event amplitude
// jitter of +-amp_jitter (keyed by the event's own parameters, so the
// superposition identity over disjoint event sets still holds).
Gather synth_gather(const std::vector<EventSpec>& events, int n_traces, int n_samples,
                    double dt, double dx, uint64_t seed, double amp_jitter = 0.0);

// Periodic surface-multiple approximation: order-k copies at (k+1) t0 with
// geometric attenuation, alternating polarity, and reduced effective
// moveout velocity (steeper slope for linear events). Returns primaries
// followed by the generated multiples.
std::vector<EventSpec> add_multiples(const std::vector<EventSpec>& primaries, int order_max,
                                     double attenuation);

// Adds white Gaussian noise. Exact mode (default) scales the draw so
// energy(noise) = energy_fraction * energy(x) exactly; cap mode first draws
// the fraction uniformly from [0, energy_fraction].
Patch add_noise(const Patch& x, double energy_fraction, uint64_t seed, bool cap_mode = false);

struct DecimatedPatch {
  Patch masked;
  Patch mask;  // 1 on kept traces, 0 on removed columns
};

// Zeroes round(fraction * W) distinct trace columns chosen uniformly at
// random (never all of them while fraction < 1).
DecimatedPatch decimate_traces(const Patch& x, double fraction, uint64_t seed);

struct ExtractedPatch {
  Patch data;        // max-abs normalized to [-1, 1]
  int gather_index = 0;
  int row = 0, col = 0;
  float norm = 1.0f;  // pre-normalization max |value|
};

// Random non-overlapping placements. Candidates whose zero fraction
// (|v| < 1e-8 before normalization) exceeds max_zero_fraction are rejected.
// May return fewer than `count` patches when placements are exhausted.
std::vector<ExtractedPatch> extract_patches(const std::vector<Gather>& gathers, int count,
                                            int patch_h, int patch_w, double max_zero_fraction,
                                            uint64_t seed);

enum class Family { in_domain, out_of_domain };

inline const char* family_name(Family f) { return f == Family::in_domain ? "in" : "out"; }
Family family_from_name(const std::string& name);

struct DatasetItem {
  Patch x0;
  Conditioning cond;
  float norm = 1.0f;
  int gather_index = 0, row = 0, col = 0;
};

struct PatchDataset {
  Task task = Task::denoise;
  Family family = Family::in_domain;
  uint64_t seed = 0;
  int patch_h = 64, patch_w = 64;
  std::vector<DatasetItem> items;
};

// Deterministic task-specific pair assembly. The two families use disjoint
// wavelet bands and different event statistics, standing in for the paper's
// train-domain vs unseen-domain dataset pair.
PatchDataset build_dataset(Task task, Family family, int count, uint64_t seed,
                           int patch_h = 64, int patch_w = 64);

// Directory layout: manifest.json plus one SPD1 file per channel per item,
// clean/NNNN.spd and <channel>/NNNN.spd.
void write_dataset(const std::filesystem::path& dir, const PatchDataset& ds);
PatchDataset load_dataset(const std::filesystem::path& dir);

}  // namespace seisdiff
