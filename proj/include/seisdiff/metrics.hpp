#pragma once

#include "seisdiff/types.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace seisdiff {

// 10*log10(sum ref^2 / sum (ref-est)^2); +infinity when est == ref exactly.
double snr_db(const Patch& ref, const Patch& est);

// Standard windowed SSIM: 11x11 Gaussian window (sigma 1.5), K1=0.01,
// K2=0.03, mean over all fully-interior window positions. The dynamic range
// is taken from the reference (max - min); pass fixed_range > 0 to pin it
// instead, which makes the measure symmetric in its arguments.
double ssim(const Patch& ref, const Patch& est, double fixed_range = 0.0);

struct SampleMetrics {
  std::string id;
  double ssim = 0.0;
  double snr_db = 0.0;
};

struct MetricsReport {
  std::vector<SampleMetrics> per_sample;
  double ssim_mean = 0.0, ssim_std = 0.0;
  double snr_mean = 0.0, snr_std = 0.0;
  int snr_excluded = 0;  // +infinity SNR samples left out of the aggregates
  std::string method_tag;
  std::string family_tag;
};

struct EvalPair {
  std::string id;
  Patch ref;
  Patch est;
};

// Per-sample metrics plus population mean/std. Infinite SNR samples are
// excluded from the SNR aggregates and counted.
MetricsReport evaluate(const std::vector<EvalPair>& pairs, const std::string& method_tag,
                       const std::string& family_tag);

// CSV rows `id,ssim,snr_db` and a JSON summary (means, stds, excluded
// count, tags).
void write_report_csv(const std::filesystem::path& path, const MetricsReport& report);
void write_report_json(const std::filesystem::path& path, const MetricsReport& report);

}  // namespace seisdiff
