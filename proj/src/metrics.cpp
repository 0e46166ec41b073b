#include "seisdiff/metrics.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace seisdiff {

namespace {

constexpr int kWin = 11;
constexpr double kSigma = 1.5;
constexpr double kK1 = 0.01;
constexpr double kK2 = 0.03;

const Eigen::ArrayXXd& gaussian_window() {
  static const Eigen::ArrayXXd w = [] {
    Eigen::ArrayXXd g(kWin, kWin);
    int c = kWin / 2;
    for (int i = 0; i < kWin; ++i)
      for (int j = 0; j < kWin; ++j) {
        double d2 = double((i - c) * (i - c) + (j - c) * (j - c));
        g(i, j) = std::exp(-d2 / (2.0 * kSigma * kSigma));
      }
    g /= g.sum();
    return g;
  }();
  return w;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / double(v.size());
}

double std_of(const std::vector<double>& v, double mean) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / double(v.size()));
}

}  // namespace

double snr_db(const Patch& ref, const Patch& est) {
  require_same_shape(ref, est, "snr_db");
  double sig = ref.cast<double>().square().sum();
  require(sig > 0.0, "snr_db: reference has zero energy");
  double err = (ref.cast<double>() - est.cast<double>()).square().sum();
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(sig / err);
}

double ssim(const Patch& ref, const Patch& est, double fixed_range) {
  require_same_shape(ref, est, "ssim");
  require(ref.rows() >= kWin && ref.cols() >= kWin, "ssim: inputs must be at least 11x11");

  double range = fixed_range > 0.0 ? fixed_range
                                   : double(ref.maxCoeff()) - double(ref.minCoeff());
  require(range > 0.0, "ssim: zero dynamic range");
  double c1 = (kK1 * range) * (kK1 * range);
  double c2 = (kK2 * range) * (kK2 * range);

  const Eigen::ArrayXXd& w = gaussian_window();
  Eigen::ArrayXXd a = ref.cast<double>();
  Eigen::ArrayXXd b = est.cast<double>();

  double acc = 0.0;
  int count = 0;
  for (Eigen::Index i = 0; i + kWin <= a.rows(); ++i) {
    for (Eigen::Index j = 0; j + kWin <= a.cols(); ++j) {
      auto wa = a.block(i, j, kWin, kWin);
      auto wb = b.block(i, j, kWin, kWin);
      double mu1 = (w * wa).sum();
      double mu2 = (w * wb).sum();
      double s11 = (w * wa * wa).sum() - mu1 * mu1;
      double s22 = (w * wb * wb).sum() - mu2 * mu2;
      double s12 = (w * wa * wb).sum() - mu1 * mu2;
      double num = (2.0 * mu1 * mu2 + c1) * (2.0 * s12 + c2);
      double den = (mu1 * mu1 + mu2 * mu2 + c1) * (s11 + s22 + c2);
      acc += num / den;
      ++count;
    }
  }
  return acc / double(count);
}

MetricsReport evaluate(const std::vector<EvalPair>& pairs, const std::string& method_tag,
                       const std::string& family_tag) {
  require(!pairs.empty(), "evaluate: no pairs");
  MetricsReport report;
  report.method_tag = method_tag;
  report.family_tag = family_tag;
  report.per_sample.reserve(pairs.size());

  std::vector<double> ssims, snrs;
  for (const auto& p : pairs) {
    SampleMetrics m;
    m.id = p.id;
    try {
      m.ssim = ssim(p.ref, p.est);
      m.snr_db = snr_db(p.ref, p.est);
    } catch (const std::exception& e) {
      throw std::runtime_error("evaluate: sample '" + p.id + "': " + e.what());
    }
    ssims.push_back(m.ssim);
    if (std::isinf(m.snr_db))
      ++report.snr_excluded;
    else
      snrs.push_back(m.snr_db);
    report.per_sample.push_back(std::move(m));
  }

  report.ssim_mean = mean_of(ssims);
  report.ssim_std = std_of(ssims, report.ssim_mean);
  report.snr_mean = mean_of(snrs);
  report.snr_std = std_of(snrs, report.snr_mean);
  return report;
}

void write_report_csv(const std::filesystem::path& path, const MetricsReport& report) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "id,ssim,snr_db\n";
  char line[160];
  for (const auto& m : report.per_sample) {
    if (std::isinf(m.snr_db))
      std::snprintf(line, sizeof line, "%s,%.9g,inf\n", m.id.c_str(), m.ssim);
    else
      std::snprintf(line, sizeof line, "%s,%.9g,%.9g\n", m.id.c_str(), m.ssim, m.snr_db);
    out << line;
  }
}

void write_report_json(const std::filesystem::path& path, const MetricsReport& report) {
  nlohmann::json j;
  j["method"] = report.method_tag;
  j["family"] = report.family_tag;
  j["count"] = report.per_sample.size();
  j["ssim_mean"] = report.ssim_mean;
  j["ssim_std"] = report.ssim_std;
  j["snr_mean"] = report.snr_mean;
  j["snr_std"] = report.snr_std;
  j["snr_excluded_infinite"] = report.snr_excluded;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << "\n";
}

}  // namespace seisdiff
