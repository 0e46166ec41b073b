#include "seisdiff/fx_baseline.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <functional>
#include <vector>

namespace seisdiff {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<int> window_starts(int n_samples, int window_len, double overlap) {
  int hop = std::max(1, int(std::lround(window_len * (1.0 - overlap))));
  std::vector<int> starts;
  for (int s = 0; s + window_len <= n_samples; s += hop) starts.push_back(s);
  int last = n_samples - window_len;
  if (starts.empty() || starts.back() != last) starts.push_back(last);
  return starts;
}

// Strictly positive taper so the window-sum normalization is always defined.
Eigen::ArrayXd taper(int len) {
  Eigen::ArrayXd w(len);
  for (int i = 0; i < len; ++i) w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * (i + 0.5) / len);
  return w;
}

using SegmentFn =
    std::function<Eigen::ArrayXXd(const Eigen::ArrayXXd& segment)>;  // (L x W) -> (L x W)

Gather overlap_add(const Gather& g, int window_len, double overlap, const SegmentFn& process) {
  require(window_len >= 4, "fx_decon: window_len must be >= 4");
  require(window_len <= g.n_samples(), "fx_decon: window longer than the gather");
  require(overlap >= 0.0 && overlap < 1.0, "fx_decon: overlap must be in [0,1)");

  const int L = window_len;
  const int W = int(g.n_traces());
  Eigen::ArrayXXd num = Eigen::ArrayXXd::Zero(g.n_samples(), W);
  Eigen::ArrayXd den = Eigen::ArrayXd::Zero(g.n_samples());
  Eigen::ArrayXd w = taper(L);

  for (int start : window_starts(int(g.n_samples()), L, overlap)) {
    Eigen::ArrayXXd seg = g.data.block(start, 0, L, W).cast<double>();
    Eigen::ArrayXXd proc = seg.abs().maxCoeff() == 0.0 ? seg : process(seg);
    num.block(start, 0, L, W) += proc.colwise() * w;
    den.segment(start, L) += w;
  }

  Gather out;
  out.data = (num.colwise() / den).cast<float>();
  out.dt = g.dt;
  out.dx = g.dx;
  out.events = g.events;
  return out;
}

}  // namespace

Eigen::VectorXcd fx_prediction_filter(const Eigen::VectorXcd& series, int p, double prewhitening) {
  const int W = int(series.size());
  require(p >= 1 && W > p, "fx_prediction_filter: need filter_len >= 1 and a longer series");

  Eigen::MatrixXcd U(W - p, p);
  Eigen::VectorXcd y(W - p);
  for (int j = p; j < W; ++j) {
    for (int m = 0; m < p; ++m) U(j - p, m) = series[j - 1 - m];
    y[j - p] = series[j];
  }
  Eigen::MatrixXcd A = U.adjoint() * U;
  double tr = A.trace().real();
  if (!(tr > 0.0)) return Eigen::VectorXcd::Zero(p);
  A.diagonal().array() += prewhitening * tr / p;
  return A.ldlt().solve(U.adjoint() * y);
}

namespace {

// Forward and backward one-step prediction of one frequency bin's spatial
// series, averaged where both sides exist.
Eigen::VectorXcd predict_series(const Eigen::VectorXcd& s, int p, double pw) {
  const int W = int(s.size());
  Eigen::VectorXcd a = fx_prediction_filter(s, p, pw);
  Eigen::VectorXcd srev = s.reverse();
  Eigen::VectorXcd b = fx_prediction_filter(srev, p, pw);

  Eigen::VectorXcd fwd = Eigen::VectorXcd::Zero(W), bwd = Eigen::VectorXcd::Zero(W);
  for (int j = p; j < W; ++j)
    for (int m = 0; m < p; ++m) fwd[j] += a[m] * s[j - 1 - m];
  for (int i = p; i < W; ++i) {
    std::complex<double> acc = 0.0;
    for (int m = 0; m < p; ++m) acc += b[m] * srev[i - 1 - m];
    bwd[W - 1 - i] = acc;
  }

  Eigen::VectorXcd out(W);
  for (int j = 0; j < W; ++j) {
    bool has_fwd = j >= p;
    bool has_bwd = j <= W - 1 - p;
    if (has_fwd && has_bwd)
      out[j] = 0.5 * (fwd[j] + bwd[j]);
    else
      out[j] = has_fwd ? fwd[j] : bwd[j];
  }
  return out;
}

}  // namespace

Gather fx_decon(const Gather& g, int window_len, double overlap, int filter_len,
                double prewhitening) {
  require(filter_len >= 1 && filter_len < g.n_traces() / 2,
          "fx_decon: need 1 <= filter_len < n_traces/2");
  require(prewhitening > 0.0 && prewhitening < 1.0, "fx_decon: prewhitening must be in (0,1)");

  const int L = window_len;
  const int W = int(g.n_traces());

  return overlap_add(g, window_len, overlap, [&](const Eigen::ArrayXXd& seg) {
    Eigen::FFT<double> fft;
    Eigen::MatrixXcd spec(L, W);
    std::vector<std::complex<double>> in(size_t(L)), out(size_t(L));
    for (int j = 0; j < W; ++j) {
      for (int i = 0; i < L; ++i) in[size_t(i)] = seg(i, j);
      fft.fwd(out, in);
      for (int i = 0; i < L; ++i) spec(i, j) = out[size_t(i)];
    }

    // Predict bins 0..L/2 and mirror the rest so the inverse stays real.
    Eigen::MatrixXcd pred(L, W);
    for (int f = 0; f <= L / 2; ++f)
      pred.row(f) = predict_series(spec.row(f).transpose(), filter_len, prewhitening).transpose();
    for (int f = L / 2 + 1; f < L; ++f) pred.row(f) = pred.row(L - f).conjugate();

    Eigen::ArrayXXd proc(L, W);
    for (int j = 0; j < W; ++j) {
      for (int i = 0; i < L; ++i) out[size_t(i)] = pred(i, j);
      fft.inv(in, out);
      for (int i = 0; i < L; ++i) proc(i, j) = in[size_t(i)].real();
    }
    return proc;
  });
}

Gather fx_passthrough(const Gather& g, int window_len, double overlap) {
  return overlap_add(g, window_len, overlap, [](const Eigen::ArrayXXd& seg) { return seg; });
}

}  // namespace seisdiff
