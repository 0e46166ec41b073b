#pragma once

#include "seisdiff/seismic_synth.hpp"
#include "seisdiff/types.hpp"

#include <complex>

namespace seisdiff {

// f-x prediction filtering for incoherent-noise suppression. Per tapered
// time window, each trace segment is Fourier transformed along time; for
// every frequency bin the complex values across traces form a spatial
// series that is predicted forward and backward by least-squares one-step
// prediction filters (normal equations regularized by
// prewhitening * trace-of-autocorrelation on the diagonal). The two
// predictions are averaged where both exist; boundary traces use the
// one-sided prediction. Windows are recombined by weighted overlap-add
// with an explicit window-sum normalization, so an identity filter path
// reproduces the input exactly.
Gather fx_decon(const Gather& g, int window_len = 64, double overlap = 0.5, int filter_len = 4,
                double prewhitening = 0.001);

// Least-squares forward one-step prediction filter of length p for one
// complex spatial series; solves (U^H U + pw * tr(U^H U)/p * I) a = U^H y.
Eigen::VectorXcd fx_prediction_filter(const Eigen::VectorXcd& series, int p, double prewhitening);

// The windowing/overlap-add path with the prediction stage replaced by the
// identity; used to verify the partition-of-unity reassembly.
Gather fx_passthrough(const Gather& g, int window_len = 64, double overlap = 0.5);

}  // namespace seisdiff
