#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace seisdiff {

// Dense 2-D array of scalars, column-major. For seismic sections the row
// index is the time sample and the column index is the trace, so each
// column is one contiguous trace.
template <typename Scalar>
using Array2 = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Training/inference unit: H x W window, amplitude-normalized to [-1, 1]
// for clean inputs (intermediate diffusion states may exceed that range).
using Patch = Array2<float>;

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

inline void require_same_shape(const Patch& a, const Patch& b, const char* where) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument(std::string(where) + ": shape mismatch (" +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                                std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
}

}  // namespace seisdiff
