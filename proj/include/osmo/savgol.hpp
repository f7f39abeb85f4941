#pragma once

#include <Eigen/Dense>
#include <vector>

#include "osmo/core.hpp"

namespace osmo::handpose {

// Savitzky-Golay smoothing. Interior samples take the value of the local
// least-squares polynomial at the window center; the first and last
// half-windows evaluate the first/last full-window fit at their own offsets
// (scipy's mode="interp" behavior).
class SavitzkyGolay {
 public:
  SavitzkyGolay(int window, int polyorder) : window_(window), order_(polyorder) {
    if (window < 1 || window % 2 == 0)
      throw BadWindowError("window must be odd and positive");
    if (polyorder < 0 || polyorder >= window)
      throw BadWindowError("polyorder must be < window");
    const int h = window / 2;
    // Projection of the window samples onto polynomial values at every
    // in-window offset: P = V (V^T V)^-1 V^T evaluated row-wise.
    Eigen::MatrixXd v(window, order_ + 1);
    for (int i = 0; i < window; ++i) {
      double p = 1.0;
      for (int j = 0; j <= order_; ++j, p *= (i - h)) v(i, j) = p;
    }
    const Eigen::MatrixXd pinv =
        (v.transpose() * v).ldlt().solve(v.transpose());
    eval_ = v * pinv;  // eval_(r, :) = weights for offset r - h
  }

  int window() const { return window_; }

  // Weights applied to a full window to produce the sample at the given
  // offset from the window start (offset = window/2 is the centered case).
  Eigen::VectorXd weights(int offset) const {
    return eval_.row(offset).transpose();
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& series) const {
    const int n = static_cast<int>(series.size());
    if (n < window_) throw TooShortError("series shorter than window");
    const int h = window_ / 2;
    Eigen::VectorXd out(n);
    for (int i = 0; i < n; ++i) {
      int start = i - h;
      int offset = h;
      if (start < 0) {
        offset = i;
        start = 0;
      } else if (start + window_ > n) {
        offset = i - (n - window_);
        start = n - window_;
      }
      out[i] = eval_.row(offset).dot(series.segment(start, window_));
    }
    return out;
  }

  std::vector<double> apply(const std::vector<double>& series) const {
    Eigen::VectorXd v =
        Eigen::Map<const Eigen::VectorXd>(series.data(), series.size());
    const Eigen::VectorXd r = apply(v);
    return std::vector<double>(r.data(), r.data() + r.size());
  }

  std::vector<Vec3> apply(const std::vector<Vec3>& series) const {
    const int n = static_cast<int>(series.size());
    std::vector<Vec3> out(n);
    for (int axis = 0; axis < 3; ++axis) {
      Eigen::VectorXd ch(n);
      for (int i = 0; i < n; ++i) ch[i] = series[i][axis];
      const Eigen::VectorXd sm = apply(ch);
      for (int i = 0; i < n; ++i) out[i][axis] = sm[i];
    }
    return out;
  }

 private:
  int window_;
  int order_;
  Eigen::MatrixXd eval_;
};

inline std::vector<double> smooth_trajectory(const std::vector<double>& series,
                                             int window, int polyorder) {
  return SavitzkyGolay(window, polyorder).apply(series);
}

}  // namespace osmo::handpose
