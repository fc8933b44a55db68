#pragma once

#include <cstddef>
#include <vector>

namespace adpc::nn {

// Dense row-major matrix of doubles. Vectors are 1 x n.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  std::size_t size() const { return a.size(); }
  bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }
};

// out = x * w, accumulation over k in ascending order (bit-stable across
// batch sizes).
void matmul(const Mat& x, const Mat& w, Mat& out);

// dx += dy * w^T ; dw += x^T * dy
void matmul_backward(const Mat& x, const Mat& w, const Mat& dy, Mat& dx, Mat& dw);

}  // namespace adpc::nn
