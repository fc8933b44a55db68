#include "adpc/mat.hpp"

#include <stdexcept>

namespace adpc::nn {

void matmul(const Mat& x, const Mat& w, Mat& out) {
  if (x.cols != w.rows) throw std::invalid_argument("matmul: inner dimensions mismatch");
  out = Mat(x.rows, w.cols);
  const int n = x.rows, k = x.cols, m = w.cols;
  for (int i = 0; i < n; ++i) {
    const double* xr = &x.a[static_cast<std::size_t>(i) * k];
    double* or_ = &out.a[static_cast<std::size_t>(i) * m];
    for (int p = 0; p < k; ++p) {
      const double xv = xr[p];
      if (xv == 0.0) continue;
      const double* wr = &w.a[static_cast<std::size_t>(p) * m];
      for (int j = 0; j < m; ++j) or_[j] += xv * wr[j];
    }
  }
}

void matmul_backward(const Mat& x, const Mat& w, const Mat& dy, Mat& dx, Mat& dw) {
  const int n = x.rows, k = x.cols, m = w.cols;
  // dx[i][p] += sum_j dy[i][j] * w[p][j]
  for (int i = 0; i < n; ++i) {
    const double* dyr = &dy.a[static_cast<std::size_t>(i) * m];
    double* dxr = &dx.a[static_cast<std::size_t>(i) * k];
    for (int p = 0; p < k; ++p) {
      const double* wr = &w.a[static_cast<std::size_t>(p) * m];
      double acc = 0.0;
      for (int j = 0; j < m; ++j) acc += dyr[j] * wr[j];
      dxr[p] += acc;
    }
  }
  // dw[p][j] += sum_i x[i][p] * dy[i][j]
  for (int i = 0; i < n; ++i) {
    const double* xr = &x.a[static_cast<std::size_t>(i) * k];
    const double* dyr = &dy.a[static_cast<std::size_t>(i) * m];
    for (int p = 0; p < k; ++p) {
      const double xv = xr[p];
      if (xv == 0.0) continue;
      double* dwr = &dw.a[static_cast<std::size_t>(p) * m];
      for (int j = 0; j < m; ++j) dwr[j] += xv * dyr[j];
    }
  }
}

}  // namespace adpc::nn
