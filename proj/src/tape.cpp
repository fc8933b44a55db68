#include "adpc/tape.hpp"

#include <cmath>
#include <stdexcept>

namespace adpc::nn {

int Tape::push(Node n) {
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

int Tape::leaf(Mat value) {
  Node n;
  n.op = Op::leaf;
  n.val = std::move(value);
  return push(std::move(n));
}

int Tape::matmul(int x, int w) {
  Node n;
  n.op = Op::matmul;
  n.parents = {x, w};
  nn::matmul(nodes_[x].val, nodes_[w].val, n.val);
  return push(std::move(n));
}

int Tape::add_rowvec(int x, int bias) {
  const Mat& xv = nodes_[x].val;
  const Mat& bv = nodes_[bias].val;
  if (bv.rows != 1 || bv.cols != xv.cols)
    throw std::invalid_argument("add_rowvec: bias must be 1 x cols(x)");
  Node n;
  n.op = Op::add_rowvec;
  n.parents = {x, bias};
  n.val = xv;
  for (int i = 0; i < xv.rows; ++i)
    for (int j = 0; j < xv.cols; ++j) n.val(i, j) += bv(0, j);
  return push(std::move(n));
}

int Tape::add(int a, int b) {
  const Mat& av = nodes_[a].val;
  const Mat& bv = nodes_[b].val;
  if (!av.same_shape(bv)) throw std::invalid_argument("add: shape mismatch");
  Node n;
  n.op = Op::add;
  n.parents = {a, b};
  n.val = av;
  for (std::size_t i = 0; i < n.val.size(); ++i) n.val.a[i] += bv.a[i];
  return push(std::move(n));
}

int Tape::relu(int x) {
  Node n;
  n.op = Op::relu;
  n.parents = {x};
  n.val = nodes_[x].val;
  for (double& v : n.val.a)
    if (v < 0.0) v = 0.0;
  return push(std::move(n));
}

int Tape::tanh(int x) {
  Node n;
  n.op = Op::tanh_;
  n.parents = {x};
  n.val = nodes_[x].val;
  for (double& v : n.val.a) v = std::tanh(v);
  return push(std::move(n));
}

int Tape::scaled_sigmoid(int x, double scale) {
  Node n;
  n.op = Op::scaled_sigmoid;
  n.parents = {x};
  n.scale = scale;
  n.val = nodes_[x].val;
  for (double& v : n.val.a) v = scale / (1.0 + std::exp(-v));
  return push(std::move(n));
}

int Tape::concat_cols(const std::vector<int>& parts) {
  if (parts.empty()) throw std::invalid_argument("concat_cols: no parts");
  const int rows = nodes_[parts[0]].val.rows;
  int cols = 0;
  for (int p : parts) {
    if (nodes_[p].val.rows != rows) throw std::invalid_argument("concat_cols: row mismatch");
    cols += nodes_[p].val.cols;
  }
  Node n;
  n.op = Op::concat_cols;
  n.parents = parts;
  n.val = Mat(rows, cols);
  int off = 0;
  for (int p : parts) {
    const Mat& pv = nodes_[p].val;
    n.idx.push_back(off);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < pv.cols; ++j) n.val(i, off + j) = pv(i, j);
    off += pv.cols;
  }
  return push(std::move(n));
}

int Tape::gather_rows(int x, std::vector<int> row_of_out) {
  const Mat& xv = nodes_[x].val;
  Node n;
  n.op = Op::gather_rows;
  n.parents = {x};
  n.val = Mat(static_cast<int>(row_of_out.size()), xv.cols);
  for (std::size_t r = 0; r < row_of_out.size(); ++r)
    for (int j = 0; j < xv.cols; ++j) n.val(static_cast<int>(r), j) = xv(row_of_out[r], j);
  n.idx = std::move(row_of_out);
  return push(std::move(n));
}

int Tape::segment_sum(int x, std::vector<int> bucket_of_row, int out_rows) {
  const Mat& xv = nodes_[x].val;
  if (static_cast<int>(bucket_of_row.size()) != xv.rows)
    throw std::invalid_argument("segment_sum: one bucket per row required");
  Node n;
  n.op = Op::segment_sum;
  n.parents = {x};
  n.val = Mat(out_rows, xv.cols);
  for (int r = 0; r < xv.rows; ++r) {
    const int b = bucket_of_row[static_cast<std::size_t>(r)];
    for (int j = 0; j < xv.cols; ++j) n.val(b, j) += xv(r, j);
  }
  n.idx = std::move(bucket_of_row);
  return push(std::move(n));
}

int Tape::segment_max(int x, std::vector<int> bucket_of_row, int out_rows) {
  const Mat& xv = nodes_[x].val;
  if (static_cast<int>(bucket_of_row.size()) != xv.rows)
    throw std::invalid_argument("segment_max: one bucket per row required");
  Node n;
  n.op = Op::segment_max;
  n.parents = {x};
  n.val = Mat(out_rows, xv.cols);
  // argmax row per (bucket, col); -1 marks an empty bucket, which stays 0
  n.idx.assign(static_cast<std::size_t>(out_rows) * xv.cols, -1);
  for (int r = 0; r < xv.rows; ++r) {
    const int b = bucket_of_row[static_cast<std::size_t>(r)];
    for (int j = 0; j < xv.cols; ++j) {
      const std::size_t slot = static_cast<std::size_t>(b) * xv.cols + j;
      if (n.idx[slot] < 0 || xv(r, j) > n.val(b, j)) {
        n.val(b, j) = xv(r, j);
        n.idx[slot] = r;
      }
    }
  }
  return push(std::move(n));
}

std::vector<Mat> Tape::backward(int output, const Mat& seed) const {
  if (!seed.same_shape(nodes_[output].val))
    throw std::invalid_argument("backward: seed shape mismatches output");

  std::vector<Mat> grad(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    grad[i] = Mat(nodes_[i].val.rows, nodes_[i].val.cols);
  grad[output] = seed;

  for (int id = output; id >= 0; --id) {
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    const Mat& dy = grad[static_cast<std::size_t>(id)];
    switch (n.op) {
      case Op::leaf:
        break;
      case Op::matmul:
        matmul_backward(nodes_[n.parents[0]].val, nodes_[n.parents[1]].val, dy,
                        grad[n.parents[0]], grad[n.parents[1]]);
        break;
      case Op::add_rowvec: {
        Mat& dx = grad[n.parents[0]];
        Mat& db = grad[n.parents[1]];
        for (std::size_t i = 0; i < dy.size(); ++i) dx.a[i] += dy.a[i];
        for (int i = 0; i < dy.rows; ++i)
          for (int j = 0; j < dy.cols; ++j) db(0, j) += dy(i, j);
        break;
      }
      case Op::add:
        for (std::size_t i = 0; i < dy.size(); ++i) {
          grad[n.parents[0]].a[i] += dy.a[i];
          grad[n.parents[1]].a[i] += dy.a[i];
        }
        break;
      case Op::relu: {
        const Mat& x = nodes_[n.parents[0]].val;
        Mat& dx = grad[n.parents[0]];
        for (std::size_t i = 0; i < dy.size(); ++i)
          if (x.a[i] > 0.0) dx.a[i] += dy.a[i];
        break;
      }
      case Op::tanh_: {
        Mat& dx = grad[n.parents[0]];
        for (std::size_t i = 0; i < dy.size(); ++i) dx.a[i] += dy.a[i] * (1.0 - n.val.a[i] * n.val.a[i]);
        break;
      }
      case Op::scaled_sigmoid: {
        Mat& dx = grad[n.parents[0]];
        for (std::size_t i = 0; i < dy.size(); ++i) {
          const double s = n.val.a[i] / n.scale;
          dx.a[i] += dy.a[i] * n.scale * s * (1.0 - s);
        }
        break;
      }
      case Op::concat_cols: {
        for (std::size_t p = 0; p < n.parents.size(); ++p) {
          Mat& dx = grad[n.parents[p]];
          const int off = n.idx[p];
          for (int i = 0; i < dx.rows; ++i)
            for (int j = 0; j < dx.cols; ++j) dx(i, j) += dy(i, off + j);
        }
        break;
      }
      case Op::gather_rows: {
        Mat& dx = grad[n.parents[0]];
        for (std::size_t r = 0; r < n.idx.size(); ++r)
          for (int j = 0; j < dy.cols; ++j)
            dx(n.idx[r], j) += dy(static_cast<int>(r), j);
        break;
      }
      case Op::segment_sum: {
        Mat& dx = grad[n.parents[0]];
        for (std::size_t r = 0; r < n.idx.size(); ++r)
          for (int j = 0; j < dy.cols; ++j)
            dx(static_cast<int>(r), j) += dy(n.idx[r], j);
        break;
      }
      case Op::segment_max: {
        Mat& dx = grad[n.parents[0]];
        const int cols = dy.cols;
        for (int b = 0; b < dy.rows; ++b)
          for (int j = 0; j < cols; ++j) {
            const int r = n.idx[static_cast<std::size_t>(b) * cols + j];
            if (r >= 0) dx(r, j) += dy(b, j);
          }
        break;
      }
    }
  }
  return grad;
}

}  // namespace adpc::nn
