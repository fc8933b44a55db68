#pragma once

#include <vector>

#include "adpc/mat.hpp"

namespace adpc::nn {

// Single-use computation record. Nodes are created in topological order by
// the forward pass; backward() replays them in reverse and is const, so a
// record can be differentiated repeatedly with different seeds.
class Tape {
 public:
  int leaf(Mat value);
  int matmul(int x, int w);
  int add_rowvec(int x, int bias);  // bias is 1 x m, broadcast over rows
  int add(int x, int y);
  int relu(int x);
  int tanh(int x);
  int scaled_sigmoid(int x, double scale);  // scale * sigmoid(x)
  int concat_cols(const std::vector<int>& parts);
  int gather_rows(int x, std::vector<int> row_of_out);
  // Rows of x summed (or maxed) into out_rows buckets; empty buckets stay 0.
  int segment_sum(int x, std::vector<int> bucket_of_row, int out_rows);
  int segment_max(int x, std::vector<int> bucket_of_row, int out_rows);

  const Mat& value(int id) const { return nodes_[id].val; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }

  // Gradients of sum(seed . output) with respect to every node.
  std::vector<Mat> backward(int output, const Mat& seed) const;

 private:
  enum class Op {
    leaf,
    matmul,
    add_rowvec,
    add,
    relu,
    tanh_,
    scaled_sigmoid,
    concat_cols,
    gather_rows,
    segment_sum,
    segment_max
  };

  struct Node {
    Op op = Op::leaf;
    Mat val;
    std::vector<int> parents;
    std::vector<int> idx;  // gather/segment indices, or concat column offsets
    double scale = 1.0;
  };

  int push(Node n);

  std::vector<Node> nodes_;
};

}  // namespace adpc::nn
