#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adpc/mat.hpp"
#include "adpc/netgen.hpp"
#include "adpc/objective.hpp"
#include "adpc/tape.hpp"

namespace adpc {

struct shape_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class ArchKind { mlp, gnn, critic };
enum class Aggregator { sum, max };

// Student and critic architecture description.
//   mlp    : input K*K + K (flattened gains ++ weights), K sigmoid outputs
//   gnn    : per-round edge message nets over the interference graph, one
//            sigmoid output per node
//   critic : input K*K + 2K (gains ++ weights ++ powers), one linear output
struct ArchSpec {
  ArchKind kind = ArchKind::mlp;
  int num_links = 0;               // K
  std::vector<int> hidden = {256, 256};  // mlp / critic stack
  std::string activation = "relu";       // relu | tanh
  int gnn_rounds = 2;              // R
  int gnn_hidden = 64;             // H
  Aggregator aggregator = Aggregator::sum;

  void validate() const;
  static ArchSpec mlp(int k, std::vector<int> hidden = {256, 256});
  static ArchSpec gnn(int k, int rounds = 2, int hidden = 64,
                      Aggregator agg = Aggregator::sum);
  static ArchSpec critic(int k, std::vector<int> hidden = {256, 256});
};

// Named tensors with shapes fixed by an ArchSpec; iteration order is the
// construction order, which the flat view and the optimizer rely on.
struct ParamSet {
  std::vector<std::pair<std::string, nn::Mat>> tensors;

  nn::Mat& at(const std::string& name);
  const nn::Mat& at(const std::string& name) const;
  std::size_t count() const;  // total scalar parameters
  std::vector<double> flat() const;
  void set_flat(std::span<const double> values);
};

using Gradient = ParamSet;

// Per-dataset input normalization: gains enter the networks as standardized
// log10 values. Constants travel with the model checkpoint.
struct FeatureNorm {
  double log_gain_mean = 0.0;
  double log_gain_std = 1.0;

  double apply(double gain) const;
};

FeatureNorm compute_norm(const Dataset& ds);

struct Model {
  ArchSpec spec;
  ParamSet params;
  FeatureNorm norm;
};

// Uniform(-a, a) weights with a = sqrt(6 / (fan_in + fan_out)), zero biases.
ParamSet init_params(const ArchSpec& spec, std::uint64_t seed);

// Forward-pass record: the tape plus the node ids needed to route gradients
// back to the parameters and to the designated input.
struct ForwardRecord {
  nn::Tape tape;
  int output = -1;         // [B x K] powers, or [B x 1] critic value
  int primary_input = -1;  // mlp: feature matrix; gnn: node features; critic: power leaf
  std::vector<int> param_nodes;  // aligned with ParamSet order
  ArchKind kind = ArchKind::mlp;
  int batch = 0;
  int num_links = 0;
};

// Batched entry points used by the trainers.
ForwardRecord mlp_forward_batch(const Model& m,
                                std::span<const NetworkInstance* const> insts);
ForwardRecord gnn_forward_batch(const Model& m, std::span<const NetworkInstance* const> insts,
                                std::span<const InterferenceGraph* const> graphs);
ForwardRecord critic_forward_batch(const Model& m,
                                   std::span<const NetworkInstance* const> insts,
                                   const nn::Mat& powers);

// Single-instance conveniences.
std::pair<PowerAllocation, ForwardRecord> mlp_forward(const Model& m,
                                                      const NetworkInstance& inst);
std::pair<PowerAllocation, ForwardRecord> gnn_forward(const Model& m,
                                                      const NetworkInstance& inst,
                                                      const InterferenceGraph& g);
std::pair<double, ForwardRecord> critic_forward(const Model& m, const NetworkInstance& inst,
                                                const PowerAllocation& p);

// Powers of a record's output as a [B x K] matrix.
nn::Mat output_powers(const ForwardRecord& rec);

struct BackwardResult {
  Gradient grad;
  nn::Mat input_grad;  // gradient at primary_input (critic: d/dp)
};

// Exact reverse-mode accumulation of upstream^T . output. upstream is
// [B x K] for students and [B x 1] for the critic.
BackwardResult backward(const ForwardRecord& rec, const Model& m, const nn::Mat& upstream);

// params <- params - lr * grad
void sgd_step(ParamSet& params, const Gradient& grad, double lr);

void save_model(const Model& m, const std::string& path);
Model load_model(const std::string& path);

}  // namespace adpc
