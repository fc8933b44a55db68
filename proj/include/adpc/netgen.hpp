#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace adpc {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Vec2& a, const Vec2& b);

// Geometry and channel model for random K-pair D2D scenarios. Gains follow
// log-distance path loss with optional unit-mean exponential (Rayleigh power)
// fading; distances below 1 m are clamped to the reference distance.
struct GenConfig {
  int num_links = 10;             // K
  double area_m = 500.0;          // square side
  double pair_dist_min_m = 2.0;   // tx-rx annulus
  double pair_dist_max_m = 65.0;
  double pathloss_exponent = 3.0;
  double reference_loss = 1.0;    // gain at 1 m
  bool rayleigh_fading = false;
  double noise_power = 1e-2;      // linear scale
  double p_max = 1.0;
  double edge_threshold_m = 200.0;

  void validate() const;  // throws std::invalid_argument
};

// One K-link interference scenario. gain is row-major K*K with
// gain[i][j] = channel gain from the sender of link i to the receiver of
// link j, linear scale. Dense even when the graph is sparsified.
struct NetworkInstance {
  int num_links = 0;
  std::vector<Vec2> tx_pos;
  std::vector<Vec2> rx_pos;
  std::vector<double> gain;
  std::vector<double> weight;
  double noise_power = 0.0;
  double p_max = 1.0;
  std::uint64_t id = 0;    // sampling seed, used as identity for caching
  bool clipped = false;    // some rx position was clipped to the area

  double g(int i, int j) const { return gain[static_cast<std::size_t>(i) * num_links + j]; }
  void validate() const;
};

struct Edge {
  int src = 0;  // interfering sender j
  int dst = 0;  // victim receiver i
  double gain = 0.0;  // h_{j,i}
};

// Directed interference edges (j -> i), no self-edges, ordered by (dst, src).
struct InterferenceGraph {
  int num_links = 0;
  std::vector<Edge> edges;
};

struct Dataset {
  GenConfig config;
  std::uint64_t seed = 0;
  std::vector<NetworkInstance> instances;
};

NetworkInstance sample_instance(const GenConfig& cfg, std::uint64_t seed);

// Edge (j -> i) iff j != i and distance(tx_j, rx_i) < threshold_m.
InterferenceGraph build_graph(const NetworkInstance& inst, double threshold_m);

Dataset generate_dataset(const GenConfig& cfg, int n, std::uint64_t seed);

void save_dataset(const Dataset& ds, const std::string& path);
Dataset load_dataset(const std::string& path);

}  // namespace adpc
