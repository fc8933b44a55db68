#include "adpc/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "adpc/rng.hpp"
#include "json.hpp"

namespace adpc {

double distance(const Vec2& a, const Vec2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

void GenConfig::validate() const {
  if (num_links < 1) throw std::invalid_argument("GenConfig: num_links must be >= 1");
  if (area_m <= 0.0) throw std::invalid_argument("GenConfig: area_m must be > 0");
  if (pair_dist_min_m <= 0.0) throw std::invalid_argument("GenConfig: pair_dist_min_m must be > 0");
  if (pair_dist_max_m < pair_dist_min_m)
    throw std::invalid_argument("GenConfig: pair_dist_max_m must be >= pair_dist_min_m");
  if (pathloss_exponent <= 0.0) throw std::invalid_argument("GenConfig: pathloss_exponent must be > 0");
  if (reference_loss <= 0.0) throw std::invalid_argument("GenConfig: reference_loss must be > 0");
  if (noise_power <= 0.0) throw std::invalid_argument("GenConfig: noise_power must be > 0");
  if (p_max <= 0.0) throw std::invalid_argument("GenConfig: p_max must be > 0");
  if (edge_threshold_m <= 0.0) throw std::invalid_argument("GenConfig: edge_threshold_m must be > 0");
}

void NetworkInstance::validate() const {
  const int k = num_links;
  if (k < 1) throw std::invalid_argument("NetworkInstance: num_links must be >= 1");
  if (static_cast<int>(tx_pos.size()) != k || static_cast<int>(rx_pos.size()) != k ||
      static_cast<int>(weight.size()) != k ||
      gain.size() != static_cast<std::size_t>(k) * static_cast<std::size_t>(k))
    throw std::invalid_argument("NetworkInstance: field sizes inconsistent with num_links");
  for (double v : gain)
    if (!(v >= 0.0)) throw std::invalid_argument("NetworkInstance: gains must be >= 0");
  for (int i = 0; i < k; ++i)
    if (!(g(i, i) > 0.0)) throw std::invalid_argument("NetworkInstance: diagonal gains must be > 0");
  for (double w : weight)
    if (!(w >= 0.0)) throw std::invalid_argument("NetworkInstance: weights must be >= 0");
  if (!(noise_power > 0.0)) throw std::invalid_argument("NetworkInstance: noise_power must be > 0");
  if (!(p_max > 0.0)) throw std::invalid_argument("NetworkInstance: p_max must be > 0");
}

NetworkInstance sample_instance(const GenConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  const int k = cfg.num_links;

  Rng rng(seed);
  NetworkInstance inst;
  inst.num_links = k;
  inst.tx_pos.resize(k);
  inst.rx_pos.resize(k);
  inst.weight.assign(k, 1.0);
  inst.gain.resize(static_cast<std::size_t>(k) * k);
  inst.noise_power = cfg.noise_power;
  inst.p_max = cfg.p_max;
  inst.id = seed;

  for (int i = 0; i < k; ++i) {
    inst.tx_pos[i] = {rng.uniform(0.0, cfg.area_m), rng.uniform(0.0, cfg.area_m)};
    const double r = rng.uniform(cfg.pair_dist_min_m, cfg.pair_dist_max_m);
    const double a = rng.uniform(0.0, kTwoPi);
    Vec2 rx{inst.tx_pos[i].x + r * std::cos(a), inst.tx_pos[i].y + r * std::sin(a)};
    const Vec2 clamped{std::clamp(rx.x, 0.0, cfg.area_m), std::clamp(rx.y, 0.0, cfg.area_m)};
    if (clamped.x != rx.x || clamped.y != rx.y) inst.clipped = true;
    inst.rx_pos[i] = clamped;
  }

  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double d = std::max(distance(inst.tx_pos[i], inst.rx_pos[j]), 1.0);
      double gain = cfg.reference_loss * std::pow(d, -cfg.pathloss_exponent);
      if (cfg.rayleigh_fading) gain *= rng.exponential();
      inst.gain[static_cast<std::size_t>(i) * k + j] = gain;
    }
  }
  return inst;
}

InterferenceGraph build_graph(const NetworkInstance& inst, double threshold_m) {
  if (!(threshold_m > 0.0)) throw std::invalid_argument("build_graph: threshold_m must be > 0");
  InterferenceGraph g;
  g.num_links = inst.num_links;
  for (int i = 0; i < inst.num_links; ++i) {      // victim receiver
    for (int j = 0; j < inst.num_links; ++j) {    // interfering sender
      if (j == i) continue;
      if (distance(inst.tx_pos[j], inst.rx_pos[i]) < threshold_m)
        g.edges.push_back({j, i, inst.g(j, i)});
    }
  }
  return g;
}

Dataset generate_dataset(const GenConfig& cfg, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generate_dataset: n must be >= 1");
  cfg.validate();
  Dataset ds;
  ds.config = cfg;
  ds.seed = seed;
  ds.instances.reserve(n);
  for (int i = 0; i < n; ++i)
    ds.instances.push_back(sample_instance(cfg, derive_seed(seed, static_cast<std::uint64_t>(i))));
  return ds;
}

namespace {

using nlohmann::json;

json config_to_json(const GenConfig& c) {
  return json{{"num_links", c.num_links},
              {"area_m", c.area_m},
              {"pair_dist_min_m", c.pair_dist_min_m},
              {"pair_dist_max_m", c.pair_dist_max_m},
              {"pathloss_exponent", c.pathloss_exponent},
              {"reference_loss", c.reference_loss},
              {"rayleigh_fading", c.rayleigh_fading},
              {"noise_power", c.noise_power},
              {"p_max", c.p_max},
              {"edge_threshold_m", c.edge_threshold_m}};
}

GenConfig config_from_json(const json& j) {
  GenConfig c;
  c.num_links = j.at("num_links").get<int>();
  c.area_m = j.at("area_m").get<double>();
  c.pair_dist_min_m = j.at("pair_dist_min_m").get<double>();
  c.pair_dist_max_m = j.at("pair_dist_max_m").get<double>();
  c.pathloss_exponent = j.at("pathloss_exponent").get<double>();
  c.reference_loss = j.at("reference_loss").get<double>();
  c.rayleigh_fading = j.at("rayleigh_fading").get<bool>();
  c.noise_power = j.at("noise_power").get<double>();
  c.p_max = j.at("p_max").get<double>();
  c.edge_threshold_m = j.at("edge_threshold_m").get<double>();
  return c;
}

json points_to_json(const std::vector<Vec2>& pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back(json::array({p.x, p.y}));
  return arr;
}

std::vector<Vec2> points_from_json(const json& arr) {
  std::vector<Vec2> pts;
  for (const auto& p : arr) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return pts;
}

}  // namespace

void save_dataset(const Dataset& ds, const std::string& path) {
  json j;
  j["config"] = config_to_json(ds.config);
  j["seed"] = ds.seed;
  json instances = json::array();
  for (const auto& inst : ds.instances) {
    const int k = inst.num_links;
    json rows = json::array();
    for (int i = 0; i < k; ++i) {
      json row = json::array();
      for (int c = 0; c < k; ++c) row.push_back(inst.g(i, c));
      rows.push_back(std::move(row));
    }
    instances.push_back(json{{"tx", points_to_json(inst.tx_pos)},
                             {"rx", points_to_json(inst.rx_pos)},
                             {"gain", std::move(rows)},
                             {"weight", inst.weight},
                             {"noise_power", inst.noise_power},
                             {"p_max", inst.p_max},
                             {"id", inst.id}});
  }
  j["instances"] = std::move(instances);

  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_dataset: cannot open " + path);
  out << j.dump() << "\n";
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_dataset: cannot open " + path);
  json j = json::parse(in);

  Dataset ds;
  ds.config = config_from_json(j.at("config"));
  ds.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& ji : j.at("instances")) {
    NetworkInstance inst;
    inst.tx_pos = points_from_json(ji.at("tx"));
    inst.rx_pos = points_from_json(ji.at("rx"));
    inst.num_links = static_cast<int>(inst.tx_pos.size());
    const int k = inst.num_links;
    inst.gain.reserve(static_cast<std::size_t>(k) * k);
    for (const auto& row : ji.at("gain"))
      for (const auto& v : row) inst.gain.push_back(v.get<double>());
    inst.weight = ji.at("weight").get<std::vector<double>>();
    inst.noise_power = ji.at("noise_power").get<double>();
    inst.p_max = ji.at("p_max").get<double>();
    if (ji.contains("id")) inst.id = ji.at("id").get<std::uint64_t>();
    inst.validate();
    if (inst.num_links != ds.config.num_links ||
        inst.noise_power != ds.config.noise_power || inst.p_max != ds.config.p_max)
      throw std::runtime_error("load_dataset: instance inconsistent with dataset config");
    ds.instances.push_back(std::move(inst));
  }
  return ds;
}

}  // namespace adpc
