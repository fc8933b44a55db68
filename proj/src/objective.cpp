#include "adpc/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace adpc {

namespace {
constexpr double kLn2 = 0.69314718055994530941723212145818;
}

PowerAllocation::PowerAllocation(std::vector<double> values, double p_max) : p(std::move(values)) {
  for (double v : p)
    if (!(v >= 0.0) || !(v <= p_max))
      throw std::invalid_argument("PowerAllocation: entries must lie in [0, p_max]");
}

PowerAllocation PowerAllocation::clamped(std::vector<double> values, double p_max) {
  for (double& v : values) v = std::clamp(v, 0.0, p_max);
  PowerAllocation out;
  out.p = std::move(values);
  return out;
}

double sinr(const NetworkInstance& inst, std::span<const double> p, int i) {
  const int k = inst.num_links;
  if (i < 0 || i >= k) throw std::invalid_argument("sinr: link index out of range");
  double interference = inst.noise_power;
  for (int j = 0; j < k; ++j)
    if (j != i) interference += p[j] * inst.g(j, i);
  return p[i] * inst.g(i, i) / interference;
}

double sinr(const NetworkInstance& inst, const PowerAllocation& p, int i) {
  return sinr(inst, std::span<const double>(p.p), i);
}

ObjectiveReport sum_rate(const NetworkInstance& inst, std::span<const double> p) {
  const int k = inst.num_links;
  ObjectiveReport rep;
  rep.sinr.resize(k);
  rep.rate.resize(k);
  for (int i = 0; i < k; ++i) {
    rep.sinr[i] = sinr(inst, p, i);
    rep.rate[i] = std::log2(1.0 + rep.sinr[i]);
    rep.weighted_sum += inst.weight[i] * rep.rate[i];
  }
  return rep;
}

ObjectiveReport sum_rate(const NetworkInstance& inst, const PowerAllocation& p) {
  return sum_rate(inst, std::span<const double>(p.p));
}

double sum_rate_value(const NetworkInstance& inst, std::span<const double> p) {
  const int k = inst.num_links;
  double total = 0.0;
  for (int i = 0; i < k; ++i) total += inst.weight[i] * std::log2(1.0 + sinr(inst, p, i));
  return total;
}

std::vector<double> sum_rate_grad(const NetworkInstance& inst, std::span<const double> p) {
  const int k = inst.num_links;
  // interference[i] = noise + sum_{j != i} p_j h_{j,i}
  std::vector<double> interference(k);
  for (int i = 0; i < k; ++i) {
    double acc = inst.noise_power;
    for (int j = 0; j < k; ++j)
      if (j != i) acc += p[j] * inst.g(j, i);
    interference[i] = acc;
  }

  std::vector<double> grad(k, 0.0);
  for (int t = 0; t < k; ++t) {
    // own-rate term of link t
    double g = inst.weight[t] * inst.g(t, t) / (interference[t] + p[t] * inst.g(t, t));
    // interference caused to every other link i
    for (int i = 0; i < k; ++i) {
      if (i == t) continue;
      const double signal = p[i] * inst.g(i, i);
      g -= inst.weight[i] * inst.g(t, i) * signal /
           (interference[i] * (interference[i] + signal));
    }
    grad[t] = g / kLn2;
  }
  return grad;
}

std::vector<double> sum_rate_grad(const NetworkInstance& inst, const PowerAllocation& p) {
  return sum_rate_grad(inst, std::span<const double>(p.p));
}

}  // namespace adpc
