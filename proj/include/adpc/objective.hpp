#pragma once

#include <span>
#include <vector>

#include "adpc/netgen.hpp"

namespace adpc {

// Transmit-power vector, validated against [0, p_max] at construction.
struct PowerAllocation {
  std::vector<double> p;

  PowerAllocation() = default;
  PowerAllocation(std::vector<double> values, double p_max);

  // Clamps out-of-range entries instead of rejecting them (exploration noise).
  static PowerAllocation clamped(std::vector<double> values, double p_max);

  int size() const { return static_cast<int>(p.size()); }
};

struct ObjectiveReport {
  std::vector<double> sinr;
  std::vector<double> rate;  // bits/s/Hz, log2(1 + sinr)
  double weighted_sum = 0.0;
};

double sinr(const NetworkInstance& inst, std::span<const double> p, int i);
double sinr(const NetworkInstance& inst, const PowerAllocation& p, int i);

ObjectiveReport sum_rate(const NetworkInstance& inst, std::span<const double> p);
ObjectiveReport sum_rate(const NetworkInstance& inst, const PowerAllocation& p);

// Weighted sum rate only; avoids building the report on hot paths.
double sum_rate_value(const NetworkInstance& inst, std::span<const double> p);

// Closed-form d(weighted sum rate)/dp, covering the own-rate term and the
// interference terms in every other link's rate. Rates are in bits, so a
// 1/ln 2 factor is applied.
std::vector<double> sum_rate_grad(const NetworkInstance& inst, std::span<const double> p);
std::vector<double> sum_rate_grad(const NetworkInstance& inst, const PowerAllocation& p);

}  // namespace adpc
