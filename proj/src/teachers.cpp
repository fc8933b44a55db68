#include "adpc/teachers.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"

namespace adpc {

std::string teacher_name(TeacherId id) {
  switch (id) {
    case TeacherId::wmmse: return "wmmse";
    case TeacherId::fplinq: return "fplinq";
    case TeacherId::oracle: return "oracle";
  }
  return "?";
}

TeacherId teacher_from_name(const std::string& name) {
  if (name == "wmmse") return TeacherId::wmmse;
  if (name == "fplinq") return TeacherId::fplinq;
  if (name == "oracle") return TeacherId::oracle;
  throw std::invalid_argument("unknown teacher: " + name);
}

namespace {

void check_solver_args(const NetworkInstance& inst, const PowerAllocation& init, int max_iter,
                       double tol) {
  inst.validate();
  if (init.size() != inst.num_links)
    throw std::invalid_argument("solver: init size mismatches instance");
  if (max_iter < 1) throw std::invalid_argument("solver: max_iter must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("solver: tol must be > 0");
}

TeacherLabel make_label(const NetworkInstance& inst, std::vector<double> p, TeacherId id,
                        int iters, bool converged) {
  TeacherLabel label;
  label.sum_rate = sum_rate_value(inst, p);
  label.p = std::move(p);
  label.teacher = id;
  label.iterations = iters;
  label.converged = converged;
  return label;
}

}  // namespace

std::pair<TeacherLabel, SolverTrace> wmmse_solve(const NetworkInstance& inst,
                                                 const PowerAllocation& init, int max_iter,
                                                 double tol) {
  check_solver_args(inst, init, max_iter, tol);
  const int k = inst.num_links;
  const double v_max = std::sqrt(inst.p_max);

  // amplitude variables v_i = sqrt(p_i); a(j,i) = sqrt(h_{j,i})
  std::vector<double> amp(static_cast<std::size_t>(k) * k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i)
      amp[static_cast<std::size_t>(j) * k + i] = std::sqrt(inst.g(j, i));
  auto a = [&](int j, int i) { return amp[static_cast<std::size_t>(j) * k + i]; };

  std::vector<double> v(k), u(k), lambda(k), p(k);
  for (int i = 0; i < k; ++i) v[i] = std::sqrt(init.p[i]);

  SolverTrace trace;
  auto record = [&]() {
    for (int i = 0; i < k; ++i) p[i] = v[i] * v[i];
    trace.objective.push_back(sum_rate_value(inst, p));
  };
  record();

  int iters = 0;
  bool converged = false;
  double residual = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    iters = it + 1;
    // receiver coefficients
    for (int i = 0; i < k; ++i) {
      double total = inst.noise_power;
      for (int j = 0; j < k; ++j) total += a(j, i) * a(j, i) * v[j] * v[j];
      u[i] = a(i, i) * v[i] / total;
    }
    // MMSE weights, scaled by the rate weight
    for (int i = 0; i < k; ++i) {
      const double mse = 1.0 - u[i] * a(i, i) * v[i];
      lambda[i] = inst.weight[i] / mse;
    }
    // amplitudes
    residual = 0.0;
    for (int i = 0; i < k; ++i) {
      double denom = 0.0;
      for (int j = 0; j < k; ++j) denom += lambda[j] * u[j] * u[j] * a(i, j) * a(i, j);
      double vi = lambda[i] * u[i] * a(i, i) / denom;
      if (!std::isfinite(vi))
        throw solver_error("wmmse_solve: non-finite amplitude update", iters);
      vi = std::clamp(vi, 0.0, v_max);
      residual = std::max(residual, std::abs(vi * vi - v[i] * v[i]));
      v[i] = vi;
    }
    record();
    if (residual < tol) {
      converged = true;
      break;
    }
  }
  trace.final_residual = residual;

  for (int i = 0; i < k; ++i) p[i] = std::clamp(v[i] * v[i], 0.0, inst.p_max);
  return {make_label(inst, p, TeacherId::wmmse, iters, converged), std::move(trace)};
}

std::pair<TeacherLabel, SolverTrace> fplinq_solve(const NetworkInstance& inst,
                                                  const PowerAllocation& init, int max_iter,
                                                  double tol) {
  check_solver_args(inst, init, max_iter, tol);
  const int k = inst.num_links;

  std::vector<double> p = init.p, gamma(k), y(k);

  SolverTrace trace;
  trace.objective.push_back(sum_rate_value(inst, p));

  int iters = 0;
  bool converged = false;
  double residual = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    iters = it + 1;
    // SINR auxiliaries
    for (int i = 0; i < k; ++i) gamma[i] = sinr(inst, std::span<const double>(p), i);
    // quadratic-transform auxiliaries; denominator includes the own signal
    for (int i = 0; i < k; ++i) {
      double total = inst.noise_power;
      for (int j = 0; j < k; ++j) total += p[j] * inst.g(j, i);
      y[i] = std::sqrt(inst.weight[i] * (1.0 + gamma[i]) * p[i] * inst.g(i, i)) / total;
    }
    // powers
    residual = 0.0;
    for (int i = 0; i < k; ++i) {
      double denom = 0.0;
      for (int j = 0; j < k; ++j) denom += y[j] * y[j] * inst.g(i, j);
      const double num = y[i] * std::sqrt(inst.weight[i] * (1.0 + gamma[i]) * inst.g(i, i));
      double pi = denom > 0.0 ? (num / denom) * (num / denom) : 0.0;
      if (!std::isfinite(pi)) throw solver_error("fplinq_solve: non-finite power update", iters);
      pi = std::clamp(pi, 0.0, inst.p_max);
      residual = std::max(residual, std::abs(pi - p[i]));
      p[i] = pi;
    }
    trace.objective.push_back(sum_rate_value(inst, p));
    if (residual < tol) {
      converged = true;
      break;
    }
  }
  trace.final_residual = residual;
  return {make_label(inst, p, TeacherId::fplinq, iters, converged), std::move(trace)};
}

OracleSolution brute_force_solve(const NetworkInstance& inst, int levels) {
  inst.validate();
  if (levels < 2) throw std::invalid_argument("brute_force_solve: levels must be >= 2");
  const int k = inst.num_links;
  if (k > 8) throw std::length_error("brute_force_solve: K must be <= 8");
  double combos = 1.0;
  for (int i = 0; i < k; ++i) combos *= levels;
  if (combos > 1e7) throw std::length_error("brute_force_solve: L^K exceeds the 1e7 guard");

  std::vector<double> grid(levels);
  for (int l = 0; l < levels; ++l)
    grid[l] = inst.p_max * static_cast<double>(l) / static_cast<double>(levels - 1);

  std::vector<int> idx(k, 0);
  std::vector<double> p(k, grid[0]);
  OracleSolution best;
  best.levels = levels;
  best.p = p;
  best.objective = sum_rate_value(inst, p);

  // Odometer over grid indices, component 0 fastest; strict improvement keeps
  // the first maximizer in this order.
  const auto total = static_cast<long long>(combos);
  for (long long step = 1; step < total; ++step) {
    int d = 0;
    while (idx[d] == levels - 1) {
      idx[d] = 0;
      p[d] = grid[0];
      ++d;
    }
    ++idx[d];
    p[d] = grid[idx[d]];
    const double obj = sum_rate_value(inst, p);
    if (obj > best.objective) {
      best.objective = obj;
      best.p = p;
    }
  }
  return best;
}

TeacherLabel solve_instance(const NetworkInstance& inst, TeacherId teacher,
                            const SolverParams& params) {
  if (teacher == TeacherId::oracle) {
    OracleSolution sol = brute_force_solve(inst, params.levels);
    TeacherLabel label;
    label.sum_rate = sol.objective;
    label.p = std::move(sol.p);
    label.teacher = TeacherId::oracle;
    label.iterations = 0;
    label.converged = true;
    return label;
  }
  const PowerAllocation init(std::vector<double>(inst.num_links, inst.p_max), inst.p_max);
  auto res = teacher == TeacherId::wmmse
                 ? wmmse_solve(inst, init, params.max_iter, params.tol)
                 : fplinq_solve(inst, init, params.max_iter, params.tol);
  return std::move(res.first);
}

std::vector<TeacherLabel> label_dataset(const Dataset& ds, TeacherId teacher,
                                        const SolverParams& params) {
  std::vector<TeacherLabel> labels;
  labels.reserve(ds.instances.size());
  for (std::size_t i = 0; i < ds.instances.size(); ++i) {
    try {
      labels.push_back(solve_instance(ds.instances[i], teacher, params));
    } catch (const std::exception& e) {
      throw std::runtime_error("label_dataset: instance " + std::to_string(i) + ": " + e.what());
    }
  }
  return labels;
}

void save_labels(const std::vector<TeacherLabel>& labels, const std::string& path) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& l : labels)
    arr.push_back(nlohmann::json{{"p", l.p},
                                 {"teacher", teacher_name(l.teacher)},
                                 {"sum_rate", l.sum_rate},
                                 {"iters", l.iterations},
                                 {"converged", l.converged}});
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_labels: cannot open " + path);
  out << arr.dump() << "\n";
}

std::vector<TeacherLabel> load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_labels: cannot open " + path);
  nlohmann::json arr = nlohmann::json::parse(in);
  std::vector<TeacherLabel> labels;
  for (const auto& j : arr) {
    TeacherLabel l;
    l.p = j.at("p").get<std::vector<double>>();
    l.teacher = teacher_from_name(j.at("teacher").get<std::string>());
    l.sum_rate = j.at("sum_rate").get<double>();
    l.iterations = j.at("iters").get<int>();
    l.converged = j.at("converged").get<bool>();
    labels.push_back(std::move(l));
  }
  return labels;
}

}  // namespace adpc
