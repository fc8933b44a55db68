#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "adpc/netgen.hpp"
#include "adpc/objective.hpp"

namespace adpc {

enum class TeacherId { wmmse, fplinq, oracle };

std::string teacher_name(TeacherId id);
TeacherId teacher_from_name(const std::string& name);

struct TeacherLabel {
  std::vector<double> p;  // p_fp, in [0, p_max]
  TeacherId teacher = TeacherId::fplinq;
  double sum_rate = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct SolverTrace {
  std::vector<double> objective;  // after each full update sweep, starting at the init
  double final_residual = 0.0;    // max per-link power change of the last sweep
};

struct OracleSolution {
  std::vector<double> p;
  double objective = 0.0;
  int levels = 0;
};

// Thrown when a solver produces a non-finite intermediate.
struct solver_error : std::runtime_error {
  int iteration;
  explicit solver_error(const std::string& what, int iter)
      : std::runtime_error(what), iteration(iter) {}
};

struct SolverParams {
  int max_iter = 500;
  double tol = 1e-6;   // on max per-link power change
  int levels = 11;     // oracle grid resolution
};

// Scalar-channel weighted-MMSE block updates (receiver coefficient, MMSE
// weight, amplitude), amplitudes clipped to [0, sqrt(p_max)].
std::pair<TeacherLabel, SolverTrace> wmmse_solve(const NetworkInstance& inst,
                                                 const PowerAllocation& init, int max_iter,
                                                 double tol);

// Fractional-programming power control: alternating closed-form updates of
// the SINR auxiliaries, the quadratic-transform auxiliaries, and the powers.
std::pair<TeacherLabel, SolverTrace> fplinq_solve(const NetworkInstance& inst,
                                                  const PowerAllocation& init, int max_iter,
                                                  double tol);

// Exhaustive search over the uniform grid {0, p_max/(L-1), ..., p_max}^K.
// Guarded to K <= 8 and L^K <= 1e7. Ties are resolved to the first maximizer
// in colexicographic enumeration order (component 0 varies fastest).
OracleSolution brute_force_solve(const NetworkInstance& inst, int levels);

// One label per instance, order-aligned; deterministic full-power init.
std::vector<TeacherLabel> label_dataset(const Dataset& ds, TeacherId teacher,
                                        const SolverParams& params);

TeacherLabel solve_instance(const NetworkInstance& inst, TeacherId teacher,
                            const SolverParams& params);

void save_labels(const std::vector<TeacherLabel>& labels, const std::string& path);
std::vector<TeacherLabel> load_labels(const std::string& path);

}  // namespace adpc
