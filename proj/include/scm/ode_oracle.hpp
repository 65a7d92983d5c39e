#ifndef SCM_ODE_ORACLE_HPP
#define SCM_ODE_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "scm/poisson_engine.hpp"

namespace scm {

// Independent verification dynamics: fixed-step RK4 on zdot = {H, z} from a
// bracket table, compared against the exact factorization flow.

struct Trajectory {
  std::string chart_name;
  std::vector<double> times;
  std::vector<VecC> states;
  std::string method = "rk4";
  double step = 0.0;
  std::uint64_t seed = 0;

  std::size_t size() const { return times.size(); }
};

/// Classical fourth-order method over substeps of size <= step, sampled at
/// the grid; deterministic. Off-chart drift beyond divergence_tol raises a
/// divergence error with the offending time.
Trajectory integrate(const ScalarFunction& H, const BracketTable& table,
                     const Chart& chart, const VecC& z0,
                     const std::vector<double>& times, double step,
                     double divergence_tol = 1e-4);

/// Per-function max |F(z(t)) - F(z(0))| over the grid.
std::vector<double> conservation_drift(const Trajectory& traj,
                                       const std::vector<ScalarFunction>& fns);

/// Max chart-point distance over the grid after normal-form alignment.
/// Distance: max over coordinates, |log(a/b)| for multiplicative coordinates
/// and |a - b| otherwise.
double trajectory_compare(const Trajectory& A, const Trajectory& B,
                          const Chart& chart,
                          const std::function<VecC(const VecC&)>& normal_form);

double chart_distance(const VecC& a, const VecC& b, const Chart& chart);

std::vector<double> uniform_grid(double t_max, int samples);

}  // namespace scm

#endif
