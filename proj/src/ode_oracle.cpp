#include "scm/ode_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace scm {

namespace {
VecC rk4_step(const std::function<VecC(const VecC&)>& f, const VecC& z, double h) {
  const VecC k1 = f(z);
  const VecC k2 = f(z + (0.5 * h) * k1);
  const VecC k3 = f(z + (0.5 * h) * k2);
  const VecC k4 = f(z + h * k3);
  return z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}
}  // namespace

Trajectory integrate(const ScalarFunction& H, const BracketTable& table,
                     const Chart& chart, const VecC& z0,
                     const std::vector<double>& times, double step,
                     double divergence_tol) {
  if (step <= 0.0) throw Error("integrate: step must be positive");
  chart.require_on_chart(z0);
  auto field = [&](const VecC& z) -> VecC {
    const VecC gH = H.gradient(z);
    return table.bivector(z).transpose() * gH;
  };
  Trajectory traj;
  traj.chart_name = chart.name;
  traj.times = times;
  traj.step = step;
  traj.states.reserve(times.size());
  VecC z = z0;
  double t_cur = 0.0;
  bool first = true;
  for (double t : times) {
    if (first && t == 0.0) {
      traj.states.push_back(z);
      first = false;
      t_cur = 0.0;
      continue;
    }
    first = false;
    const double span = t - t_cur;
    if (span != 0.0) {
      const int substeps = std::max(1, static_cast<int>(std::ceil(std::abs(span) / step)));
      const double h = span / substeps;
      for (int q = 0; q < substeps; ++q) z = rk4_step(field, z, h);
      t_cur = t;
    }
    const double res = chart.constraint_residual(z);
    if (res > divergence_tol) {
      std::ostringstream os;
      os << "integrate: off-chart drift " << res << " at t=" << t;
      throw DivergenceError(os.str(), t);
    }
    traj.states.push_back(z);
  }
  return traj;
}

std::vector<double> conservation_drift(const Trajectory& traj,
                                       const std::vector<ScalarFunction>& fns) {
  std::vector<double> out(fns.size(), 0.0);
  if (traj.states.empty()) return out;
  for (std::size_t f = 0; f < fns.size(); ++f) {
    const Cplx base = fns[f](traj.states.front());
    for (const auto& z : traj.states)
      out[f] = std::max(out[f], std::abs(fns[f](z) - base));
  }
  return out;
}

double chart_distance(const VecC& a, const VecC& b, const Chart& chart) {
  double d = 0.0;
  for (int i = 0; i < chart.dim(); ++i) {
    if (chart.kinds[i] == CoordKind::Multiplicative) {
      d = std::max(d, std::abs(std::log(a[i] / b[i])));
    } else {
      d = std::max(d, std::abs(a[i] - b[i]));
    }
  }
  return d;
}

double trajectory_compare(const Trajectory& A, const Trajectory& B,
                          const Chart& chart,
                          const std::function<VecC(const VecC&)>& normal_form) {
  if (A.chart_name != B.chart_name)
    throw ComparisonError("trajectory_compare: chart mismatch");
  if (A.times.size() != B.times.size())
    throw ComparisonError("trajectory_compare: grid size mismatch");
  for (std::size_t i = 0; i < A.times.size(); ++i)
    if (A.times[i] != B.times[i])
      throw ComparisonError("trajectory_compare: grid mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < A.states.size(); ++i) {
    const VecC za = normal_form ? normal_form(A.states[i]) : A.states[i];
    const VecC zb = normal_form ? normal_form(B.states[i]) : B.states[i];
    worst = std::max(worst, chart_distance(za, zb, chart));
  }
  return worst;
}

std::vector<double> uniform_grid(double t_max, int samples) {
  if (samples < 1) throw Error("uniform_grid: need at least one sample");
  std::vector<double> out(samples);
  if (samples == 1) {
    out[0] = 0.0;
    return out;
  }
  for (int i = 0; i < samples; ++i)
    out[i] = t_max * double(i) / double(samples - 1);
  return out;
}

}  // namespace scm
