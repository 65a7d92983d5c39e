#ifndef SCM_PARALLEL_HPP
#define SCM_PARALLEL_HPP

#include <algorithm>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace scm {

// Batch verification kernels (Jacobi sampling, centrality sweeps, audits) are
// embarrassingly parallel over sample index. Each item is computed
// independently and reduced in index order, so the parallel path is bitwise
// identical to the serial reference used in tests.

inline bool& parallel_enabled() {
  static bool on = true;
  return on;
}

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

template <class Body>
void parallel_for(int count, Body&& body, bool parallel = parallel_enabled()) {
#ifdef _OPENMP
  if (parallel && count > 1) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
#endif
  (void)parallel;
  for (int i = 0; i < count; ++i) body(i);
}

/// Evaluate f(i) for i in [0,count) and return the values in index order.
template <class F>
std::vector<double> batch_values(int count, F&& f,
                                 bool parallel = parallel_enabled()) {
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
  parallel_for(
      count, [&](int i) { out[static_cast<std::size_t>(i)] = f(i); }, parallel);
  return out;
}

template <class F>
double batch_max(int count, F&& f, bool parallel = parallel_enabled()) {
  const std::vector<double> v = batch_values(count, f, parallel);
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

}  // namespace scm

#endif
