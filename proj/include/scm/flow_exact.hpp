#ifndef SCM_FLOW_EXACT_HPP
#define SCM_FLOW_EXACT_HPP

#include <utility>
#include <vector>

#include "scm/model_chevalley.hpp"
#include "scm/model_double.hpp"

namespace scm {

// Exact integration by the factorization method: free flow upstairs,
// KAK / eigen decomposition back to the coset normal form.

/// (x, g) -> (x, exp(t grad f) g) with grad f = traceless part of x^(k-1)
/// for f = tr(x^k)/k.
std::pair<MatR, MatR> free_flow(const MatR& x, const MatR& g, double t, int k);
std::pair<MatC, MatC> free_flow(const MatC& x, const MatC& g, double t, int k);

/// KAK factors of a real SL_n element: k1, k2 special orthogonal, a positive
/// diagonal descending. Sign gauge: first significant entry of the first n-1
/// columns of k1 positive, last column forced by det k1 = 1, compensated in k2.
struct FactorizedFrame {
  MatR k1, k2;
  VecR a;
};

FactorizedFrame kak_split(const MatR& g, double gap_tol = 1e-8, double time_stamp = 0.0);

/// Eigen-frame of a diagonalizable complex matrix: a = u diag(h) u^-1 with
/// eigenvalues in the fixed normal order and phase-fixed unit columns.
struct EigenFrame {
  MatC u;
  VecC h;
};

EigenFrame eig_split(const MatC& a, double gap_tol = 1e-8, double time_stamp = 0.0);

/// Reduced trajectory of the Chevalley model under f = tr(x^k)/k: the Lax
/// matrix is constant upstairs; per grid time the KAK frame of
/// exp(t grad f) h0 gives p, h, mu, mu'.
std::vector<ChevalleyPoint> chevalley_trajectory(const ChevalleyPoint& pt0,
                                                 const std::vector<double>& times,
                                                 int k);

enum class DoubleFlow { HamiltonianX, HamiltonianY };

/// Reduced trajectory of the double model: a(t) = exp(t grad f(x)) a0 for
/// H^(x), a(t) = a0 exp(-t grad f(y)) for H^(y); diagonalize and push
/// (x, y) into the moving eigenframe.
std::vector<DoublePoint> double_trajectory(const DoublePoint& pt0,
                                           const std::vector<double>& times,
                                           DoubleFlow which, int k);

}  // namespace scm

#endif
