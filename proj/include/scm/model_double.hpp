#ifndef SCM_MODEL_DOUBLE_HPP
#define SCM_MODEL_DOUBLE_HPP

#include <string>
#include <utility>
#include <vector>

#include "scm/orbits.hpp"
#include "scm/poisson_engine.hpp"

namespace scm {

// G x G model: coordinates (p, h, spin) with mu0 + mu0' = 0, Hamiltonians
// H^(x), H^(y), and the rank-one SL_n specialization in reduced spin
// variables. Conventions fixed here: mu = x + y in O, -mu' = x + h y h^-1
// with mu' in O'. Complex arithmetic throughout.

struct DoublePoint {
  VecC p;           // sum p_i = 0
  CartanElement h;  // complex, regular (h_alpha != 1)
  bool rank_one = false;
  ReducedSpinPoint spin;  // rank-one mode
  MatC mu, mup;           // generic mode (traceless, diag(mu)+diag(mup) = 0)

  int n() const { return static_cast<int>(p.size()); }
  void validate(double tol = 1e-9) const;
};

/// Gauge representative (phi = 1) of the rank-one moment matrices. Requires
/// every occupation n_i away from zero.
std::pair<MatC, MatC> rank_one_matrices(const ReducedSpinPoint& spin);

/// x0 = mu0/2 + p, y0 = mu0/2 - p; off-diagonal
/// x_a = (mu_a h_a + mu'_a)/(h_a - 1), y_a = (mu_a + mu'_a)/(1 - h_a).
/// The identities x + y = mu and x + h y h^-1 = -mu' then hold exactly.
std::pair<MatC, MatC> reconstruct_xy(const DoublePoint& pt);

/// (H^(x)_k, H^(y)_k) = (tr(x^k)/k, tr(y^k)/k); k = 2 via closed forms.
std::pair<Cplx, Cplx> double_hamiltonians(const DoublePoint& pt, int k);

/// The section-4 displayed rank-one sums, kinetic terms (p_i +- H_i/4)^2 and
/// the H-invariant denominator (h_a - 1)(h_-a - 1); they differ from
/// tr(.^2)/2 by a leaf constant, which the harness calibrates and monitors.
std::pair<Cplx, Cplx> displayed_rank_one_hamiltonians(const DoublePoint& pt);

struct LeafReport {
  std::vector<std::pair<std::string, double>> residuals;
  double max_residual = 0.0;
};

/// Residuals of tr(mu^k) - c_k, tr((-mu')^k) - c'_k (k = 2..n), |mu0 + mu0'|;
/// in rank-one mode the (constr) relations and sum H - (N - N').
LeafReport leaf_check(const DoublePoint& pt, const std::vector<Cplx>& c_targets,
                      const std::vector<Cplx>& cp_targets);

/// Casimir values tr(mu^k), k = 2..n, on the rank-one orbit of level N.
std::vector<Cplx> rank_one_casimir_targets(int n, Cplx N);

// --- chart -------------------------------------------------------------------

/// Rank-one chart coordinates: [pi (n), h (n), a (n), b (n), H (n)] with
/// pi_i = p_i - H_i/4, the Darboux momentum that commutes with the reduced
/// spins. Blocks: canonical (pi, h) and one reduced-spin block.
struct DoubleRankOneChart {
  Chart chart;
  BracketTable table;
  int n = 0;
  Cplx N, Np;
  double sign_spin = -1.0;  // calibrated orientation of the reduced-spin block

  int pi_index(int i) const { return i; }
  int h_index(int i) const { return n + i; }
  int a_index(int i) const { return 2 * n + i; }
  int b_index(int i) const { return 3 * n + i; }
  int H_index(int i) const { return 4 * n + i; }
  Cplx level_sum() const { return (N + Np) / double(n); }
};

DoubleRankOneChart make_double_rank_one_chart(int n, Cplx N, Cplx Np,
                                              double sign_spin = -1.0);

VecC pack_double(const DoubleRankOneChart& dc, const DoublePoint& pt);
DoublePoint unpack_double(const DoubleRankOneChart& dc, const VecC& z);

/// tr(x^k)/k resp. tr(y^k)/k as chart functions; analytic gradients for k=2.
ScalarFunction double_hx_fn(const DoubleRankOneChart& dc, int k);
ScalarFunction double_hy_fn(const DoubleRankOneChart& dc, int k);

/// Conserved invariant words for the audit: tr x^2, tr y^2, tr(xy), tr(x~y~).
std::vector<ScalarFunction> double_conserved_family(const DoubleRankOneChart& dc);

/// Normal form: h sorted by the fixed complex order (permutation applied to
/// all coordinates), then the residual C* gauge fixed from the products
/// a_i b_j via a reference index.
VecC double_normal_form(const DoubleRankOneChart& dc, const VecC& z);

}  // namespace scm

#endif
