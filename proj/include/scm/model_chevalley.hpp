#ifndef SCM_MODEL_CHEVALLEY_HPP
#define SCM_MODEL_CHEVALLEY_HPP

#include <utility>

#include "scm/orbits.hpp"
#include "scm/poisson_engine.hpp"

namespace scm {

// Two-sided model for K = SO(n) in SL(n,R): birational coordinates
// (p, h, mu, mu'), Lax reconstruction and the spin Calogero-Moser
// Hamiltonians. Convention (anchored on the quadratic Hamiltonian):
//   mu_a  = x_a - x_-a,        mu'_a = -h_-a x_a + h_a x_-a
// i.e. mu = x - x^T and mu' is the antisymmetric part of -h^-1 x h.

struct ChevalleyPoint {
  VecR p;            // sum p_i = 0
  CartanElement h;   // real positive, regular
  SpinOrbitPoint M;  // point of O_1
  SpinOrbitPoint Mp; // point of O_2

  int n() const { return static_cast<int>(p.size()); }
  void validate(double tol = 1e-9) const;
};

/// Lax matrix: diag(x) = p, x_a = (h_a mu_a + mu'_a)/(h_a - h_-a),
/// x_-a = (h_-a mu_a + mu'_a)/(h_a - h_-a).
MatR reconstruct_x(const ChevalleyPoint& pt);

/// Inverse on the diagonal complement: M = x - x^T, M' = antisym(-h^-1 x h).
std::pair<MatR, MatR> extract_moments(const MatR& x, const CartanElement& h);

enum class HamiltonianForm { Rational, SplitTrig, CompactTrig };

/// k = 2 closed forms; general k via tr(x^k)/k through reconstruction.
double scm_hamiltonian(const ChevalleyPoint& pt, int k,
                       HamiltonianForm form = HamiltonianForm::Rational);

/// Compact-form quadratic Hamiltonian of the Remark, on real (p, q, mu, mu'):
/// -p^2/2 - sum (mu^2 + 2 cos(q_a/2) mu mu' + mu'^2) / (4 sin^2(q_a/2)).
double compact_trig_hamiltonian(const VecR& p, const VecR& q, const VecR& mu,
                                const VecR& mup);

// --- chart / bracket table ---------------------------------------------------

/// Coordinates: [p (n), h (n), mu (R), mu' (R)], R = n(n-1)/2 in root order.
/// Constraints: sum p, prod h - 1, tr(M^2) - c2, tr(M'^2) - c2'.
struct ChevalleyChart {
  Chart chart;
  BracketTable table;
  int n = 0;
  double sign_M = -1.0;    // Lie-Poisson block orientations (calibrated)
  double sign_Mp = -1.0;

  int p_index(int i) const { return i; }
  int h_index(int i) const { return n + i; }
  int mu_index(int a) const { return 2 * n + a; }
  int mup_index(int a) const { return 2 * n + n * (n - 1) / 2 + a; }
};

ChevalleyChart make_chevalley_chart(int n, double orbit_tr_M2, double orbit_tr_Mp2,
                                    double sign_M = -1.0, double sign_Mp = -1.0);

VecC pack_chevalley(const ChevalleyChart& cc, const ChevalleyPoint& pt);
ChevalleyPoint unpack_chevalley(const ChevalleyChart& cc, const VecC& z,
                                const ChevalleyPoint& reference);

/// Lax matrix evaluated from chart coordinates (complex-extended).
MatC chevalley_lax(const ChevalleyChart& cc, const VecC& z);

/// tr(x^k)/k as a chart function with analytic gradient (k=2 is H_sCM).
ScalarFunction chevalley_hamiltonian_fn(const ChevalleyChart& cc, int k);

/// Conserved trace words for the superintegrability audit:
/// tr x^2, tr x^3, words in (x, x^T) and in (xt, xt^T), xt = h^-1 x h.
std::vector<ScalarFunction> chevalley_conserved_family(const ChevalleyChart& cc);

/// N_K(H) normal form: h sorted descending (permutation applied throughout),
/// then the sign gauge eps in Z_K(H) fixed by making the first significant
/// entry of each mu row positive, parity resolved inside SO(n).
VecC chevalley_normal_form(const ChevalleyChart& cc, const VecC& z);

}  // namespace scm

#endif
