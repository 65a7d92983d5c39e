#ifndef SCM_ORBITS_HPP
#define SCM_ORBITS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "scm/lie_core.hpp"

namespace scm {

/// Point of an SO(n) coadjoint orbit: antisymmetric matrix plus the frozen
/// orbit invariants tr(M^2), tr(M^4), ... recorded from its normal form.
struct SpinOrbitPoint {
  MatR M;                          // antisymmetric; entry (i,j), i<j, is mu_alpha
  std::vector<double> invariants;  // tr(M^2k), k = 1, 2

  int n() const { return static_cast<int>(M.rows()); }
  double entry(const Root& r) const { return M(r.i - 1, r.j - 1); }
  /// Invariant-comparison membership test.
  double membership_residual() const;
};

SpinOrbitPoint spin_orbit_point(const MatR& M_antisym,
                                const std::vector<double>& invariants);

/// Frozen invariants of the antisymmetric normal form with +-i*lambda blocks.
std::vector<double> so_orbit_invariants(int n, const std::vector<double>& lambdas);

/// Sample k Lambda k^T for a seeded random k in SO(n).
SpinOrbitPoint sample_so_orbit(int n, const std::vector<double>& lambdas,
                               std::uint64_t seed);

/// Seeded special-orthogonal matrix (QR of a Gaussian sample, det-fixed).
MatR sample_special_orthogonal(int n, std::uint64_t seed);

/// (phi, psi) realization of a rank-one SL_n orbit; level N = (phi, psi).
struct RankOneVectors {
  VecC phi, psi;
  Cplx level() const { return (phi.array() * psi.array()).sum(); }  // bilinear (phi,psi)
  int n() const { return static_cast<int>(phi.size()); }
};

/// mu_ij = phi_i psi_j - delta_ij (phi,psi)/n; traceless, rank-one shifted.
MatC rank_one_moment(const RankOneVectors& v);

/// Reduced rank-one spin variables (a_i, b_i, H_i) with their orbit levels.
struct ReducedSpinPoint {
  VecC a, b, H;
  Cplx N, Np;

  int n() const { return static_cast<int>(a.size()); }
  Cplx level_sum() const { return (N + Np) / double(n()); }  // n_i + n'_i
  /// max residual over the defining relations (constr), sum H = N - N',
  /// and n_i n'_i = a_i b_i.
  double invariant_residual() const;
  void validate(double tol = 1e-9) const;
};

/// a_i = phi_i psi'_i, b_i = phi'_i psi_i, H_i = phi_i psi_i - phi'_i psi'_i.
/// Requires the moment constraint phi_i psi_i + phi'_i psi'_i = (N+N')/n.
ReducedSpinPoint reduce_rank_one_pair(const RankOneVectors& v,
                                      const RankOneVectors& vp,
                                      double tol = 1e-9);

/// n_i = (H_i + (N+N')/n)/2 and n'_i = ((N+N')/n - H_i)/2.
std::pair<VecC, VecC> resolve_spin_occupations(const VecC& H, Cplx N, Cplx Np);

}  // namespace scm

#endif
