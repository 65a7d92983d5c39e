#include "scm/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scm/rng.hpp"

namespace scm {

double SpinOrbitPoint::membership_residual() const {
  const MatR M2 = M * M;
  double r = std::abs(M2.trace() - invariants.at(0));
  if (invariants.size() > 1) r = std::max(r, std::abs((M2 * M2).trace() - invariants[1]));
  return r;
}

SpinOrbitPoint spin_orbit_point(const MatR& M_antisym,
                                const std::vector<double>& invariants) {
  SpinOrbitPoint pt;
  // store exactly antisymmetric: mirror the strict upper triangle
  const int n = static_cast<int>(M_antisym.rows());
  pt.M = MatR::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      pt.M(i, j) = M_antisym(i, j);
      pt.M(j, i) = -M_antisym(i, j);
    }
  pt.invariants = invariants;
  return pt;
}

namespace {
MatR antisym_normal_form(int n, const std::vector<double>& lambdas) {
  if (static_cast<int>(lambdas.size()) > n / 2)
    throw InvalidOrbitError("so orbit spectrum: too many 2x2 blocks for dimension");
  MatR L = MatR::Zero(n, n);
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    const int i = static_cast<int>(2 * k);
    L(i, i + 1) = lambdas[k];
    L(i + 1, i) = -lambdas[k];
  }
  return L;
}
}  // namespace

std::vector<double> so_orbit_invariants(int n, const std::vector<double>& lambdas) {
  const MatR L = antisym_normal_form(n, lambdas);
  const MatR L2 = L * L;
  return {L2.trace(), (L2 * L2).trace()};
}

MatR sample_special_orthogonal(int n, std::uint64_t seed) {
  Rng rng = make_rng(seed, /*stream=*/0x5e0);
  MatR A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = rng.normal();
  Eigen::HouseholderQR<MatR> qr(A);
  MatR Q = qr.householderQ();
  MatR Rm = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix the QR sign gauge so the map seed -> Q is well-defined
  for (int j = 0; j < n; ++j)
    if (Rm(j, j) < 0) Q.col(j) *= -1.0;
  if (Q.determinant() < 0) Q.col(0) *= -1.0;
  return Q;
}

SpinOrbitPoint sample_so_orbit(int n, const std::vector<double>& lambdas,
                               std::uint64_t seed) {
  if (n < 2) throw InvalidDimensionError("sample_so_orbit: need n >= 2");
  const MatR L = antisym_normal_form(n, lambdas);
  const MatR k = sample_special_orthogonal(n, seed);
  return spin_orbit_point(k * L * k.transpose(), so_orbit_invariants(n, lambdas));
}

MatC rank_one_moment(const RankOneVectors& v) {
  const int n = v.n();
  Cplx N(0);
  for (int i = 0; i < n; ++i) N += v.phi[i] * v.psi[i];
  MatC mu = v.phi * v.psi.transpose();
  mu -= (N / double(n)) * MatC::Identity(n, n);
  return mu;
}

double ReducedSpinPoint::invariant_residual() const {
  const int m = n();
  const Cplx s = level_sum();
  double r = 0.0;
  Cplx hsum(0);
  for (int i = 0; i < m; ++i) {
    r = std::max(r, std::abs(a[i] * b[i] + H[i] * H[i] / 4.0 - s * s / 4.0));
    hsum += H[i];
  }
  r = std::max(r, std::abs(hsum - (N - Np)));
  auto [nv, npv] = resolve_spin_occupations(H, N, Np);
  for (int i = 0; i < m; ++i)
    r = std::max(r, std::abs(nv[i] * npv[i] - a[i] * b[i]));
  return r;
}

void ReducedSpinPoint::validate(double tol) const {
  const double r = invariant_residual();
  if (r > tol) {
    std::ostringstream os;
    os << "ReducedSpinPoint: invariant residual " << r << " exceeds " << tol;
    throw ConstraintError(os.str(), -1, r);
  }
}

ReducedSpinPoint reduce_rank_one_pair(const RankOneVectors& v,
                                      const RankOneVectors& vp, double tol) {
  const int n = v.n();
  if (vp.n() != n) throw InvalidDimensionError("reduce_rank_one_pair: size mismatch");
  ReducedSpinPoint out;
  out.N = v.level();
  out.Np = vp.level();
  const Cplx target = (out.N + out.Np) / double(n);
  int worst = -1;
  double worst_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double res = std::abs(v.phi[i] * v.psi[i] + vp.phi[i] * vp.psi[i] - target);
    if (res > worst_res) {
      worst_res = res;
      worst = i;
    }
  }
  if (worst_res > tol) {
    std::ostringstream os;
    os << "moment constraint phi_i psi_i + phi'_i psi'_i = (N+N')/n violated at i="
       << worst + 1 << " (residual " << worst_res << ")";
    throw ConstraintError(os.str(), worst + 1, worst_res);
  }
  out.a.resize(n);
  out.b.resize(n);
  out.H.resize(n);
  for (int i = 0; i < n; ++i) {
    out.a[i] = v.phi[i] * vp.psi[i];
    out.b[i] = vp.phi[i] * v.psi[i];
    out.H[i] = v.phi[i] * v.psi[i] - vp.phi[i] * vp.psi[i];
  }
  return out;
}

std::pair<VecC, VecC> resolve_spin_occupations(const VecC& H, Cplx N, Cplx Np) {
  const int n = static_cast<int>(H.size());
  const Cplx s = (N + Np) / double(n);
  VecC nv(n), npv(n);
  for (int i = 0; i < n; ++i) {
    nv[i] = 0.5 * (H[i] + s);
    npv[i] = 0.5 * (s - H[i]);
  }
  return {nv, npv};
}

}  // namespace scm
