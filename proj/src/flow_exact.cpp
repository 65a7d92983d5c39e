#include "scm/flow_exact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace scm {

namespace {
template <class Mat>
Mat invariant_gradient(const Mat& x, int k) {
  const int n = static_cast<int>(x.rows());
  Mat w = Mat::Identity(n, n);
  for (int q = 0; q + 1 < k; ++q) w = w * x;
  w -= (w.trace() / typename Mat::Scalar(n)) * Mat::Identity(n, n);
  return w;
}
}  // namespace

std::pair<MatR, MatR> free_flow(const MatR& x, const MatR& g, double t, int k) {
  require_finite(x, "free_flow");
  require_finite(g, "free_flow");
  return {x, exponential(invariant_gradient(x, k), t) * g};
}

std::pair<MatC, MatC> free_flow(const MatC& x, const MatC& g, double t, int k) {
  require_finite(x, "free_flow");
  require_finite(g, "free_flow");
  return {x, exponential(invariant_gradient(x, k), t) * g};
}

FactorizedFrame kak_split(const MatR& g, double gap_tol, double time_stamp) {
  const int n = static_cast<int>(g.rows());
  Eigen::JacobiSVD<MatR> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const VecR s = svd.singularValues();
  for (int i = 0; i + 1 < n; ++i) {
    if (s[i + 1] <= 0.0 || s[i] / s[i + 1] - 1.0 <= gap_tol) {
      std::ostringstream os;
      os << "kak_split: singular values " << i << "," << i + 1
         << " collide (chamber wall) at t=" << time_stamp;
      throw ChamberWallError(os.str(), time_stamp);
    }
  }
  MatR U = svd.matrixU();
  MatR V = svd.matrixV();
  if (U.determinant() < 0) {
    U.col(n - 1) *= -1.0;
    V.col(n - 1) *= -1.0;
  }
  // det g = 1 forces det U = det V at this point
  for (int j = 0; j < n - 1; ++j) {
    int i0 = 0;
    while (i0 < n - 1 && std::abs(U(i0, j)) <= 1e-10) ++i0;
    if (U(i0, j) < 0) {
      U.col(j) *= -1.0;
      V.col(j) *= -1.0;
    }
  }
  if (U.determinant() < 0) {
    U.col(n - 1) *= -1.0;
    V.col(n - 1) *= -1.0;
  }
  FactorizedFrame fr;
  fr.k1 = U;
  fr.k2 = V.transpose();
  fr.a = s;
  const double re = (fr.k1 * fr.a.asDiagonal() * fr.k2 - g).norm();
  if (re > 1e-11 * std::max(1.0, g.norm()))
    throw DecompositionError("kak_split: reassembly residual too large");
  return fr;
}

EigenFrame eig_split(const MatC& a, double gap_tol, double time_stamp) {
  const int n = static_cast<int>(a.rows());
  Eigen::ComplexEigenSolver<MatC> es(a, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success)
    throw DecompositionError("eig_split: eigensolver failed");
  VecC w = es.eigenvalues();
  MatC v = es.eigenvectors();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    if (w[i].real() != w[j].real()) return w[i].real() > w[j].real();
    return w[i].imag() > w[j].imag();
  });
  EigenFrame fr;
  fr.h.resize(n);
  fr.u.resize(n, n);
  for (int j = 0; j < n; ++j) {
    fr.h[j] = w[order[j]];
    fr.u.col(j) = v.col(order[j]);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(fr.h[i] - fr.h[j]) <=
          gap_tol * std::max(1.0, std::abs(fr.h[i]))) {
        std::ostringstream os;
        os << "eig_split: eigenvalues " << i << "," << j
           << " collide (chamber wall) at t=" << time_stamp;
        throw ChamberWallError(os.str(), time_stamp);
      }
  // phase gauge: first significant component of each column real positive
  for (int j = 0; j < n; ++j) {
    fr.u.col(j).normalize();
    int i0 = 0;
    while (i0 < n - 1 && std::abs(fr.u(i0, j)) <= 1e-10) ++i0;
    const Cplx ph = fr.u(i0, j) / std::abs(fr.u(i0, j));
    fr.u.col(j) /= ph;
  }
  return fr;
}

std::vector<ChevalleyPoint> chevalley_trajectory(const ChevalleyPoint& pt0,
                                                 const std::vector<double>& times,
                                                 int k) {
  pt0.validate();
  const MatR x = reconstruct_x(pt0);
  const MatR g0 = pt0.h.real_matrix();
  std::vector<ChevalleyPoint> out;
  out.reserve(times.size());
  for (double t : times) {
    const auto [xc, gt] = free_flow(x, g0, t, k);
    (void)xc;
    const FactorizedFrame fr = kak_split(gt, pt0.h.regularity_threshold, t);
    const MatR xp = fr.k1.transpose() * x * fr.k1;
    ChevalleyPoint pt;
    pt.p = xp.diagonal();
    pt.h = cartan_from_real(fr.a);
    pt.h.regularity_threshold = pt0.h.regularity_threshold;
    const auto [M, Mp] = extract_moments(xp, pt.h);
    pt.M = spin_orbit_point(M, pt0.M.invariants);
    pt.Mp = spin_orbit_point(Mp, pt0.Mp.invariants);
    out.push_back(std::move(pt));
  }
  return out;
}

std::vector<DoublePoint> double_trajectory(const DoublePoint& pt0,
                                           const std::vector<double>& times,
                                           DoubleFlow which, int k) {
  pt0.validate();
  const int n = pt0.n();
  const auto [x, y] = reconstruct_xy(pt0);
  const MatC a0 = pt0.h.matrix();
  std::vector<DoublePoint> out;
  out.reserve(times.size());
  for (double t : times) {
    MatC at;
    if (which == DoubleFlow::HamiltonianX) {
      at = exponential(invariant_gradient(x, k), t) * a0;
    } else {
      at = a0 * exponential(invariant_gradient(y, k), -t);
    }
    const EigenFrame fr = eig_split(at, pt0.h.regularity_threshold, t);
    const MatC ui = fr.u.inverse();
    const MatC xp = ui * x * fr.u;
    const MatC yp = ui * y * fr.u;
    const MatC mu = xp + yp;
    MatC mup(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        mup(i, j) = -(xp(i, j) + (fr.h[i] / fr.h[j]) * yp(i, j));
    DoublePoint pt;
    pt.h = cartan_from_complex(fr.h);
    pt.h.regularity_threshold = pt0.h.regularity_threshold;
    pt.p.resize(n);
    for (int i = 0; i < n; ++i) pt.p[i] = xp(i, i) - 0.5 * mu(i, i);
    if (pt0.rank_one) {
      pt.rank_one = true;
      pt.spin.N = pt0.spin.N;
      pt.spin.Np = pt0.spin.Np;
      const int m = n;
      VecC nv(m), npv(m);
      for (int i = 0; i < m; ++i) {
        nv[i] = mu(i, i) + pt0.spin.N / double(m);
        npv[i] = mup(i, i) + pt0.spin.Np / double(m);
      }
      pt.spin.H.resize(m);
      for (int i = 0; i < m; ++i) pt.spin.H[i] = nv[i] - npv[i];
      // C* gauge split of A_ij = mu_ij mu'_ji (diag: n_i n'_i)
      MatC A(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          A(i, j) = (i == j) ? nv[i] * npv[i] : mu(i, j) * mup(j, i);
      int r = 0;
      for (int i = 1; i < m; ++i)
        if (std::abs(A(i, i)) > std::abs(A(r, r))) r = i;
      Cplx ar = std::sqrt(A(r, r));
      if (ar.real() < 0 || (ar.real() == 0 && ar.imag() < 0)) ar = -ar;
      pt.spin.a.resize(m);
      pt.spin.b.resize(m);
      for (int i = 0; i < m; ++i) {
        pt.spin.a[i] = (i == r) ? ar : A(i, r) / ar;
        pt.spin.b[i] = (i == r) ? ar : A(r, i) / ar;
      }
    } else {
      pt.rank_one = false;
      pt.mu = mu;
      pt.mup = mup;
    }
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace scm
