#include "scm/model_chevalley.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace scm {

void ChevalleyPoint::validate(double tol) const {
  if (std::abs(p.sum()) > tol) throw ConstraintError("ChevalleyPoint: sum p != 0", -1, std::abs(p.sum()));
  h.validate();
  if (!h.real_positive) throw NumericInputError("ChevalleyPoint: h must be real positive");
  if (!h.regular()) throw SingularDenominatorError("ChevalleyPoint: h not regular", 0, 0);
  if (M.membership_residual() > tol)
    throw ConstraintError("ChevalleyPoint: M off its orbit", -1, M.membership_residual());
  if (Mp.membership_residual() > tol)
    throw ConstraintError("ChevalleyPoint: M' off its orbit", -1, Mp.membership_residual());
}

namespace {
void require_regular(const CartanElement& h) {
  const int n = h.n();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Cplx r = h.diag[i] / h.diag[j];
      if (std::abs(r - 1.0 / r) <= h.regularity_threshold) {
        std::ostringstream os;
        os << "singular denominator h_a - h_-a at root (" << i + 1 << "," << j + 1 << ")";
        throw SingularDenominatorError(os.str(), i + 1, j + 1);
      }
    }
}
}  // namespace

MatR reconstruct_x(const ChevalleyPoint& pt) {
  const int n = pt.n();
  require_regular(pt.h);
  MatR x = MatR::Zero(n, n);
  for (int i = 0; i < n; ++i) x(i, i) = pt.p[i];
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double hi = pt.h.diag[i].real(), hj = pt.h.diag[j].real();
      const double ha = hi / hj, hma = hj / hi;
      const double d = ha - hma;
      const double mu = pt.M.M(i, j), mup = pt.Mp.M(i, j);
      x(i, j) = (ha * mu + mup) / d;
      x(j, i) = (hma * mu + mup) / d;
    }
  return x;
}

std::pair<MatR, MatR> extract_moments(const MatR& x, const CartanElement& h) {
  const int n = static_cast<int>(x.rows());
  const MatR M = x - x.transpose();
  MatR xr(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      xr(i, j) = x(i, j) * (h.diag[j].real() / h.diag[i].real());
  const MatR Mp = -(xr - xr.transpose());
  return {M, Mp};
}

double scm_hamiltonian(const ChevalleyPoint& pt, int k, HamiltonianForm form) {
  if (k < 2) throw Error("scm_hamiltonian: k must be >= 2");
  const int n = pt.n();
  if (form == HamiltonianForm::Rational) {
    if (k == 2) {
      require_regular(pt.h);
      double tot = 0.5 * pt.p.squaredNorm();
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const double hi = pt.h.diag[i].real(), hj = pt.h.diag[j].real();
          const double ha = hi / hj, hma = hj / hi;
          const double d = ha - hma;
          const double mu = pt.M.M(i, j), mup = pt.Mp.M(i, j);
          tot += (ha * mu + mup) * (hma * mu + mup) / (d * d);
        }
      return tot;
    }
    const MatR x = reconstruct_x(pt);
    MatR xp = MatR::Identity(n, n);
    for (int q = 0; q < k; ++q) xp = xp * x;
    return xp.trace() / double(k);
  }
  if (k != 2) throw Error("scm_hamiltonian: trigonometric forms defined for k = 2 only");
  require_regular(pt.h);
  if (form == HamiltonianForm::SplitTrig) {
    double tot = 0.5 * pt.p.squaredNorm();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double qa = pt.h.q(i) - pt.h.q(j);
        const double mu = pt.M.M(i, j), mup = pt.Mp.M(i, j);
        const double sh = std::sinh(0.5 * qa), ch = std::cosh(0.5 * qa);
        tot += (mu * mu + 2.0 * ch * mu * mup + mup * mup) / (4.0 * sh * sh);
      }
    return tot;
  }
  // CompactTrig: interpret q through h_i = exp(q_i/2)
  VecR q(n), mu(n * (n - 1) / 2), mup(n * (n - 1) / 2);
  for (int i = 0; i < n; ++i) q[i] = pt.h.q(i);
  int a = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++a) {
      mu[a] = pt.M.M(i, j);
      mup[a] = pt.Mp.M(i, j);
    }
  return compact_trig_hamiltonian(pt.p, q, mu, mup);
}

double compact_trig_hamiltonian(const VecR& p, const VecR& q, const VecR& mu,
                                const VecR& mup) {
  const int n = static_cast<int>(p.size());
  double tot = -0.5 * p.squaredNorm();
  int a = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++a) {
      const double qa = q[i] - q[j];
      const double s = std::sin(0.5 * qa), c = std::cos(0.5 * qa);
      tot -= (mu[a] * mu[a] + 2.0 * c * mu[a] * mup[a] + mup[a] * mup[a]) / (4.0 * s * s);
    }
  return tot;
}

// --- chart -------------------------------------------------------------------

ChevalleyChart make_chevalley_chart(int n, double orbit_tr_M2, double orbit_tr_Mp2,
                                    double sign_M, double sign_Mp) {
  if (n < 2) throw InvalidDimensionError("make_chevalley_chart: need n >= 2");
  const int R = n * (n - 1) / 2;
  ChevalleyChart cc;
  cc.n = n;
  cc.sign_M = sign_M;
  cc.sign_Mp = sign_Mp;

  Chart& ch = cc.chart;
  ch.name = "chevalley(n=" + std::to_string(n) + ")";
  const auto roots = positive_roots(n);
  for (int i = 0; i < n; ++i) {
    ch.coord_names.push_back("p" + std::to_string(i + 1));
    ch.kinds.push_back(CoordKind::Additive);
  }
  for (int i = 0; i < n; ++i) {
    ch.coord_names.push_back("h" + std::to_string(i + 1));
    ch.kinds.push_back(CoordKind::Multiplicative);
  }
  for (const auto& r : roots) {
    ch.coord_names.push_back("mu" + std::to_string(r.i) + std::to_string(r.j));
    ch.kinds.push_back(CoordKind::Additive);
  }
  for (const auto& r : roots) {
    ch.coord_names.push_back("mu'" + std::to_string(r.i) + std::to_string(r.j));
    ch.kinds.push_back(CoordKind::Additive);
  }

  // constraints: sum p, prod h - 1, tr(M^2) - c, tr(M'^2) - c'
  {
    ScalarFunction c;
    c.name = "sum_p";
    c.eval = [n](const VecC& z) {
      Cplx s(0);
      for (int i = 0; i < n; ++i) s += z[i];
      return s;
    };
    c.grad = [n](const VecC& z) {
      VecC g = VecC::Zero(z.size());
      for (int i = 0; i < n; ++i) g[i] = Cplx(1);
      return g;
    };
    ch.constraints.push_back(c);
  }
  {
    ScalarFunction c;
    c.name = "prod_h-1";
    c.eval = [n](const VecC& z) {
      Cplx s(1);
      for (int i = 0; i < n; ++i) s *= z[n + i];
      return s - Cplx(1);
    };
    c.grad = [n](const VecC& z) {
      VecC g = VecC::Zero(z.size());
      Cplx s(1);
      for (int i = 0; i < n; ++i) s *= z[n + i];
      for (int i = 0; i < n; ++i) g[n + i] = s / z[n + i];
      return g;
    };
    ch.constraints.push_back(c);
  }
  auto orbit_constraint = [n, R](int offset, double target, const std::string& nm) {
    ScalarFunction c;
    c.name = nm;
    // tr(M^2) = -2 sum_a m_a^2 for antisymmetric M
    c.eval = [offset, R, target](const VecC& z) {
      Cplx s(0);
      for (int a = 0; a < R; ++a) s += z[offset + a] * z[offset + a];
      return -2.0 * s - target;
    };
    c.grad = [offset, R](const VecC& z) {
      VecC g = VecC::Zero(z.size());
      for (int a = 0; a < R; ++a) g[offset + a] = -4.0 * z[offset + a];
      return g;
    };
    return c;
  };
  ch.constraints.push_back(orbit_constraint(2 * n, orbit_tr_M2, "trM2-c"));
  ch.constraints.push_back(orbit_constraint(2 * n + R, orbit_tr_Mp2, "trM'2-c'"));
  ch.validate();

  std::vector<int> pc(n), hc(n), mc(R), mpc(R);
  std::iota(pc.begin(), pc.end(), 0);
  std::iota(hc.begin(), hc.end(), n);
  std::iota(mc.begin(), mc.end(), 2 * n);
  std::iota(mpc.begin(), mpc.end(), 2 * n + R);
  cc.table.dimension = 2 * n + 2 * R;
  cc.table.blocks.push_back(canonical_block(pc, hc));
  cc.table.blocks.push_back(lie_poisson_so_block(n, mc, sign_M));
  cc.table.blocks.push_back(lie_poisson_so_block(n, mpc, sign_Mp));
  cc.table.validate();
  return cc;
}

VecC pack_chevalley(const ChevalleyChart& cc, const ChevalleyPoint& pt) {
  const int n = cc.n, R = n * (n - 1) / 2;
  VecC z(2 * n + 2 * R);
  for (int i = 0; i < n; ++i) z[i] = pt.p[i];
  for (int i = 0; i < n; ++i) z[n + i] = pt.h.diag[i];
  int a = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++a) {
      z[2 * n + a] = pt.M.M(i, j);
      z[2 * n + R + a] = pt.Mp.M(i, j);
    }
  return z;
}

ChevalleyPoint unpack_chevalley(const ChevalleyChart& cc, const VecC& z,
                                const ChevalleyPoint& reference) {
  const int n = cc.n, R = n * (n - 1) / 2;
  ChevalleyPoint pt = reference;
  pt.p.resize(n);
  for (int i = 0; i < n; ++i) pt.p[i] = z[i].real();
  VecR hd(n);
  for (int i = 0; i < n; ++i) hd[i] = z[n + i].real();
  pt.h = cartan_from_real(hd);
  pt.h.regularity_threshold = reference.h.regularity_threshold;
  MatR M = MatR::Zero(n, n), Mp = MatR::Zero(n, n);
  int a = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++a) {
      M(i, j) = z[2 * n + a].real();
      M(j, i) = -M(i, j);
      Mp(i, j) = z[2 * n + R + a].real();
      Mp(j, i) = -Mp(i, j);
    }
  pt.M = spin_orbit_point(M, reference.M.invariants);
  pt.Mp = spin_orbit_point(Mp, reference.Mp.invariants);
  return pt;
}

MatC chevalley_lax(const ChevalleyChart& cc, const VecC& z) {
  const int n = cc.n, R = n * (n - 1) / 2;
  MatC x = MatC::Zero(n, n);
  for (int i = 0; i < n; ++i) x(i, i) = z[i];
  int a = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++a) {
      const Cplx ha = z[n + i] / z[n + j];
      const Cplx hma = z[n + j] / z[n + i];
      const Cplx d = ha - hma;
      x(i, j) = (ha * z[2 * n + a] + z[2 * n + R + a]) / d;
      x(j, i) = (hma * z[2 * n + a] + z[2 * n + R + a]) / d;
    }
  return x;
}

ScalarFunction chevalley_hamiltonian_fn(const ChevalleyChart& cc, int k) {
  if (k < 2) throw Error("chevalley_hamiltonian_fn: k >= 2");
  const int n = cc.n, R = n * (n - 1) / 2;
  ScalarFunction f;
  f.name = "tr(x^" + std::to_string(k) + ")/" + std::to_string(k);
  f.eval = [cc, k, n](const VecC& z) {
    const MatC x = chevalley_lax(cc, z);
    MatC xp = MatC::Identity(n, n);
    for (int q = 0; q < k; ++q) xp = xp * x;
    return xp.trace() / double(k);
  };
  f.grad = [cc, k, n, R](const VecC& z) {
    const MatC x = chevalley_lax(cc, z);
    MatC w = MatC::Identity(n, n);  // x^(k-1)
    for (int q = 0; q + 1 < k; ++q) w = w * x;
    VecC g = VecC::Zero(z.size());
    for (int i = 0; i < n; ++i) g[i] = w(i, i);  // d/dp_i
    int a = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++a) {
        const Cplx hi = z[n + i], hj = z[n + j];
        const Cplx u = hi / hj, v = hj / hi;
        const Cplx d = u - v;
        const Cplx mu = z[2 * n + a], mup = z[2 * n + R + a];
        // d/dmu, d/dmu'
        g[2 * n + a] += w(j, i) * (u / d) + w(i, j) * (v / d);
        g[2 * n + R + a] += (w(j, i) + w(i, j)) / d;
        // d/dh_l, l in {i, j}: du = u*e, dv = -v*e with e = d(log hi - log hj)
        for (int which = 0; which < 2; ++which) {
          const int l = (which == 0) ? i : j;
          const Cplx e = (which == 0) ? Cplx(1) / hi : Cplx(-1) / hj;
          const Cplx du = u * e, dv = -v * e, dd = du - dv;
          const Cplx dxij = (du * mu * d - (u * mu + mup) * dd) / (d * d);
          const Cplx dxji = (dv * mu * d - (v * mu + mup) * dd) / (d * d);
          g[n + l] += w(j, i) * dxij + w(i, j) * dxji;
        }
      }
    return g;
  };
  return f;
}

std::vector<ScalarFunction> chevalley_conserved_family(const ChevalleyChart& cc) {
  std::vector<ScalarFunction> out;
  out.push_back(chevalley_hamiltonian_fn(cc, 2));
  out.push_back(chevalley_hamiltonian_fn(cc, 3));
  const int n = cc.n;
  auto word = [cc, n](const std::string& name, bool twisted,
                      const std::string& letters) {
    ScalarFunction f;
    f.name = name;
    f.eval = [cc, n, twisted, letters](const VecC& z) {
      MatC x = chevalley_lax(cc, z);
      if (twisted) {
        MatC xr(n, n);  // h^-1 x h
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) xr(i, j) = x(i, j) * (z[n + j] / z[n + i]);
        x = xr;
      }
      MatC prod = MatC::Identity(n, n);
      for (char c : letters) prod = prod * (c == 'x' ? x : MatC(x.transpose()));
      return prod.trace();
    };
    return f;
  };
  out.push_back(word("tr(x xT)", false, "xt"));
  out.push_back(word("tr(x^2 xT)", false, "xxt"));
  out.push_back(word("tr(x^2 xT^2)", false, "xxtt"));
  out.push_back(word("tr(xt xtT)", true, "xt"));
  out.push_back(word("tr(xt^2 xtT)", true, "xxt"));
  out.push_back(word("tr(xt^2 xtT^2)", true, "xxtt"));
  return out;
}

VecC chevalley_normal_form(const ChevalleyChart& cc, const VecC& z) {
  const int n = cc.n, R = n * (n - 1) / 2;
  // unpack into matrices for permutation/sign action
  VecR p(n), h(n);
  for (int i = 0; i < n; ++i) {
    p[i] = z[i].real();
    h[i] = z[n + i].real();
  }
  MatR M = MatR::Zero(n, n), Mp = MatR::Zero(n, n);
  int a = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++a) {
      M(i, j) = z[2 * n + a].real();
      M(j, i) = -M(i, j);
      Mp(i, j) = z[2 * n + R + a].real();
      Mp(j, i) = -Mp(i, j);
    }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return h[i] > h[j]; });
  VecR ps(n), hs(n);
  MatR Ms(n, n), Mps(n, n);
  for (int i = 0; i < n; ++i) {
    ps[i] = p[order[i]];
    hs[i] = h[order[i]];
    for (int j = 0; j < n; ++j) {
      Ms(i, j) = M(order[i], order[j]);
      Mps(i, j) = Mp(order[i], order[j]);
    }
  }
  // sign gauge: eps_1 = +1; eps_j tied to the first significant reference row
  const double tol = 1e-10;
  std::vector<double> eps(n, 1.0);
  std::vector<int> fixed_by(n, -1);
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      const double ref = std::abs(Ms(i, j)) > tol ? Ms(i, j)
                        : (std::abs(Mps(i, j)) > tol ? Mps(i, j) : 0.0);
      if (ref != 0.0) {
        // want eps_i * eps_j * ref > 0
        eps[j] = eps[i] * (ref > 0 ? 1.0 : -1.0);
        fixed_by[j] = i;
        break;
      }
    }
  }
  // parity inside SO(n): for even n the global flip is invisible, so an odd
  // pattern must be repaired at the last gauge-fixed column
  if (n % 2 == 0) {
    double det = 1.0;
    for (int i = 0; i < n; ++i) det *= eps[i];
    if (det < 0) {
      for (int j = n - 1; j >= 0; --j)
        if (fixed_by[j] >= 0) {
          eps[j] = -eps[j];
          break;
        }
    }
  }
  VecC out(z.size());
  for (int i = 0; i < n; ++i) {
    out[i] = ps[i];
    out[n + i] = hs[i];
  }
  a = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++a) {
      out[2 * n + a] = eps[i] * eps[j] * Ms(i, j);
      out[2 * n + R + a] = eps[i] * eps[j] * Mps(i, j);
    }
  return out;
}

}  // namespace scm
