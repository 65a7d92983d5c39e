#include "scm/model_double.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace scm {

namespace {
void require_regular_double(const CartanElement& h) {
  const int n = h.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (std::abs(h.diag[i] / h.diag[j] - Cplx(1)) <= h.regularity_threshold) {
        std::ostringstream os;
        os << "singular denominator h_a - 1 at root (" << i + 1 << "," << j + 1 << ")";
        throw SingularDenominatorError(os.str(), i + 1, j + 1);
      }
    }
}

MatC matrix_power(const MatC& m, int k) {
  MatC p = MatC::Identity(m.rows(), m.cols());
  for (int q = 0; q < k; ++q) p = p * m;
  return p;
}
}  // namespace

void DoublePoint::validate(double tol) const {
  if (std::abs(p.sum()) > tol)
    throw ConstraintError("DoublePoint: sum p != 0", -1, std::abs(p.sum()));
  h.validate();
  require_regular_double(h);
  if (rank_one) {
    spin.validate(tol);
  } else {
    const int m = n();
    if (std::abs(mu.trace()) > tol || std::abs(mup.trace()) > tol)
      throw ConstraintError("DoublePoint: spin matrices must be traceless", -1, 0.0);
    for (int i = 0; i < m; ++i)
      if (std::abs(mu(i, i) + mup(i, i)) > tol)
        throw ConstraintError("DoublePoint: mu0 + mu0' != 0", i + 1,
                              std::abs(mu(i, i) + mup(i, i)));
  }
}

std::pair<MatC, MatC> rank_one_matrices(const ReducedSpinPoint& spin) {
  const int n = spin.n();
  auto [nv, npv] = resolve_spin_occupations(spin.H, spin.N, spin.Np);
  for (int i = 0; i < n; ++i)
    if (std::abs(nv[i]) < 1e-12)
      throw ConstraintError("rank_one_matrices: occupation n_i too close to 0", i + 1,
                            std::abs(nv[i]));
  RankOneVectors v, vp;
  v.phi = VecC::Ones(n);
  v.psi = nv;
  vp.psi = spin.a;
  vp.phi.resize(n);
  for (int i = 0; i < n; ++i) vp.phi[i] = spin.b[i] / nv[i];
  return {rank_one_moment(v), rank_one_moment(vp)};
}

std::pair<MatC, MatC> reconstruct_xy(const DoublePoint& pt) {
  const int n = pt.n();
  require_regular_double(pt.h);
  MatC mu, mup;
  if (pt.rank_one) {
    auto m = rank_one_matrices(pt.spin);
    mu = m.first;
    mup = m.second;
  } else {
    mu = pt.mu;
    mup = pt.mup;
  }
  MatC x = MatC::Zero(n, n), y = MatC::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    x(i, i) = 0.5 * mu(i, i) + pt.p[i];
    y(i, i) = 0.5 * mu(i, i) - pt.p[i];
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Cplx ha = pt.h.diag[i] / pt.h.diag[j];
      x(i, j) = (mu(i, j) * ha + mup(i, j)) / (ha - Cplx(1));
      y(i, j) = (mu(i, j) + mup(i, j)) / (Cplx(1) - ha);
    }
  return {x, y};
}

std::pair<Cplx, Cplx> double_hamiltonians(const DoublePoint& pt, int k) {
  if (k < 2) throw Error("double_hamiltonians: k must be >= 2");
  const int n = pt.n();
  if (k == 2) {
    require_regular_double(pt.h);
    MatC mu, mup;
    if (pt.rank_one) {
      auto m = rank_one_matrices(pt.spin);
      mu = m.first;
      mup = m.second;
    } else {
      mu = pt.mu;
      mup = pt.mup;
    }
    Cplx hx(0), hy(0);
    for (int i = 0; i < n; ++i) {
      const Cplx x0 = 0.5 * mu(i, i) + pt.p[i];
      const Cplx y0 = 0.5 * mu(i, i) - pt.p[i];
      hx += 0.5 * x0 * x0;
      hy += 0.5 * y0 * y0;
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const Cplx ha = pt.h.diag[i] / pt.h.diag[j];
        const Cplx hma = pt.h.diag[j] / pt.h.diag[i];
        const Cplx den = (ha - Cplx(1)) * (hma - Cplx(1));
        hx += (mu(i, j) * ha + mup(i, j)) * (mu(j, i) * hma + mup(j, i)) / den;
        hy += (mu(i, j) + mup(i, j)) * (mu(j, i) + mup(j, i)) / den;
      }
    return {hx, hy};
  }
  auto [x, y] = reconstruct_xy(pt);
  return {matrix_power(x, k).trace() / double(k),
          matrix_power(y, k).trace() / double(k)};
}

std::pair<Cplx, Cplx> displayed_rank_one_hamiltonians(const DoublePoint& pt) {
  if (!pt.rank_one) throw Error("displayed_rank_one_hamiltonians: rank-one mode only");
  const int n = pt.n();
  require_regular_double(pt.h);
  const ReducedSpinPoint& s = pt.spin;
  auto [nv, npv] = resolve_spin_occupations(s.H, s.N, s.Np);
  Cplx hx(0), hy(0);
  for (int i = 0; i < n; ++i) {
    const Cplx kx = pt.p[i] + 0.25 * s.H[i];
    const Cplx ky = pt.p[i] - 0.25 * s.H[i];
    hx += 0.5 * kx * kx;
    hy += 0.5 * ky * ky;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Cplx hi = pt.h.diag[i], hj = pt.h.diag[j];
      // (h_a - 1)(h_-a - 1) = -(h_i - h_j)^2 / (h_i h_j)
      const Cplx den = (hi / hj - Cplx(1)) * (hj / hi - Cplx(1));
      const Cplx common = nv[i] * nv[j] + npv[i] * npv[j];
      hx += (common + s.a[i] * s.b[j] * hi / hj + s.b[i] * s.a[j] * hj / hi) / den;
      hy += (common + s.a[i] * s.b[j] + s.b[i] * s.a[j]) / den;
    }
  return {hx, hy};
}

std::vector<Cplx> rank_one_casimir_targets(int n, Cplx N) {
  // eigenvalues of mu are N(n-1)/n and -N/n (multiplicity n-1)
  std::vector<Cplx> out;
  for (int k = 2; k <= n; ++k) {
    const Cplx big = N * double(n - 1) / double(n);
    const Cplx small = -N / double(n);
    out.push_back(std::pow(big, k) + double(n - 1) * std::pow(small, k));
  }
  return out;
}

LeafReport leaf_check(const DoublePoint& pt, const std::vector<Cplx>& c_targets,
                      const std::vector<Cplx>& cp_targets) {
  const int n = pt.n();
  LeafReport rep;
  MatC mu, mup;
  if (pt.rank_one) {
    auto m = rank_one_matrices(pt.spin);
    mu = m.first;
    mup = m.second;
  } else {
    mu = pt.mu;
    mup = pt.mup;
  }
  for (int k = 2; k <= n; ++k) {
    const Cplx ck = matrix_power(mu, k).trace();
    const Cplx cpk = matrix_power(-mup, k).trace();
    const std::size_t idx = static_cast<std::size_t>(k - 2);
    if (idx < c_targets.size())
      rep.residuals.push_back({"tr(mu^" + std::to_string(k) + ")-c",
                               std::abs(ck - c_targets[idx])});
    if (idx < cp_targets.size())
      rep.residuals.push_back({"tr((-mu')^" + std::to_string(k) + ")-c'",
                               std::abs(cpk - cp_targets[idx])});
  }
  double diag_res = 0.0;
  for (int i = 0; i < n; ++i)
    diag_res = std::max(diag_res, std::abs(mu(i, i) + mup(i, i)));
  rep.residuals.push_back({"|mu0 + mu0'|", diag_res});
  if (pt.rank_one) {
    rep.residuals.push_back({"rank-one (constr)", pt.spin.invariant_residual()});
  }
  for (const auto& r : rep.residuals) rep.max_residual = std::max(rep.max_residual, r.second);
  return rep;
}

// --- chart -------------------------------------------------------------------

DoubleRankOneChart make_double_rank_one_chart(int n, Cplx N, Cplx Np,
                                              double sign_spin) {
  if (n < 2) throw InvalidDimensionError("make_double_rank_one_chart: need n >= 2");
  DoubleRankOneChart dc;
  dc.n = n;
  dc.N = N;
  dc.Np = Np;
  dc.sign_spin = sign_spin;

  Chart& ch = dc.chart;
  ch.name = "double-rank-one(n=" + std::to_string(n) + ")";
  auto add = [&](const std::string& base, CoordKind kind) {
    for (int i = 0; i < n; ++i) {
      ch.coord_names.push_back(base + std::to_string(i + 1));
      ch.kinds.push_back(kind);
    }
  };
  add("pi", CoordKind::Additive);
  add("h", CoordKind::Multiplicative);
  add("a", CoordKind::Additive);
  add("b", CoordKind::Additive);
  add("H", CoordKind::Additive);

  const Cplx S = dc.level_sum();
  const Cplx target = S * S / 4.0;
  const Cplx hsum_target = N - Np;
  {
    ScalarFunction c;
    c.name = "sum_pi+(N-N')/4";
    c.eval = [n, hsum_target](const VecC& z) {
      Cplx s(0);
      for (int i = 0; i < n; ++i) s += z[i];
      return s + hsum_target / 4.0;
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
  for (int i = 0; i < n; ++i) {
    ScalarFunction c;
    c.name = "a_ib_i+H_i^2/4-(N+N')^2/(4n^2) [i=" + std::to_string(i + 1) + "]";
    c.eval = [n, i, target](const VecC& z) {
      return z[2 * n + i] * z[3 * n + i] + z[4 * n + i] * z[4 * n + i] / 4.0 - target;
    };
    c.grad = [n, i](const VecC& z) {
      VecC g = VecC::Zero(z.size());
      g[2 * n + i] = z[3 * n + i];
      g[3 * n + i] = z[2 * n + i];
      g[4 * n + i] = z[4 * n + i] / 2.0;
      return g;
    };
    ch.constraints.push_back(c);
  }
  {
    ScalarFunction c;
    c.name = "sum_H-(N-N')";
    c.eval = [n, hsum_target](const VecC& z) {
      Cplx s(0);
      for (int i = 0; i < n; ++i) s += z[4 * n + i];
      return s - hsum_target;
    };
    c.grad = [n](const VecC& z) {
      VecC g = VecC::Zero(z.size());
      for (int i = 0; i < n; ++i) g[4 * n + i] = Cplx(1);
      return g;
    };
    ch.constraints.push_back(c);
  }
  ch.validate();

  std::vector<int> pic(n), hc(n), ac(n), bc(n), Hc(n);
  std::iota(pic.begin(), pic.end(), 0);
  std::iota(hc.begin(), hc.end(), n);
  std::iota(ac.begin(), ac.end(), 2 * n);
  std::iota(bc.begin(), bc.end(), 3 * n);
  std::iota(Hc.begin(), Hc.end(), 4 * n);
  dc.table.dimension = 5 * n;
  dc.table.blocks.push_back(canonical_block(pic, hc));
  dc.table.blocks.push_back(reduced_spin_block(n, ac, bc, Hc, sign_spin));
  dc.table.validate();
  return dc;
}

VecC pack_double(const DoubleRankOneChart& dc, const DoublePoint& pt) {
  if (!pt.rank_one) throw Error("pack_double: rank-one mode only");
  const int n = dc.n;
  VecC z(5 * n);
  for (int i = 0; i < n; ++i) {
    z[i] = pt.p[i] - 0.25 * pt.spin.H[i];
    z[n + i] = pt.h.diag[i];
    z[2 * n + i] = pt.spin.a[i];
    z[3 * n + i] = pt.spin.b[i];
    z[4 * n + i] = pt.spin.H[i];
  }
  return z;
}

DoublePoint unpack_double(const DoubleRankOneChart& dc, const VecC& z) {
  const int n = dc.n;
  DoublePoint pt;
  pt.rank_one = true;
  pt.p.resize(n);
  pt.spin.a.resize(n);
  pt.spin.b.resize(n);
  pt.spin.H.resize(n);
  pt.spin.N = dc.N;
  pt.spin.Np = dc.Np;
  VecC hd(n);
  for (int i = 0; i < n; ++i) {
    pt.spin.a[i] = z[2 * n + i];
    pt.spin.b[i] = z[3 * n + i];
    pt.spin.H[i] = z[4 * n + i];
    pt.p[i] = z[i] + 0.25 * pt.spin.H[i];
    hd[i] = z[n + i];
  }
  pt.h = cartan_from_complex(hd);
  return pt;
}

namespace {
struct PairTermDeriv {
  Cplx value;
  Cplx d_hi, d_hj, d_ai, d_aj, d_bi, d_bj, d_Hi, d_Hj;
};

// potential summand for H^(x):  -(h_i h_j (n_i n_j + n'_i n'_j)
//   + a_i b_j h_i^2 + b_i a_j h_j^2) / (h_i - h_j)^2
PairTermDeriv hx_pair(const Cplx hi, const Cplx hj, const Cplx ai, const Cplx aj,
                      const Cplx bi, const Cplx bj, const Cplx ni, const Cplx nj,
                      const Cplx npi, const Cplx npj) {
  PairTermDeriv t{};
  const Cplx D = (hi - hj) * (hi - hj);
  const Cplx common = ni * nj + npi * npj;
  const Cplx P = hi * hj * common + ai * bj * hi * hi + bi * aj * hj * hj;
  t.value = -P / D;
  const Cplx dD_hi = 2.0 * (hi - hj), dD_hj = -2.0 * (hi - hj);
  auto emit = [&](Cplx dP, Cplx dD) { return -(dP * D - P * dD) / (D * D); };
  t.d_hi = emit(hj * common + 2.0 * ai * bj * hi, dD_hi);
  t.d_hj = emit(hi * common + 2.0 * bi * aj * hj, dD_hj);
  t.d_ai = emit(bj * hi * hi, Cplx(0));
  t.d_aj = emit(bi * hj * hj, Cplx(0));
  t.d_bi = emit(aj * hj * hj, Cplx(0));
  t.d_bj = emit(ai * hi * hi, Cplx(0));
  // n_i = (H_i + S)/2, n'_i = (S - H_i)/2: d(common)/dH_i = (n_j - n'_j)/2
  t.d_Hi = emit(hi * hj * 0.5 * (nj - npj), Cplx(0));
  t.d_Hj = emit(hi * hj * 0.5 * (ni - npi), Cplx(0));
  return t;
}

// potential summand for H^(y): -h_i h_j (n_i n_j + n'_i n'_j + a_i b_j + b_i a_j)
//   / (h_i - h_j)^2
PairTermDeriv hy_pair(const Cplx hi, const Cplx hj, const Cplx ai, const Cplx aj,
                      const Cplx bi, const Cplx bj, const Cplx ni, const Cplx nj,
                      const Cplx npi, const Cplx npj) {
  PairTermDeriv t{};
  const Cplx D = (hi - hj) * (hi - hj);
  const Cplx Q = ni * nj + npi * npj + ai * bj + bi * aj;
  const Cplx P = hi * hj * Q;
  t.value = -P / D;
  const Cplx dD_hi = 2.0 * (hi - hj), dD_hj = -2.0 * (hi - hj);
  auto emit = [&](Cplx dP, Cplx dD) { return -(dP * D - P * dD) / (D * D); };
  t.d_hi = emit(hj * Q, dD_hi);
  t.d_hj = emit(hi * Q, dD_hj);
  t.d_ai = emit(hi * hj * bj, Cplx(0));
  t.d_aj = emit(hi * hj * bi, Cplx(0));
  t.d_bi = emit(hi * hj * aj, Cplx(0));
  t.d_bj = emit(hi * hj * ai, Cplx(0));
  t.d_Hi = emit(hi * hj * 0.5 * (nj - npj), Cplx(0));
  t.d_Hj = emit(hi * hj * 0.5 * (ni - npi), Cplx(0));
  return t;
}
}  // namespace

ScalarFunction double_hx_fn(const DoubleRankOneChart& dc, int k) {
  const int n = dc.n;
  const Cplx S = dc.level_sum();
  const Cplx c0 = (dc.Np - dc.N) / double(4 * n);
  ScalarFunction f;
  f.name = "H^(x)_" + std::to_string(k);
  if (k != 2) {
    f.eval = [dc, k](const VecC& z) {
      DoublePoint pt = unpack_double(dc, z);
      return double_hamiltonians(pt, k).first;
    };
    return f;
  }
  f.eval = [dc, n, S, c0](const VecC& z) {
    Cplx tot(0);
    for (int i = 0; i < n; ++i) {
      const Cplx x0 = z[i] + 0.5 * z[4 * n + i] + c0;
      tot += 0.5 * x0 * x0;
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const Cplx ni = 0.5 * (z[4 * n + i] + S), nj = 0.5 * (z[4 * n + j] + S);
        const Cplx npi = 0.5 * (S - z[4 * n + i]), npj = 0.5 * (S - z[4 * n + j]);
        tot += hx_pair(z[n + i], z[n + j], z[2 * n + i], z[2 * n + j],
                       z[3 * n + i], z[3 * n + j], ni, nj, npi, npj).value;
      }
    return tot;
  };
  f.grad = [dc, n, S, c0](const VecC& z) {
    VecC g = VecC::Zero(z.size());
    for (int i = 0; i < n; ++i) {
      const Cplx x0 = z[i] + 0.5 * z[4 * n + i] + c0;
      g[i] += x0;
      g[4 * n + i] += 0.5 * x0;
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const Cplx ni = 0.5 * (z[4 * n + i] + S), nj = 0.5 * (z[4 * n + j] + S);
        const Cplx npi = 0.5 * (S - z[4 * n + i]), npj = 0.5 * (S - z[4 * n + j]);
        const PairTermDeriv t =
            hx_pair(z[n + i], z[n + j], z[2 * n + i], z[2 * n + j], z[3 * n + i],
                    z[3 * n + j], ni, nj, npi, npj);
        g[n + i] += t.d_hi;
        g[n + j] += t.d_hj;
        g[2 * n + i] += t.d_ai;
        g[2 * n + j] += t.d_aj;
        g[3 * n + i] += t.d_bi;
        g[3 * n + j] += t.d_bj;
        g[4 * n + i] += t.d_Hi;
        g[4 * n + j] += t.d_Hj;
      }
    return g;
  };
  return f;
}

ScalarFunction double_hy_fn(const DoubleRankOneChart& dc, int k) {
  const int n = dc.n;
  const Cplx S = dc.level_sum();
  const Cplx c0 = (dc.Np - dc.N) / double(4 * n);
  ScalarFunction f;
  f.name = "H^(y)_" + std::to_string(k);
  if (k != 2) {
    f.eval = [dc, k](const VecC& z) {
      DoublePoint pt = unpack_double(dc, z);
      return double_hamiltonians(pt, k).second;
    };
    return f;
  }
  f.eval = [dc, n, S, c0](const VecC& z) {
    Cplx tot(0);
    for (int i = 0; i < n; ++i) {
      const Cplx y0 = c0 - z[i];
      tot += 0.5 * y0 * y0;
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const Cplx ni = 0.5 * (z[4 * n + i] + S), nj = 0.5 * (z[4 * n + j] + S);
        const Cplx npi = 0.5 * (S - z[4 * n + i]), npj = 0.5 * (S - z[4 * n + j]);
        tot += hy_pair(z[n + i], z[n + j], z[2 * n + i], z[2 * n + j],
                       z[3 * n + i], z[3 * n + j], ni, nj, npi, npj).value;
      }
    return tot;
  };
  f.grad = [dc, n, S, c0](const VecC& z) {
    VecC g = VecC::Zero(z.size());
    for (int i = 0; i < n; ++i) {
      const Cplx y0 = c0 - z[i];
      g[i] += -y0;
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const Cplx ni = 0.5 * (z[4 * n + i] + S), nj = 0.5 * (z[4 * n + j] + S);
        const Cplx npi = 0.5 * (S - z[4 * n + i]), npj = 0.5 * (S - z[4 * n + j]);
        const PairTermDeriv t =
            hy_pair(z[n + i], z[n + j], z[2 * n + i], z[2 * n + j], z[3 * n + i],
                    z[3 * n + j], ni, nj, npi, npj);
        g[n + i] += t.d_hi;
        g[n + j] += t.d_hj;
        g[2 * n + i] += t.d_ai;
        g[2 * n + j] += t.d_aj;
        g[3 * n + i] += t.d_bi;
        g[3 * n + j] += t.d_bj;
        g[4 * n + i] += t.d_Hi;
        g[4 * n + j] += t.d_Hj;
      }
    return g;
  };
  return f;
}

std::vector<ScalarFunction> double_conserved_family(const DoubleRankOneChart& dc) {
  std::vector<ScalarFunction> out;
  out.push_back(double_hx_fn(dc, 2));
  out.push_back(double_hy_fn(dc, 2));
  auto word = [dc](const std::string& name, bool twisted) {
    ScalarFunction f;
    f.name = name;
    f.eval = [dc, twisted](const VecC& z) {
      DoublePoint pt = unpack_double(dc, z);
      auto [x, y] = reconstruct_xy(pt);
      if (!twisted) return (x * y).trace();
      const int n = dc.n;
      MatC xt(n, n), yt(n, n);  // h^-1 (.) h conjugates
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const Cplx w = z[n + j] / z[n + i];
          xt(i, j) = x(i, j) * w;
          yt(i, j) = y(i, j) * w;
        }
      return (xt * yt).trace();
    };
    return f;
  };
  out.push_back(word("tr(xy)", false));
  out.push_back(word("tr(x~y~)", true));
  return out;
}

VecC double_normal_form(const DoubleRankOneChart& dc, const VecC& z) {
  const int n = dc.n;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    const Cplx hi = z[n + i], hj = z[n + j];
    if (hi.real() != hj.real()) return hi.real() > hj.real();
    return hi.imag() > hj.imag();
  });
  VecC w(z.size());
  for (int i = 0; i < n; ++i) {
    w[i] = z[order[i]];
    w[n + i] = z[n + order[i]];
    w[2 * n + i] = z[2 * n + order[i]];
    w[3 * n + i] = z[3 * n + order[i]];
    w[4 * n + i] = z[4 * n + order[i]];
  }
  // C* gauge: products A_ij = a_i b_j are invariant; re-split from the
  // reference index with the largest |a_r b_r|.
  VecC a(n), b(n);
  for (int i = 0; i < n; ++i) {
    a[i] = w[2 * n + i];
    b[i] = w[3 * n + i];
  }
  int r = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(a[i] * b[i]) > std::abs(a[r] * b[r])) r = i;
  const Cplx arr = a[r] * b[r];
  Cplx ar = std::sqrt(arr);
  if (ar.real() < 0 || (ar.real() == 0 && ar.imag() < 0)) ar = -ar;
  if (std::abs(ar) > 0) {
    const Cplx lam = ar / a[r];  // a -> lam a, b -> b / lam
    for (int i = 0; i < n; ++i) {
      w[2 * n + i] = a[i] * lam;
      w[3 * n + i] = b[i] / lam;
    }
  }
  return w;
}

}  // namespace scm
