#include "scm/poisson_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "scm/parallel.hpp"
#include "scm/rng.hpp"

namespace scm {

VecC fd_gradient(const std::function<Cplx(const VecC&)>& f, const VecC& z,
                 double step) {
  const int d = static_cast<int>(z.size());
  VecC g(d);
  VecC zp = z, zm = z;
  for (int a = 0; a < d; ++a) {
    const double h = step * (1.0 + std::abs(z[a]));
    zp[a] = z[a] + h;
    zm[a] = z[a] - h;
    g[a] = (f(zp) - f(zm)) / (2.0 * h);
    zp[a] = z[a];
    zm[a] = z[a];
  }
  return g;
}

VecC ScalarFunction::gradient(const VecC& z) const {
  if (grad) return grad(z);
  return fd_gradient(eval, z);
}

ScalarFunction coordinate_function(int index, const std::string& name) {
  ScalarFunction f;
  f.name = name;
  f.eval = [index](const VecC& z) { return z[index]; };
  f.grad = [index](const VecC& z) {
    VecC g = VecC::Zero(z.size());
    g[index] = Cplx(1);
    return g;
  };
  return f;
}

ScalarFunction constant_function(Cplx value, const std::string& name) {
  ScalarFunction f;
  f.name = name;
  f.eval = [value](const VecC&) { return value; };
  f.grad = [](const VecC& z) { return VecC::Zero(z.size()).eval(); };
  return f;
}

double Chart::constraint_residual(const VecC& z) const {
  double r = 0.0;
  for (const auto& c : constraints) r = std::max(r, std::abs(c(z)));
  return r;
}

void Chart::require_on_chart(const VecC& z) const {
  if (static_cast<int>(z.size()) != dim())
    throw OffChartError(name + ": state dimension mismatch");
  const double r = constraint_residual(z);
  if (r > constraint_tol) {
    std::ostringstream os;
    os << name << ": constraint residual " << r << " exceeds " << constraint_tol;
    throw OffChartError(os.str());
  }
}

void Chart::validate() const {
  if (coord_names.size() != kinds.size())
    throw Error(name + ": coordinate kind list mismatch");
  for (std::size_t i = 0; i < coord_names.size(); ++i)
    for (std::size_t j = i + 1; j < coord_names.size(); ++j)
      if (coord_names[i] == coord_names[j])
        throw Error(name + ": duplicate coordinate label " + coord_names[i]);
  if (static_cast<int>(constraints.size()) >= dim())
    throw Error(name + ": constraint count must be below dimension");
}

namespace {
// m(u,v) lookup inside a LiePoissonSO block: coordinate for the pair u<v,
// antisymmetric continuation otherwise.
struct SoIndex {
  int n;
  const std::vector<int>& coords;
  int pos(int u, int v) const {  // u < v, 0-based
    // lexicographic position of (u,v) among pairs
    return u * n - u * (u + 1) / 2 + (v - u - 1);
  }
  Cplx value(const VecC& z, int u, int v) const {
    if (u == v) return Cplx(0);
    if (u < v) return z[coords[pos(u, v)]];
    return -z[coords[pos(v, u)]];
  }
};
}  // namespace

MatC BracketTable::bivector(const VecC& z) const {
  MatC Pi = MatC::Zero(dimension, dimension);
  for (const auto& b : blocks) {
    switch (b.kind) {
      case BlockKind::Zero:
        break;
      case BlockKind::CanonicalCotangent: {
        const int n = b.n;
        for (int i = 0; i < n; ++i) {
          const int p = b.coords[i], h = b.coords[n + i];
          Pi(p, h) += z[h];
          Pi(h, p) -= z[h];
        }
        break;
      }
      case BlockKind::LiePoissonSO: {
        const int n = b.n;
        SoIndex idx{n, b.coords};
        int a = 0;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j, ++a) {
            int c = 0;
            for (int k = 0; k < n; ++k)
              for (int l = k + 1; l < n; ++l, ++c) {
                if (c <= a) continue;  // fill upper, mirror below
                Cplx v = Cplx(0);
                if (j == k) v += idx.value(z, i, l);
                if (i == k) v -= idx.value(z, j, l);
                if (j == l) v -= idx.value(z, i, k);
                if (i == l) v += idx.value(z, j, k);
                v *= b.sign;
                Pi(b.coords[a], b.coords[c]) += v;
                Pi(b.coords[c], b.coords[a]) -= v;
              }
          }
        break;
      }
      case BlockKind::ReducedSpin: {
        const int n = b.n;
        for (int i = 0; i < n; ++i) {
          const int ia = b.coords[i], ib = b.coords[n + i], ih = b.coords[2 * n + i];
          const Cplx ai = z[ia], bi = z[ib], Hi = z[ih];
          Pi(ia, ib) += b.sign * Hi;
          Pi(ib, ia) -= b.sign * Hi;
          Pi(ih, ia) += b.sign * 2.0 * ai;
          Pi(ia, ih) -= b.sign * 2.0 * ai;
          Pi(ih, ib) -= b.sign * 2.0 * bi;
          Pi(ib, ih) += b.sign * 2.0 * bi;
        }
        break;
      }
    }
  }
  return Pi;
}

void BracketTable::validate() const {
  std::vector<int> seen(dimension, 0);
  for (const auto& b : blocks) {
    std::size_t expected = 0;
    switch (b.kind) {
      case BlockKind::CanonicalCotangent: expected = 2u * b.n; break;
      case BlockKind::LiePoissonSO: expected = static_cast<std::size_t>(b.n) * (b.n - 1) / 2; break;
      case BlockKind::ReducedSpin: expected = 3u * b.n; break;
      case BlockKind::Zero: expected = b.coords.size(); break;
    }
    if (b.coords.size() != expected)
      throw Error("BracketTable: block coordinate count mismatch");
    for (int c : b.coords) {
      if (c < 0 || c >= dimension) throw Error("BracketTable: coordinate out of range");
      if (seen[c]++) throw Error("BracketTable: blocks must partition the chart");
    }
  }
  for (int c = 0; c < dimension; ++c)
    if (!seen[c]) throw Error("BracketTable: uncovered coordinate");
}

BracketBlock canonical_block(const std::vector<int>& p_coords,
                             const std::vector<int>& h_coords) {
  if (p_coords.size() != h_coords.size())
    throw Error("canonical_block: p/h size mismatch");
  BracketBlock b;
  b.kind = BlockKind::CanonicalCotangent;
  b.n = static_cast<int>(p_coords.size());
  b.coords = p_coords;
  b.coords.insert(b.coords.end(), h_coords.begin(), h_coords.end());
  return b;
}

BracketBlock lie_poisson_so_block(int n, const std::vector<int>& m_coords,
                                  double sign) {
  BracketBlock b;
  b.kind = BlockKind::LiePoissonSO;
  b.n = n;
  b.coords = m_coords;
  b.sign = sign;
  return b;
}

BracketBlock reduced_spin_block(int n, const std::vector<int>& a_coords,
                                const std::vector<int>& b_coords,
                                const std::vector<int>& H_coords, double sign) {
  BracketBlock b;
  b.kind = BlockKind::ReducedSpin;
  b.n = n;
  b.coords = a_coords;
  b.coords.insert(b.coords.end(), b_coords.begin(), b_coords.end());
  b.coords.insert(b.coords.end(), H_coords.begin(), H_coords.end());
  b.sign = sign;
  return b;
}

BracketBlock zero_block(const std::vector<int>& coords) {
  BracketBlock b;
  b.kind = BlockKind::Zero;
  b.coords = coords;
  return b;
}

Cplx bracket_eval(const ScalarFunction& f, const ScalarFunction& g, const VecC& z,
                  const BracketTable& table, const Chart& chart) {
  chart.require_on_chart(z);
  const VecC gf = f.gradient(z);
  const VecC gg = g.gradient(z);
  const VecC w = table.bivector(z) * gg;
  return gf.cwiseProduct(w).sum();
}

VecC hamiltonian_flow_field(const ScalarFunction& H, const VecC& z,
                            const BracketTable& table, const Chart& chart) {
  chart.require_on_chart(z);
  const VecC gH = H.gradient(z);
  // {H, z_a} = sum_b dH_b {z_b, z_a} = (Pi^T gH)_a
  return table.bivector(z).transpose() * gH;
}

double jacobi_residual(const ScalarFunction& f1, const ScalarFunction& f2,
                       const ScalarFunction& f3, const VecC& z,
                       const BracketTable& table, const Chart& chart) {
  chart.require_on_chart(z);
  auto inner = [&](const ScalarFunction& a, const ScalarFunction& b) {
    ScalarFunction r;
    r.name = "{" + a.name + "," + b.name + "}";
    r.eval = [&a, &b, &table](const VecC& w) -> Cplx {
      const VecC ga = a.gradient(w);
      const VecC gb = b.gradient(w);
      const VecC t = table.bivector(w) * gb;
      return ga.cwiseProduct(t).sum();
    };
    return r;
  };
  auto outer = [&](const ScalarFunction& a, const ScalarFunction& bc) -> Cplx {
    const VecC ga = a.gradient(z);
    const VecC gbc = fd_gradient(bc.eval, z);
    const VecC t = table.bivector(z) * gbc;
    return ga.cwiseProduct(t).sum();
  };
  const Cplx s = outer(f1, inner(f2, f3)) + outer(f2, inner(f3, f1)) +
                 outer(f3, inner(f1, f2));
  return std::abs(s);
}

RankEstimate numerical_rank(const MatC& m, double threshold) {
  Eigen::JacobiSVD<MatC> svd(m);
  const auto& sv = svd.singularValues();
  RankEstimate est;
  if (sv.size() == 0) return est;
  const double cut = threshold * sv[0];
  int r = 0;
  while (r < sv.size() && sv[r] > cut) ++r;
  est.rank = r;
  if (r == 0)
    est.gap = 0.0;
  else if (r == sv.size() || sv[r] <= 0.0)
    est.gap = std::numeric_limits<double>::infinity();
  else
    est.gap = sv[r - 1] / sv[r];
  return est;
}

MatC constraint_tangent_basis(const Chart& chart, const VecC& z) {
  const int d = chart.dim();
  const int k = static_cast<int>(chart.constraints.size());
  if (k == 0) return MatC::Identity(d, d);
  MatC J(k, d);
  for (int c = 0; c < k; ++c) J.row(c) = chart.constraints[c].gradient(z).transpose();
  Eigen::JacobiSVD<MatC> svd(J, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int r = 0;
  while (r < sv.size() && sv[r] > 1e-10 * sv[0]) ++r;
  return svd.matrixV().rightCols(d - r);
}

int bivector_rank(const VecC& z, const BracketTable& table, const Chart& chart,
                  double threshold) {
  chart.require_on_chart(z);
  const MatC T = constraint_tangent_basis(chart, z);
  const MatC B = T.transpose() * table.bivector(z) * T;
  return numerical_rank(B, threshold).rank;
}

// --- cotangent brackets -----------------------------------------------------

namespace {
MatC fd_matrix_gradient(const std::function<Cplx(const MatC&, const MatC&)>& f,
                        const MatC& x, const MatC& g, bool wrt_x,
                        double step = 1e-6) {
  const int n = static_cast<int>(x.rows());
  MatC grad(n, n);
  MatC xp = x, gp = g, xm = x, gm = g;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MatC& tp = wrt_x ? xp : gp;
      MatC& tm = wrt_x ? xm : gm;
      const Cplx base = wrt_x ? x(i, j) : g(i, j);
      const double h = step * (1.0 + std::abs(base));
      tp(i, j) = base + h;
      tm(i, j) = base - h;
      // df = tr(G dm) => G_ji = df/dm_ij
      grad(j, i) = (f(xp, gp) - f(xm, gm)) / (2.0 * h);
      tp(i, j) = base;
      tm(i, j) = base;
    }
  return grad;
}
}  // namespace

MatC MatrixFunctionXG::gradient_x(const MatC& x, const MatC& g) const {
  if (grad_x) return grad_x(x, g);
  return fd_matrix_gradient(eval, x, g, true);
}

MatC MatrixFunctionXG::gradient_g(const MatC& x, const MatC& g) const {
  if (grad_g) return grad_g(x, g);
  return fd_matrix_gradient(eval, x, g, false);
}

Cplx cotangent_bracket(const MatrixFunctionXG& f1, const MatrixFunctionXG& f2,
                       const MatC& x, const MatC& g) {
  require_finite(x, "cotangent_bracket");
  require_finite(g, "cotangent_bracket");
  const MatC d1f1 = f1.gradient_x(x, g);
  const MatC d1f2 = f2.gradient_x(x, g);
  const MatC d2f1 = f1.gradient_g(x, g);
  const MatC d2f2 = f2.gradient_g(x, g);
  if (!d1f1.allFinite() || !d1f2.allFinite() || !d2f1.allFinite() || !d2f2.allFinite())
    throw NumericInputError("cotangent_bracket: non-finite gradient");
  const MatC comm = x * d1f2 - d1f2 * x;
  return (d1f1 * comm).trace() + (d1f1 * g * d2f2).trace() -
         (d1f2 * g * d2f1).trace();
}

// --- Appendix C (x,y,a) chart ------------------------------------------------

VecC AppendixCBrackets::pack(const MatC& x, const MatC& y, const MatC& a) {
  const int n = static_cast<int>(x.rows());
  VecC z(3 * n * n);
  int q = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z[q++] = x(i, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z[q++] = y(i, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z[q++] = a(i, j);
  return z;
}

void AppendixCBrackets::unpack(const VecC& z, int n, MatC& x, MatC& y, MatC& a) {
  x.resize(n, n);
  y.resize(n, n);
  a.resize(n, n);
  int q = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = z[q++];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) y(i, j) = z[q++];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = z[q++];
}

MatC AppendixCBrackets::bivector(const MatC& x, const MatC& y, const MatC& a) const {
  const int N = n * n;
  MatC Pi = MatC::Zero(3 * N, 3 * N);
  auto X = [&](int i, int j) { return i * n + j; };
  auto Y = [&](int i, int j) { return N + i * n + j; };
  auto A = [&](int i, int j) { return 2 * N + i * n + j; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Cplx vx = Cplx(0), vy = Cplx(0);
          if (j == k) vx += x(i, l);
          if (i == l) vx -= x(k, j);
          if (j == k) vy += y(i, l);
          if (i == l) vy -= y(k, j);
          Pi(X(i, j), X(k, l)) = vx;
          Pi(Y(i, j), Y(k, l)) = vy;
          const Cplx wx = (j == k) ? a(i, l) : Cplx(0);
          Pi(X(i, j), A(k, l)) = wx;
          Pi(A(k, l), X(i, j)) = -wx;
          const Cplx wy = (i == l) ? -a(k, j) : Cplx(0);
          Pi(Y(i, j), A(k, l)) = wy;
          Pi(A(k, l), Y(i, j)) = -wy;
        }
  return Pi;
}

namespace {
struct Word {
  std::string name;
  // sequence over {x, y, t (= a y a^-1), a}; evaluated as tr(product)
  std::string letters;
};

std::vector<Word> centrality_words() {
  return {{"tr(x^2)", "xx"},      {"tr(y^2)", "yy"},     {"tr(xy)", "xy"},
          {"tr(xa)", "xa"},       {"tr(ya)", "ya"},      {"tr(x a y a^-1)", "xt"},
          {"tr(x^2 a y a^-1)", "xxt"}, {"tr(xya)", "xya"}, {"tr(x a^2)", "xaa"},
          {"tr((x+y)^2)", "ss"}};
}

Cplx eval_word(const std::string& letters, const MatC& x, const MatC& y,
               const MatC& a) {
  const int n = static_cast<int>(x.rows());
  const MatC t = a * y * a.inverse();
  const MatC s = x + y;
  MatC prod = MatC::Identity(n, n);
  for (char c : letters) {
    switch (c) {
      case 'x': prod *= x; break;
      case 'y': prod *= y; break;
      case 'a': prod *= a; break;
      case 't': prod *= t; break;
      case 's': prod *= s; break;
      default: throw Error("eval_word: unknown letter");
    }
  }
  return prod.trace();
}
}  // namespace

std::vector<std::string> casimir_test_family_names() {
  std::vector<std::string> out;
  for (const auto& w : centrality_words()) out.push_back(w.name);
  return out;
}

double casimir_centrality_check(int n, int k, int sample_count, std::uint64_t seed,
                                bool parallel) {
  if (k < 2 || k > 4) throw Error("casimir_centrality_check: k must be in {2,3,4}");
  const auto words = centrality_words();
  const AppendixCBrackets ab{n};

  auto sample_residual = [&](int s) -> double {
    Rng rng = make_rng(seed, 0xCA51u + static_cast<std::uint64_t>(s));
    MatC x(n, n), y(n, n), a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        x(i, j) = Cplx(rng.normal(), rng.normal()) * 0.5;
        y(i, j) = Cplx(rng.normal(), rng.normal()) * 0.5;
        a(i, j) = Cplx(rng.normal(), rng.normal()) * 0.3;
      }
    x -= (x.trace() / double(n)) * MatC::Identity(n, n);
    y -= (y.trace() / double(n)) * MatC::Identity(n, n);
    a += MatC::Identity(n, n);  // keep a safely invertible
    const Cplx det = a.determinant();
    a /= std::pow(det, 1.0 / n);

    const VecC z = AppendixCBrackets::pack(x, y, a);
    const MatC Pi = ab.bivector(x, y, a);
    auto fgrad = [&](const std::function<Cplx(const MatC&, const MatC&, const MatC&)>& f) {
      return fd_gradient(
          [&](const VecC& w) {
            MatC xx, yy, aa;
            AppendixCBrackets::unpack(w, n, xx, yy, aa);
            return f(xx, yy, aa);
          },
          z);
    };
    const VecC gsum = fgrad([&](const MatC& xx, const MatC& yy, const MatC& aa) {
      const MatC s = xx + yy;
      MatC p = MatC::Identity(n, n);
      for (int q = 0; q < k; ++q) p *= s;
      return p.trace();
    });
    const VecC gtw = fgrad([&](const MatC& xx, const MatC& yy, const MatC& aa) {
      const MatC s = xx + aa * yy * aa.inverse();
      MatC p = MatC::Identity(n, n);
      for (int q = 0; q < k; ++q) p *= s;
      return p.trace();
    });
    double worst = 0.0;
    for (const auto& w : words) {
      const VecC gw = fgrad([&](const MatC& xx, const MatC& yy, const MatC& aa) {
        return eval_word(w.letters, xx, yy, aa);
      });
      const VecC t = Pi * gw;
      worst = std::max(worst, std::abs(gsum.cwiseProduct(t).sum()));
      worst = std::max(worst, std::abs(gtw.cwiseProduct(t).sum()));
    }
    return worst;
  };

  return batch_max(sample_count, sample_residual, parallel);
}

double max_jacobi_residual_batch(const BracketTable& table, const Chart& chart,
                                 const std::vector<VecC>& points,
                                 const std::vector<ScalarFunction>& fns,
                                 std::uint64_t seed, int triples_per_point,
                                 bool parallel) {
  const int P = static_cast<int>(points.size());
  auto point_residual = [&](int p) -> double {
    Rng rng = make_rng(seed, 0x1acob1u + static_cast<std::uint64_t>(p));
    double worst = 0.0;
    for (int t = 0; t < triples_per_point; ++t) {
      const std::size_t i = rng.raw() % fns.size();
      const std::size_t j = rng.raw() % fns.size();
      const std::size_t k = rng.raw() % fns.size();
      worst = std::max(worst, jacobi_residual(fns[i], fns[j], fns[k], points[p],
                                              table, chart));
    }
    return worst;
  };
  return batch_max(P, point_residual, parallel);
}

}  // namespace scm
