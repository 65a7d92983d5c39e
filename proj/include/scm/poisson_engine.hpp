#ifndef SCM_POISSON_ENGINE_HPP
#define SCM_POISSON_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "scm/lie_core.hpp"

namespace scm {

// Numerical Poisson geometry on block-assembled coordinate charts. Chart
// coordinates are complex throughout; real charts simply carry zero imaginary
// parts, which keeps one code path for both models. All structure functions
// are polynomial, so real-step central differences give holomorphic
// derivatives where analytic gradients are not supplied.

struct ScalarFunction {
  std::string name;
  std::function<Cplx(const VecC&)> eval;
  std::function<VecC(const VecC&)> grad;  // optional analytic gradient

  Cplx operator()(const VecC& z) const { return eval(z); }
  VecC gradient(const VecC& z) const;
};

/// Central finite differences with step 1e-6 (1 + |z_a|) per coordinate.
VecC fd_gradient(const std::function<Cplx(const VecC&)>& f, const VecC& z,
                 double step = 1e-6);

ScalarFunction coordinate_function(int index, const std::string& name);
ScalarFunction constant_function(Cplx value, const std::string& name = "const");

enum class CoordKind { Additive, Multiplicative };

struct Chart {
  std::string name;
  std::vector<std::string> coord_names;
  std::vector<CoordKind> kinds;
  std::vector<ScalarFunction> constraints;
  double constraint_tol = 1e-8;

  int dim() const { return static_cast<int>(coord_names.size()); }
  double constraint_residual(const VecC& z) const;
  void require_on_chart(const VecC& z) const;  // throws OffChartError
  void validate() const;
};

enum class BlockKind { CanonicalCotangent, LiePoissonSO, ReducedSpin, Zero };

/// One block of a bracket table. Coordinate subsets of the blocks partition
/// the chart. Conventions:
///   CanonicalCotangent: coords = [p_1..p_n, h_1..h_n], {p_i,h_j} = d_ij h_j.
///   LiePoissonSO:  coords = m_alpha over positive roots (lex order);
///                  {m_(ij),m_(kl)} = sign * (d_jk m_il - d_ik m_jl
///                                            - d_jl m_ik + d_il m_jk).
///   ReducedSpin:   coords = [a_1..a_n, b_1..b_n, H_1..H_n];
///                  {a_i,b_i} = sign*H_i, {H_i,a_i} = sign*2a_i,
///                  {H_i,b_i} = -sign*2b_i.
struct BracketBlock {
  BlockKind kind = BlockKind::Zero;
  std::vector<int> coords;
  double sign = 1.0;
  int n = 0;
};

struct BracketTable {
  int dimension = 0;
  std::vector<BracketBlock> blocks;

  MatC bivector(const VecC& z) const;  // Pi_ab = {z_a, z_b}
  void validate() const;               // blocks partition [0, dimension)
};

BracketBlock canonical_block(const std::vector<int>& p_coords,
                             const std::vector<int>& h_coords);
BracketBlock lie_poisson_so_block(int n, const std::vector<int>& m_coords,
                                  double sign);
BracketBlock reduced_spin_block(int n, const std::vector<int>& a_coords,
                                const std::vector<int>& b_coords,
                                const std::vector<int>& H_coords, double sign);
BracketBlock zero_block(const std::vector<int>& coords);

/// {f,g}(z) = sum_ab Pi^ab d_a f d_b g; gradients analytic when available.
Cplx bracket_eval(const ScalarFunction& f, const ScalarFunction& g, const VecC& z,
                  const BracketTable& table, const Chart& chart);

/// Component a is {H, z_a}; feeding this to the ODE oracle integrates
/// Hamilton's equations zdot = {H, z}.
VecC hamiltonian_flow_field(const ScalarFunction& H, const VecC& z,
                            const BracketTable& table, const Chart& chart);

/// |{f1,{f2,f3}} + {f2,{f3,f1}} + {f3,{f1,f2}}| at z.
double jacobi_residual(const ScalarFunction& f1, const ScalarFunction& f2,
                       const ScalarFunction& f3, const VecC& z,
                       const BracketTable& table, const Chart& chart);

/// Numerical rank of the bivector restricted to the constraint tangent space.
int bivector_rank(const VecC& z, const BracketTable& table, const Chart& chart,
                  double threshold = 1e-8);

/// Rank with the spectral gap around the cut, for ill-conditioning detection.
struct RankEstimate {
  int rank = 0;
  double gap = 0.0;  // sv[rank-1] / sv[rank]; +inf when the tail vanishes
};
RankEstimate numerical_rank(const MatC& m, double threshold = 1e-8);

/// Orthonormal basis of the joint kernel of the constraint differentials.
MatC constraint_tangent_basis(const Chart& chart, const VecC& z);

// --- cotangent-bundle brackets on (x, g) matrix-element functions ----------

/// Function of (x, g) with matrix gradients in the convention
/// df = tr(dx_grad * dx) + tr(dg_grad * dg); finite differences when absent.
struct MatrixFunctionXG {
  std::string name;
  std::function<Cplx(const MatC&, const MatC&)> eval;
  std::function<MatC(const MatC&, const MatC&)> grad_x;  // optional
  std::function<MatC(const MatC&, const MatC&)> grad_g;  // optional

  MatC gradient_x(const MatC& x, const MatC& g) const;
  MatC gradient_g(const MatC& x, const MatC& g) const;
};

/// Three-term cotangent bracket
///   tr(d1f1 [x, d1f2]) + tr(d1f1 g d2f2) - tr(d1f2 g d2f1).
Cplx cotangent_bracket(const MatrixFunctionXG& f1, const MatrixFunctionXG& f2,
                       const MatC& x, const MatC& g);

// --- P12 matrix-element brackets on the (x, y, a) chart ---------------------

/// Entry-level structure functions of the (x,y,a) chart:
///   {x_ij,x_kl} = d_jk x_il - d_il x_kj   (same for y),
///   {x_ij,a_kl} = d_jk a_il,  {y_ij,a_kl} = -d_il a_kj,  {x,y}={a,a}=0.
struct AppendixCBrackets {
  int n = 0;
  MatC bivector(const MatC& x, const MatC& y, const MatC& a) const;
  static VecC pack(const MatC& x, const MatC& y, const MatC& a);
  static void unpack(const VecC& z, int n, MatC& x, MatC& y, MatC& a);
};

/// Max |{tr((x+y)^k), F}| and |{tr((x+aya^-1)^k), F}| over sampled points and
/// a fixed family of invariant trace words F.
double casimir_centrality_check(int n, int k, int sample_count, std::uint64_t seed,
                                bool parallel = true);

/// The trace-word test family used by the centrality check (for reporting).
std::vector<std::string> casimir_test_family_names();

// --- batch kernels (OpenMP with serial reference) ---------------------------

/// Max Jacobi residual over random coordinate triples at the given points.
double max_jacobi_residual_batch(const BracketTable& table, const Chart& chart,
                                 const std::vector<VecC>& points,
                                 const std::vector<ScalarFunction>& fns,
                                 std::uint64_t seed, int triples_per_point,
                                 bool parallel = true);

}  // namespace scm

#endif
