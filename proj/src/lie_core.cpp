#include "scm/lie_core.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace scm {

std::vector<Root> positive_roots(int n) {
  if (n < 2) throw InvalidDimensionError("positive_roots: need n >= 2");
  std::vector<Root> out;
  out.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) out.push_back(Root{i, j});
  return out;
}

MatR exponential(const MatR& x, double t) {
  require_finite(x, "exponential");
  return (t * x).exp();
}

MatC exponential(const MatC& x, double t) {
  require_finite(x, "exponential");
  return (Cplx(t) * x).exp();
}

namespace {
template <class Mat>
Mat adjoint_impl(const Mat& g, const Mat& x) {
  require_finite(g, "adjoint");
  require_finite(x, "adjoint");
  Eigen::FullPivLU<Mat> lu(g);
  if (!lu.isInvertible()) throw DecompositionError("adjoint: singular group element");
  return (g * x * lu.inverse()).eval();
}

template <class Mat>
Mat group_involution_impl(const Mat& g) {
  Eigen::FullPivLU<Mat> lu(g.transpose().eval());
  if (!lu.isInvertible())
    throw DecompositionError("chevalley_involution: singular group element");
  return lu.inverse();
}
}  // namespace

MatR adjoint(const MatR& g, const MatR& x) { return adjoint_impl(g, x); }
MatC adjoint(const MatC& g, const MatC& x) { return adjoint_impl(g, x); }

MatR chevalley_involution_group(const MatR& g) { return group_involution_impl(g); }
MatC chevalley_involution_group(const MatC& g) { return group_involution_impl(g); }

bool CartanElement::regular() const {
  const int m = n();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      if (std::abs(diag[i] / diag[j] - Cplx(1)) <= regularity_threshold) return false;
    }
  return true;
}

void CartanElement::validate(double det_tol) const {
  Cplx prod(1);
  for (int i = 0; i < n(); ++i) prod *= diag[i];
  if (std::abs(prod - Cplx(1)) > det_tol)
    throw NumericInputError("CartanElement: product of diagonal deviates from 1");
  if (real_positive) {
    for (int i = 0; i < n(); ++i)
      if (std::abs(diag[i].imag()) > 1e-14 || diag[i].real() <= 0.0)
        throw NumericInputError("CartanElement: split model requires real positive entries");
  }
}

MatC CartanElement::matrix() const {
  MatC m = MatC::Zero(n(), n());
  for (int i = 0; i < n(); ++i) m(i, i) = diag[i];
  return m;
}

MatR CartanElement::real_matrix() const {
  MatR m = MatR::Zero(n(), n());
  for (int i = 0; i < n(); ++i) m(i, i) = diag[i].real();
  return m;
}

CartanElement cartan_from_real(const VecR& d) {
  CartanElement h;
  h.diag = d.cast<Cplx>();
  h.real_positive = true;
  return h;
}

CartanElement cartan_from_complex(const VecC& d) {
  CartanElement h;
  h.diag = d;
  return h;
}

}  // namespace scm
