#ifndef SCM_LIE_CORE_HPP
#define SCM_LIE_CORE_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "scm/errors.hpp"

namespace scm {

using Cplx = std::complex<double>;
using MatR = Eigen::MatrixXd;
using MatC = Eigen::MatrixXcd;
using VecR = Eigen::VectorXd;
using VecC = Eigen::VectorXcd;

// Type-A substrate. Algebra/group elements are plain Eigen matrices; the
// validators below enforce the sl_n / SL_n membership tolerances.

/// Positive root (i,j), i<j, of sl_n in 1-based labels. e_alpha = E_ij.
struct Root {
  int i = 0, j = 0;
  bool positive() const { return i < j; }
  Root negated() const { return Root{j, i}; }
  bool operator==(const Root& o) const { return i == o.i && j == o.j; }
};

/// All positive roots of sl_n in lexicographic order; n(n-1)/2 of them.
std::vector<Root> positive_roots(int n);

template <class Mat>
void require_finite(const Mat& m, const char* what) {
  if (!m.allFinite()) throw NumericInputError(std::string(what) + ": non-finite entries");
}

inline void validate_algebra_element(const MatR& x, double tol = 1e-12) {
  require_finite(x, "algebra element");
  const double scale = std::max(1.0, x.norm());
  if (std::abs(x.trace()) > tol * scale)
    throw NumericInputError("algebra element: trace exceeds tolerance");
}

inline void validate_algebra_element(const MatC& x, double tol = 1e-12) {
  require_finite(x, "algebra element");
  const double scale = std::max(1.0, x.norm());
  if (std::abs(x.trace()) > tol * scale)
    throw NumericInputError("algebra element: trace exceeds tolerance");
}

template <class Mat>
void validate_group_element(const Mat& g, double tol = 1e-10) {
  require_finite(g, "group element");
  if (std::abs(g.determinant() - typename Mat::Scalar(1)) > tol)
    throw NumericInputError("group element: det deviates from 1");
}

/// exp(t x) by scaling-and-squaring (Eigen MatrixFunctions).
MatR exponential(const MatR& x, double t = 1.0);
MatC exponential(const MatC& x, double t = 1.0);

/// Ad_g x = g x g^-1 (trace-form realization of Ad*).
MatR adjoint(const MatR& g, const MatR& x);
MatC adjoint(const MatC& g, const MatC& x);

/// theta(x) = -x^T on the algebra.
template <class Mat>
Mat chevalley_involution(const Mat& x) {
  return (-x.transpose()).eval();
}

/// theta(g) = (g^T)^-1 on the group.
MatR chevalley_involution_group(const MatR& g);
MatC chevalley_involution_group(const MatC& g);

/// Projection to k = so(n): x - x^T (kills the Cartan component).
template <class Mat>
Mat project_to_k(const Mat& x) {
  return (x - x.transpose()).eval();
}

/// Cartan-torus element as its diagonal; scalar field is chart-level
/// (real positive for the split model, complex for the double model).
struct CartanElement {
  VecC diag;
  double regularity_threshold = 1e-8;
  bool real_positive = false;  // split-model variant

  int n() const { return static_cast<int>(diag.size()); }
  Cplx alpha_ratio(const Root& r) const { return diag[r.i - 1] / diag[r.j - 1]; }

  /// q_i with h_i = exp(q_i / 2); split model only.
  double q(int i) const { return 2.0 * std::log(diag[i].real()); }

  bool regular() const;
  void validate(double det_tol = 1e-10) const;
  MatC matrix() const;
  MatR real_matrix() const;
};

CartanElement cartan_from_real(const VecR& d);
CartanElement cartan_from_complex(const VecC& d);

}  // namespace scm

#endif
