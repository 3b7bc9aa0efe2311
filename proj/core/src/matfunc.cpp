#include "dynkit/matfunc.hpp"

#include <cmath>

namespace dynkit {

double norm1(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

bool is_hermitian(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

HermitianEigen hermitian_eigen(const CMatrix& a) {
  require(a.rows() == a.cols(), "hermitian_eigen: matrix must be square");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
  if (es.info() != Eigen::Success) throw NumericalError("hermitian_eigen: eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

CMatrix func_of_hermitian(const CMatrix& a, const std::function<cplx(double)>& f) {
  HermitianEigen e = hermitian_eigen(a);
  CVector fl(e.values.size());
  for (Eigen::Index i = 0; i < fl.size(); ++i) fl[i] = f(e.values[i]);
  return e.vectors * fl.asDiagonal() * e.vectors.adjoint();
}

ExpmReport expm_taylor(const CMatrix& a, double tol) {
  require(tol > 0.0, "expm_taylor: tol must be positive");
  require(a.rows() == a.cols(), "expm_taylor: matrix must be square");
  const Eigen::Index d = a.rows();
  const double na = norm1(a);
  const int cap = static_cast<int>(10.0 * na) + 100;

  ExpmReport rep;
  CMatrix term = CMatrix::Identity(d, d);
  rep.result = term;
  rep.terms = 1;
  double term_norm = 1.0;
  for (int k = 1;; ++k) {
    // ||term A / k|| <= ||term|| ||A|| / k: skip the product once it cannot matter.
    if (term_norm * na / k <= tol) break;
    if (rep.terms >= cap) throw NumericalError("expm_taylor: series did not converge within the term cap");
    term = term * a / static_cast<double>(k);
    ++rep.matrix_multiplications;
    rep.result += term;
    ++rep.terms;
    term_norm = norm1(term);
    if (term_norm <= tol) break;
  }
  return rep;
}

int pade_squarings(double norm, double norm_max) {
  if (!(norm > norm_max)) return 0;
  int k = static_cast<int>(std::ceil(std::log2(norm / norm_max)));
  while (std::ldexp(norm, -k) > norm_max) ++k;
  while (k > 0 && std::ldexp(norm, -(k - 1)) <= norm_max) --k;
  return k;
}

ExpmReport expm_pade(const CMatrix& a, double norm_max) {
  require(a.rows() == a.cols(), "expm_pade: matrix must be square");
  require(norm_max > 0.0, "expm_pade: norm_max must be positive");
  const Eigen::Index d = a.rows();
  ExpmReport rep;
  const double na = norm1(a);
  if (!std::isfinite(na)) throw NumericalError("expm_pade: non-finite input");
  rep.squarings = pade_squarings(na, norm_max);
  CMatrix b = a * std::ldexp(1.0, -rep.squarings);

  // c_k = (2m-k)! m! / ((2m)! k! (m-k)!), m = 6
  double c[kPadeOrder + 1];
  c[0] = 1.0;
  for (int k = 1; k <= kPadeOrder; ++k)
    c[k] = c[k - 1] * (kPadeOrder - k + 1) / (static_cast<double>(k) * (2 * kPadeOrder - k + 1));

  const CMatrix id = CMatrix::Identity(d, d);
  CMatrix b2 = b * b;
  CMatrix b4 = b2 * b2;
  CMatrix b6 = b4 * b2;
  CMatrix odd = b * (c[1] * id + c[3] * b2 + c[5] * b4);
  CMatrix even = c[0] * id + c[2] * b2 + c[4] * b4 + c[6] * b6;
  rep.matrix_multiplications = 4;

  // e^B ~ (even - odd)^{-1} (even + odd)
  Eigen::PartialPivLU<CMatrix> lu(even - odd);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-12)) throw NumericalError("expm_pade: denominator polynomial is singular");
  CMatrix r = lu.solve(even + odd);
  for (int s = 0; s < rep.squarings; ++s) {
    r = r * r;
    ++rep.matrix_multiplications;
  }
  rep.result = std::move(r);
  return rep;
}

}  // namespace dynkit
