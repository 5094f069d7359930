#include "oblab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include <complex>
#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#define lapack_complex_float_real(z) ((z).real())
#define lapack_complex_float_imag(z) ((z).imag())
#define lapack_complex_double_real(z) ((z).real())
#define lapack_complex_double_imag(z) ((z).imag())
#include <lapacke.h>

namespace oblab {

RVector singular_values(const CMatrix& a) {
  if (a.size() == 0) return RVector(0);
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  CMatrix work = a;  // overwritten
  RVector sv(std::min(m, n));
  lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m,
                                   sv.data(), nullptr, 1, nullptr, 1);
  if (info != 0)
    throw Error("singular_values: zgesdd failed, info=" + std::to_string(info));
  return sv;  // descending
}

double schatten_norm(const CMatrix& a, double p) {
  require_finite(a, "schatten_norm");
  if (!(p >= 1.0))
    throw std::domain_error("schatten_norm: p must be >= 1 (or infinity)");
  RVector sv = singular_values(a);
  if (sv.size() == 0) return 0.0;
  if (std::isinf(p)) return sv.maxCoeff();
  if (p == 1.0) return sv.sum();
  if (p == 2.0) return sv.norm();
  // scale out the largest singular value to dodge overflow for large p
  double top = sv.maxCoeff();
  if (top == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::pow(sv[i] / top, p);
  return top * std::pow(acc, 1.0 / p);
}

EigenSystem hermitian_eig(const CMatrix& a, double herm_tol) {
  require_finite(a, "hermitian_eig");
  require_square(a, "hermitian_eig");
  double scale = max_abs(a);
  if (max_abs(a - a.adjoint()) > rel_tol(herm_tol, scale))
    throw ContractViolation("hermitian_eig: input is not Hermitian within tolerance");
  CMatrix h = 0.5 * (a + a.adjoint());
  const lapack_int n = static_cast<lapack_int>(h.rows());
  EigenSystem sys;
  sys.eigenvalues.resize(n);
  if (n == 0) {
    sys.eigenvectors.resize(0, 0);
    return sys;
  }
  // h is column-major, overwritten with eigenvectors; ascending eigenvalues
  lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, h.data(), n,
                                   sys.eigenvalues.data());
  if (info != 0) throw Error("hermitian_eig: zheevd failed, info=" + std::to_string(info));
  sys.eigenvectors = std::move(h);
  return sys;
}

CMatrix spectral_projector(const CMatrix& a, double threshold, double gap_tol) {
  EigenSystem sys = hermitian_eig(a);
  const auto& ev = sys.eigenvalues;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev[i] - threshold) < gap_tol)
      throw SpectralGapError("spectral_projector: eigenvalue " + std::to_string(ev[i]) +
                                 " within gap_tol of threshold",
                             ev[i]);
  Eigen::Index lo = 0;
  while (lo < ev.size() && ev[lo] < threshold) ++lo;
  const auto& v = sys.eigenvectors;
  CMatrix top = v.rightCols(v.cols() - lo);
  return top * top.adjoint();
}

CMatrix normal_funcalc(const CMatrix& a, const std::function<cplx(cplx)>& f) {
  require_finite(a, "normal_funcalc");
  require_square(a, "normal_funcalc");
  double scale = max_abs(a);
  if (max_abs(a * a.adjoint() - a.adjoint() * a) > rel_tol(1e-9, scale * scale))
    throw ContractViolation("normal_funcalc: input is not normal within tolerance");
  // Schur of a normal matrix is diagonal up to rounding; keep only the diagonal
  Eigen::ComplexSchur<CMatrix> schur(a);
  const CMatrix& u = schur.matrixU();
  CVector d = schur.matrixT().diagonal();
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = f(d[i]);
  return u * d.asDiagonal() * u.adjoint();
}

namespace {
void require_unitary(const CMatrix& u, const char* who, double tol) {
  require_finite(u, who);
  require_square(u, who);
  CMatrix g = u.adjoint() * u;
  g.diagonal().array() -= 1.0;
  if (max_abs(g) > tol)
    throw ContractViolation(std::string(who) + ": input is not unitary within tolerance");
}
}  // namespace

CMatrix sign_unitarize(const CMatrix& u, double gap_tol) {
  require_unitary(u, "sign_unitarize", 1e-8);
  Eigen::ComplexSchur<CMatrix> schur(u);
  CVector d = schur.matrixT().diagonal();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (std::abs(d[i].real()) < gap_tol)
      throw SpectralGapError("sign_unitarize: eigenvalue near the imaginary axis",
                             d[i].real());
    d[i] = d[i].real() > 0 ? cplx(1, 0) : cplx(-1, 0);
  }
  const CMatrix& q = schur.matrixU();
  return q * d.asDiagonal() * q.adjoint();
}

cplx unitary_log_trace(const CMatrix& u, double gap_tol) {
  require_unitary(u, "unitary_log_trace", 1e-8);
  Eigen::ComplexSchur<CMatrix> schur(u);
  CVector d = schur.matrixT().diagonal();
  cplx acc(0, 0);
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (std::abs(d[i] + cplx(1, 0)) < gap_tol)
      throw BranchCutError("unitary_log_trace: eigenvalue within gap_tol of -1");
    acc += std::log(d[i]);  // principal branch
  }
  return acc;
}

}  // namespace oblab
