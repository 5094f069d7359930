#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace oblab {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

inline constexpr double kAbsTolFloor = 1e-12;

// base for everything we throw on purpose
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ContractViolation : Error {
  using Error::Error;
};

// an eigenvalue landed inside a forbidden window around a spectral cut
struct SpectralGapError : Error {
  double eigenvalue;
  SpectralGapError(const std::string& what, double ev)
      : Error(what), eigenvalue(ev) {}
};

// spectrum too close to the principal-branch cut at -1
struct BranchCutError : Error {
  using Error::Error;
};

inline double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

// relative tolerance with an absolute floor, used by every contract check
inline double rel_tol(double tol, double scale) {
  double t = tol * scale;
  return t < kAbsTolFloor ? kAbsTolFloor : t;
}

inline void require_finite(const CMatrix& a, const char* who) {
  if (!a.allFinite()) throw ContractViolation(std::string(who) + ": non-finite entries");
}

inline void require_square(const CMatrix& a, const char* who) {
  if (a.rows() != a.cols())
    throw ContractViolation(std::string(who) + ": square matrix required");
}

}  // namespace oblab
