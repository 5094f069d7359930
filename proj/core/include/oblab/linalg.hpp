#pragma once

#include <functional>
#include <limits>

#include "oblab/types.hpp"

namespace oblab {

inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

struct EigenSystem {
  RVector eigenvalues;  // ascending
  CMatrix eigenvectors; // unitary, columns match eigenvalues
};

// unnormalized Schatten p-norm: (sum sigma_i^p)^{1/p}, operator norm at p = inf
double schatten_norm(const CMatrix& a, double p);

RVector singular_values(const CMatrix& a);

// symmetrizes to (a + a*)/2 first; throws ContractViolation beyond herm_tol
EigenSystem hermitian_eig(const CMatrix& a, double herm_tol = 1e-9);

// chi_[threshold,inf)(a) for Hermitian a; SpectralGapError if an eigenvalue
// falls within gap_tol of the threshold
CMatrix spectral_projector(const CMatrix& a, double threshold = 0.5,
                           double gap_tol = 1e-3);

// continuous functional calculus for (numerically) normal a, via Schur
CMatrix normal_funcalc(const CMatrix& a, const std::function<cplx(cplx)>& f);

// 2*chi_{Re>0}(u) - 1 for a unitary u: the nearest self-adjoint unitary.
// SpectralGapError if an eigenvalue is within gap_tol of the imaginary axis.
CMatrix sign_unitarize(const CMatrix& u, double gap_tol = 1e-3);

// Tr(Log u) with principal branch; BranchCutError near -1
cplx unitary_log_trace(const CMatrix& u, double gap_tol = 1e-3);

}  // namespace oblab
